#pragma once

#include "forcycle/diagram.hpp"
#include "forcycle/locking.hpp"
#include "forcycle/odesim.hpp"
#include "forcycle/stability.hpp"

#include <string>
#include <vector>

namespace forcycle::io {

/// Fixed deterministic float formatting: 17 significant digits, '.'
/// decimal separator, "inf"/"-inf" for infinities.
std::string format_g17(double v);

/// One cell of a (delta, gamma) region atlas at fixed k.
struct AtlasCell {
    double delta = 0.0;
    double gamma = 0.0;
    double k = 0.0;
    RegionTag tag = RegionTag::W;
};

// All writers emit a header row and a trailing newline, and throw
// IoError with the path on failure.

/// Columns: curve_id,tau,s,is_fold,criticality (criticality empty for
/// non-fold rows).
void write_diagram_csv(const Diagram& dia, const std::string& path);

/// Columns: tau,s,eps,criticality,level.
void write_folds_csv(const std::vector<FoldPoint>& folds, const std::string& path);

/// Columns: delta,k,gamma,tau,s,theta.
void write_hopf_csv(const HopfLocus& locus, const std::string& path);

/// Columns: tau,eps,reason.
void write_hopf_failures_csv(const HopfLocus& locus, const std::string& path);

/// Columns: delta,k,gamma,tau,s,residual.
void write_bt_csv(const std::vector<BTPoint>& pts, const std::string& path);

/// Columns: branch,index,y,s (one polyline per branch, in order).
void write_manifolds_csv(const std::vector<ManifoldTrace>& traces,
                         const std::string& path);

/// Columns: n,omega_lo,omega_hi,source,stability_note ("inf" for
/// unbounded windows).
void write_windows_csv(const std::vector<OmegaWindow>& windows,
                       const std::string& path);

/// Columns: t,x,y,z.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Columns: index,t,x,y,z,mult1_re,mult1_im,mult2_re,mult2_im,mult3_re,mult3_im
/// (the three stroboscopic multipliers, repeated on each sample row).
void write_strobo_csv(const StroboOrbit& orbit, const std::string& path);

/// Columns: delta,gamma,k,region.
void write_atlas_csv(const std::vector<AtlasCell>& cells, const std::string& path);

} // namespace forcycle::io
