#pragma once

#include "forcycle/diagram.hpp"
#include "forcycle/io/csv.hpp"
#include "forcycle/stability.hpp"

#include <string>
#include <vector>

namespace forcycle::io {

/// Render a diagram on the cylinder chart: s horizontal in [0, 2*pi),
/// tau vertical with 0 at the bottom. Curves are drawn as polylines
/// split at the phase wrap; folds are marked at their (s*, tau)
/// positions with the criticality encoded by the marker stroke style
/// (solid = supercritical, dashed = subcritical). An empty diagram
/// yields the bare frame with the region annotation.
void render_diagram_svg(const Diagram& dia, const std::string& path);

/// Render manifold traces on the same chart; unstable branches in red,
/// stable in blue, the saddle marked.
void render_manifolds_svg(const std::vector<ManifoldTrace>& traces,
                          const std::string& path);

/// Render a (delta, gamma) region atlas at fixed k: one filled cell per
/// sample, the gamma_plus / gamma_minus threshold curves and the
/// golden-ratio wall overlaid.
void render_atlas_svg(const std::vector<AtlasCell>& cells, double k,
                      const std::string& path);

} // namespace forcycle::io
