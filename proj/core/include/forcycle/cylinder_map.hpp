#pragma once

#include "forcycle/params.hpp"
#include "forcycle/tolerances.hpp"

#include <complex>

namespace forcycle {

// ---------------------------------------------------------------------------
// Geometry of the cylinder
// ---------------------------------------------------------------------------

/// Reduce an angle to [0, 2*pi).
double wrap_2pi(double s);

/// Signed circular difference a - b wrapped into (-pi, pi].
double circ_diff(double a, double b);

/// Circular distance |circ_diff(a, b)|.
double circ_dist(double a, double b);

/// A point of the cylinder (0, infinity) x [0, 2*pi). The phase is
/// reduced modulo 2*pi on construction; the radial coordinate must be
/// positive.
struct CylinderPoint {
    double y = 1.0;
    double s = 0.0;

    CylinderPoint() = default;
    CylinderPoint(double y_, double s_);
};

// ---------------------------------------------------------------------------
// Small dense linear algebra (2x2, closed form)
// ---------------------------------------------------------------------------

struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

/// Eigenvalues of a 2x2 real matrix from the trace/determinant
/// quadratic (closed form, no iteration). For real spectra lambda1 is
/// the smaller root; for complex spectra the pair is conjugate with
/// lambda1 = conj(lambda2), Im(lambda2) >= 0.
struct Eig2 {
    std::complex<double> lambda1;
    std::complex<double> lambda2;
    bool real = true;
};

Eig2 eigenvalues_2x2(const Mat2& m);

// ---------------------------------------------------------------------------
// The circle-map family g and the cylinder maps G, G_tau
// ---------------------------------------------------------------------------

/// Value and first partials of g at a point.
struct Jet2 {
    double value = 0.0;
    double d_ds = 0.0;
    double d_dtau = 0.0;
};

/// g(tau, s) = tau^{delta^2} + gamma tau^{delta^2-delta} (1 + k sin s) - tau.
/// Zeros of g are exactly the fixed points of the shifted map G_tau;
/// equivalently gamma (1 + k sin s) = F_delta(tau).
Jet2 eval_g(const MapParams& mp, double tau, double s,
            const ToleranceConfig& tol = default_tolerances());

/// One application of the reduced cylinder map
///   G(y, s) = (y^{delta^2} + gamma y^{delta^2-delta}(1 + k sin s),
///              s - ln y / K  mod 2*pi).
/// Throws MapImageError if the radial image is nonpositive (the orbit
/// left the validity region of the reduction).
CylinderPoint eval_G(const MapParams& mp, const CylinderPoint& pt,
                     const ToleranceConfig& tol = default_tolerances());

/// Shifted map G_tau = G + (0, ln tau / K): its fixed points with y = tau
/// are the zeros of g(tau, .).
CylinderPoint eval_G_tau(const MapParams& mp, double tau, const CylinderPoint& pt,
                         const ToleranceConfig& tol = default_tolerances());

/// Jacobian of G (and of G_tau; the shift is constant):
///   [ delta^2 y^{delta^2-1} + gamma (delta^2-delta) y^{-p}(1+k sin s) ,
///     gamma k y^{delta^2-delta} cos s ]
///   [ -1/(K y) , 1 ]
Mat2 jacobian_G_tau(const MapParams& mp, const CylinderPoint& pt,
                    const ToleranceConfig& tol = default_tolerances());

/// Nontrivial eigenvalue at a fold point (sin s* = eps, cos s* = 0):
///   lambda_2 = delta^2 y*^{delta^2-1}
///            + gamma (delta^2-delta) y*^{-p(delta)} (1 + eps k).
/// The other eigenvalue is exactly 1 there. The formula is evaluated
/// for the caller's gamma whether or not (y*, eps) satisfies the fold
/// constraint gamma (1 + eps k) = F_delta(y*).
double lambda2_at_fold(const MapParams& mp, double y_star, int eps,
                       const ToleranceConfig& tol = default_tolerances());

/// f(tau, s) = gamma k (cos s / K + (delta^2-delta) sin s)
///           - tau^{p(delta)} + delta^2 tau^{delta} + gamma (delta^2-delta).
/// On the zero set of g, f = 0 holds exactly when det DG_tau = 1, and
/// there the trace equals 2 - (gamma k / K) tau^{-p} cos s.
double det_condition_f(const MapParams& mp, double tau, double s,
                       const ToleranceConfig& tol = default_tolerances());

/// Value and first partials of f with respect to s and gamma. At fold
/// phases (cos s = 0) d_dgamma collapses to (1 + eps k)(delta^2 - delta).
struct FJet {
    double value = 0.0;
    double d_ds = 0.0;
    double d_dgamma = 0.0;
};

FJet det_condition_f_jet(const MapParams& mp, double tau, double s,
                         const ToleranceConfig& tol = default_tolerances());

} // namespace forcycle
