#include "forcycle/cylinder_map.hpp"

#include "forcycle/errors.hpp"
#include "forcycle/scalar_family.hpp"

#include <cmath>
#include <string>

namespace forcycle {

// ---------------------------------------------------------------------------
// Cylinder geometry
// ---------------------------------------------------------------------------

double wrap_2pi(double s) {
    const double two_pi = 2.0 * M_PI;
    double r = std::fmod(s, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0; // fmod can round up to two_pi
    return r;
}

double circ_diff(double a, double b) {
    double d = wrap_2pi(a - b);
    if (d > M_PI) d -= 2.0 * M_PI;
    return d;
}

double circ_dist(double a, double b) { return std::abs(circ_diff(a, b)); }

CylinderPoint::CylinderPoint(double y_, double s_) : y(y_), s(wrap_2pi(s_)) {
    if (!(y > 0.0))
        throw DomainError("CylinderPoint: radial coordinate must be positive");
}

// ---------------------------------------------------------------------------
// 2x2 eigenvalues
// ---------------------------------------------------------------------------

Eig2 eigenvalues_2x2(const Mat2& m) {
    const double tr = m.trace();
    const double de = m.det();
    const double disc = 0.25 * tr * tr - de;
    Eig2 out;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        out.lambda1 = std::complex<double>(0.5 * tr - root, 0.0);
        out.lambda2 = std::complex<double>(0.5 * tr + root, 0.0);
        out.real = true;
    } else {
        const double im = std::sqrt(-disc);
        out.lambda1 = std::complex<double>(0.5 * tr, -im);
        out.lambda2 = std::complex<double>(0.5 * tr, im);
        out.real = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// g and its partials
// ---------------------------------------------------------------------------

namespace {

void require_tau(double tau, const char* fn) {
    if (!(tau > 0.0) || tau > 1.0)
        throw DomainError(std::string(fn) + ": tau " + std::to_string(tau) +
                          " outside (0, 1]");
}

} // namespace

Jet2 eval_g(const MapParams& mp, double tau, double s, const ToleranceConfig& tol) {
    require_tau(tau, "eval_g");
    const double d = mp.delta;
    const double d2 = d * d;
    const double floor = tol.tau_floor;
    const double t_d2 = pow_pos(tau, d2, floor);
    const double t_d2md = pow_pos(tau, d2 - d, floor);
    const double forcing = 1.0 + mp.k * std::sin(s);

    Jet2 jet;
    jet.value = t_d2 + mp.gamma * t_d2md * forcing - tau;
    jet.d_ds = mp.gamma * mp.k * t_d2md * std::cos(s);
    // d/dtau: delta^2 tau^{delta^2-1} + gamma (delta^2-delta) tau^{-p} (1+k sin s) - 1,
    // with -p(delta) = delta^2 - delta - 1.
    jet.d_dtau = d2 * pow_pos(tau, d2 - 1.0, floor) +
                 mp.gamma * (d2 - d) * pow_pos(tau, d2 - d - 1.0, floor) * forcing - 1.0;
    return jet;
}

// ---------------------------------------------------------------------------
// The cylinder maps
// ---------------------------------------------------------------------------

CylinderPoint eval_G(const MapParams& mp, const CylinderPoint& pt,
                     const ToleranceConfig& tol) {
    const double d = mp.delta;
    const double d2 = d * d;
    const double y_img = pow_pos(pt.y, d2, tol.tau_floor) +
                         mp.gamma * pow_pos(pt.y, d2 - d, tol.tau_floor) *
                             (1.0 + mp.k * std::sin(pt.s));
    if (!(y_img > 0.0))
        throw MapImageError("eval_G: nonpositive radial image at y = " +
                            std::to_string(pt.y) + ", s = " + std::to_string(pt.s));
    const double s_img = wrap_2pi(pt.s - std::log(pt.y) / mp.K);
    CylinderPoint out;
    out.y = y_img;
    out.s = s_img;
    return out;
}

CylinderPoint eval_G_tau(const MapParams& mp, double tau, const CylinderPoint& pt,
                         const ToleranceConfig& tol) {
    require_tau(tau, "eval_G_tau");
    CylinderPoint out = eval_G(mp, pt, tol);
    out.s = wrap_2pi(out.s + std::log(tau) / mp.K);
    return out;
}

Mat2 jacobian_G_tau(const MapParams& mp, const CylinderPoint& pt,
                    const ToleranceConfig& tol) {
    if (!(pt.y > 0.0))
        throw DomainError("jacobian_G_tau: y must be positive");
    const double d = mp.delta;
    const double d2 = d * d;
    const double p = p_delta(d);
    Mat2 J;
    J.a11 = d2 * pow_pos(pt.y, d2 - 1.0, tol.tau_floor) +
            mp.gamma * (d2 - d) * pow_pos(pt.y, -p, tol.tau_floor) *
                (1.0 + mp.k * std::sin(pt.s));
    J.a12 = mp.gamma * mp.k * pow_pos(pt.y, d2 - d, tol.tau_floor) * std::cos(pt.s);
    J.a21 = -1.0 / (mp.K * pt.y);
    J.a22 = 1.0;
    return J;
}

double lambda2_at_fold(const MapParams& mp, double y_star, int eps,
                       const ToleranceConfig& tol) {
    if (eps != 1 && eps != -1)
        throw DomainError("lambda2_at_fold: eps must be +1 or -1");
    if (!(y_star > 0.0) || y_star > 1.0)
        throw DomainError("lambda2_at_fold: y_star outside (0, 1]");
    const double d = mp.delta;
    const double d2 = d * d;
    const double p = p_delta(d);
    return d2 * pow_pos(y_star, d2 - 1.0, tol.tau_floor) +
           mp.gamma * (d2 - d) * pow_pos(y_star, -p, tol.tau_floor) *
               (1.0 + eps * mp.k);
}

double det_condition_f(const MapParams& mp, double tau, double s,
                       const ToleranceConfig& tol) {
    return det_condition_f_jet(mp, tau, s, tol).value;
}

FJet det_condition_f_jet(const MapParams& mp, double tau, double s,
                         const ToleranceConfig& tol) {
    require_tau(tau, "det_condition_f");
    const double d = mp.delta;
    const double d2 = d * d;
    const double p = p_delta(d);
    const double cs = std::cos(s);
    const double sn = std::sin(s);
    FJet jet;
    jet.value = mp.gamma * mp.k * (cs / mp.K + (d2 - d) * sn) -
                pow_pos(tau, p, tol.tau_floor) + d2 * pow_pos(tau, d, tol.tau_floor) +
                mp.gamma * (d2 - d);
    jet.d_ds = mp.gamma * mp.k * (-sn / mp.K + (d2 - d) * cs);
    jet.d_dgamma = mp.k * (cs / mp.K + (d2 - d) * sn) + (d2 - d);
    return jet;
}

} // namespace forcycle
