#include "forcycle/io/csv.hpp"

#include "forcycle/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace forcycle::io {

std::string format_g17(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: no newline translation
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out)
        throw IoError("write failed for '" + path + "'");
}

} // namespace

void write_diagram_csv(const Diagram& dia, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "curve_id,tau,s,is_fold,criticality\n";
    for (std::size_t c = 0; c < dia.curves.size(); ++c) {
        const DiagramCurve& curve = dia.curves[c];
        std::vector<std::string> crit(curve.points.size());
        std::vector<char> is_fold(curve.points.size(), 0);
        for (const CurveFoldRef& fr : curve.folds) {
            is_fold[fr.point_index] = 1;
            crit[fr.point_index] = to_string(dia.folds[fr.fold_index].criticality);
        }
        for (std::size_t i = 0; i < curve.points.size(); ++i)
            out << c << ',' << format_g17(curve.points[i].tau) << ','
                << format_g17(curve.points[i].s) << ',' << int(is_fold[i]) << ','
                << crit[i] << '\n';
    }
    finish(out, path);
}

void write_folds_csv(const std::vector<FoldPoint>& folds, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "tau,s,eps,criticality,level\n";
    for (const FoldPoint& f : folds)
        out << format_g17(f.tau) << ',' << format_g17(f.s_star) << ',' << f.eps << ','
            << to_string(f.criticality) << ',' << format_g17(f.level) << '\n';
    finish(out, path);
}

void write_hopf_csv(const HopfLocus& locus, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "delta,k,gamma,tau,s,theta\n";
    for (const HopfPoint& h : locus.points)
        out << format_g17(h.delta) << ',' << format_g17(h.k) << ','
            << format_g17(h.gamma) << ',' << format_g17(h.tau) << ','
            << format_g17(h.s) << ',' << format_g17(h.theta) << '\n';
    finish(out, path);
}

void write_hopf_failures_csv(const HopfLocus& locus, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "tau,eps,reason\n";
    for (const HopfFailure& f : locus.failures)
        out << format_g17(f.tau) << ',' << f.eps << ',' << f.reason << '\n';
    finish(out, path);
}

void write_bt_csv(const std::vector<BTPoint>& pts, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "delta,k,gamma,tau,s,residual\n";
    for (const BTPoint& b : pts)
        out << format_g17(b.delta) << ',' << format_g17(b.k) << ','
            << format_g17(b.gamma) << ',' << format_g17(b.tau) << ','
            << format_g17(b.s_star) << ',' << format_g17(b.residual) << '\n';
    finish(out, path);
}

void write_manifolds_csv(const std::vector<ManifoldTrace>& traces,
                         const std::string& path) {
    std::ofstream out = open_out(path);
    out << "branch,index,y,s\n";
    for (const ManifoldTrace& tr : traces) {
        const std::string label = to_string(tr.branch);
        for (std::size_t i = 0; i < tr.points.size(); ++i)
            out << label << ',' << i << ',' << format_g17(tr.points[i].y) << ','
                << format_g17(tr.points[i].s) << '\n';
    }
    finish(out, path);
}

void write_windows_csv(const std::vector<OmegaWindow>& windows,
                       const std::string& path) {
    std::ofstream out = open_out(path);
    out << "n,omega_lo,omega_hi,source,stability_note\n";
    for (const OmegaWindow& w : windows)
        out << w.n << ',' << format_g17(w.omega_lo) << ',' << format_g17(w.omega_hi)
            << ',' << to_string(w.source) << ',' << to_string(w.stability_note)
            << '\n';
    finish(out, path);
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,x,y,z\n";
    for (const State3& st : traj.samples)
        out << format_g17(st.t) << ',' << format_g17(st.x) << ',' << format_g17(st.y)
            << ',' << format_g17(st.z) << '\n';
    finish(out, path);
}

void write_strobo_csv(const StroboOrbit& orbit, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "index,t,x,y,z,mult1_re,mult1_im,mult2_re,mult2_im,mult3_re,mult3_im\n";
    std::ostringstream mults;
    for (const auto& m : orbit.spectrum)
        mults << ',' << format_g17(m.real()) << ',' << format_g17(m.imag());
    for (std::size_t i = 0; i < orbit.samples.size(); ++i) {
        const State3& st = orbit.samples[i];
        out << i << ',' << format_g17(st.t) << ',' << format_g17(st.x) << ','
            << format_g17(st.y) << ',' << format_g17(st.z) << mults.str() << '\n';
    }
    finish(out, path);
}

void write_atlas_csv(const std::vector<AtlasCell>& cells, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "delta,gamma,k,region\n";
    for (const AtlasCell& c : cells)
        out << format_g17(c.delta) << ',' << format_g17(c.gamma) << ','
            << format_g17(c.k) << ',' << to_string(c.tag) << '\n';
    finish(out, path);
}

} // namespace forcycle::io
