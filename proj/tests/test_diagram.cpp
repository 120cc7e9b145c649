#include <doctest.h>

#include "forcycle/diagram.hpp"
#include "forcycle/errors.hpp"
#include "forcycle/scalar_family.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

using namespace forcycle;

namespace {

struct Shape {
    std::size_t n_curves;
    std::size_t n_open;
    std::size_t n_closed;
    int winding_sum;
    std::size_t n_folds;
};

Shape shape_of(const Diagram& d) {
    Shape sh{d.curves.size(), 0, 0, 0, d.folds.size()};
    for (const auto& c : d.curves) {
        (c.closed ? sh.n_closed : sh.n_open) += 1;
        sh.winding_sum += c.winding;
    }
    return sh;
}

std::vector<double> sorted_fold_taus(const std::vector<FoldPoint>& folds) {
    std::vector<double> taus;
    for (const auto& f : folds)
        taus.push_back(f.tau);
    std::sort(taus.begin(), taus.end());
    return taus;
}

} // namespace

TEST_SUITE("diagram") {

TEST_CASE("region classification covers the parameter plane") {
    CHECK(classify_region(1.5, 0.6, 2.0).tag == RegionTag::A);
    CHECK(classify_region(1.5, 0.1, 2.0).tag == RegionTag::B);
    CHECK(classify_region(2.0, 0.1, 2.0).tag == RegionTag::C);
    CHECK(classify_region(2.0, 0.9, 2.0).tag == RegionTag::C); // no split above the wall
    CHECK(classify_region(1.5, 1.5, 0.5).tag == RegionTag::W);
    CHECK(classify_region(1.5, 0.6, 0.5).tag == RegionTag::X);
    CHECK(classify_region(1.5, 0.2, 0.5).tag == RegionTag::Y);
    CHECK(classify_region(2.0, 0.5, 0.5).tag == RegionTag::Z);
    CHECK(classify_region(2.0, 0.01, 0.5).tag == RegionTag::Z);

    CHECK(classify_region(1.5, 0.4, 1.0).tag == RegionTag::K1_a);
    CHECK(classify_region(1.5, 0.2, 1.0).tag == RegionTag::K1_b);
    CHECK(classify_region(2.0, 0.5, 1.0).tag == RegionTag::K1_c);

    CHECK(classify_region(1.5, 0.2, 0.0).tag == RegionTag::K0_TwoCircles);
    CHECK(classify_region(1.5, 0.9, 0.0).tag == RegionTag::K0_NoZeros);
    CHECK(classify_region(2.0, 0.9, 0.0).tag == RegionTag::K0_OneCircle);
    CHECK(classify_region(1.5, 0.0, 0.5).tag == RegionTag::Gamma0_Circle);

    CHECK_THROWS_AS(classify_region(1.0, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(classify_region(1.5, -0.1, 0.5), DomainError);
}

TEST_CASE("boundary tags fire exactly on the thresholds") {
    const double mf = M_F(1.5);
    const TransitionThresholds th = transition_thresholds(1.5, 0.5);
    CHECK(th.gamma_plus == doctest::Approx(mf / 1.5).epsilon(1e-15));
    REQUIRE(th.gamma_minus.has_value());
    CHECK(*th.gamma_minus == doctest::Approx(mf / 0.5).epsilon(1e-15));
    CHECK(th.delta_phi == golden_phi());

    CHECK(classify_region(1.5, th.gamma_plus, 0.5).tag == RegionTag::Boundary_XY);
    CHECK(classify_region(1.5, *th.gamma_minus, 0.5).tag == RegionTag::Boundary_WX);
    CHECK(classify_region(1.5, mf / 3.0, 2.0).tag == RegionTag::Boundary_AB);
    CHECK(classify_region(1.5, mf / 2.0, 1.0).tag == RegionTag::Boundary_ab);
    CHECK(classify_region(1.5, mf, 0.0).tag == RegionTag::Boundary_K0);
    CHECK(classify_region(golden_phi(), 0.5, 0.5).tag == RegionTag::Boundary_DeltaPhi);
    // the tag is shared by both aliases of the W|X threshold
    CHECK(RegionTag::Boundary_XW_point == RegionTag::Boundary_WX);

    // thresholds without gamma_minus for k >= 1, undefined above the wall
    CHECK_FALSE(transition_thresholds(1.5, 2.0).gamma_minus.has_value());
    CHECK_FALSE(transition_thresholds(1.5, 1.0).gamma_minus.has_value());
    CHECK_THROWS_AS(transition_thresholds(2.0, 0.5), DomainError);
}

TEST_CASE("fold finder solves the cubic instance exactly") {
    // delta = 2: F_2(tau) = 1/tau - tau^2, so F_2(tau) = c is the cubic
    // tau^3 + c tau - 1 = 0 with a unique root in (0, 1].
    const MapParams mp(2.0, 0.5, 0.5, 0.5625);
    const auto folds = find_folds(mp);
    REQUIRE(folds.size() == 2);

    const double t_plus = oracles::cubic_fold_root(0.75);
    const double t_minus = oracles::cubic_fold_root(0.25);
    for (const auto& f : folds) {
        if (f.eps == +1) {
            CHECK(std::abs(f.tau - t_plus) < 1e-9);
            CHECK(f.s_star == doctest::Approx(M_PI / 2.0));
            CHECK(f.level == doctest::Approx(0.75).epsilon(1e-15));
            // F decreasing at the root: the branch pair exists below the level
            CHECK(f.criticality == Criticality::supercritical);
        } else {
            CHECK(f.eps == -1);
            CHECK(std::abs(f.tau - t_minus) < 1e-9);
            CHECK(f.s_star == doctest::Approx(3.0 * M_PI / 2.0));
            CHECK(f.level == doctest::Approx(0.25).epsilon(1e-15));
            CHECK(f.criticality == Criticality::subcritical);
        }
        CHECK(std::abs(F_delta(mp.delta, f.tau) - f.level) < 1e-12);
    }
}

TEST_CASE("fold counts and criticalities by region") {
    CHECK(find_folds(MapParams(1.5, 0.6, 2.0, 1.0)).empty());  // A
    CHECK(find_folds(MapParams(1.5, 1.5, 0.5, 1.0)).empty());  // W

    // B: both folds on the upper level, rising flank subcritical
    const auto fb = find_folds(MapParams(1.5, 0.1, 2.0, 1.0));
    REQUIRE(fb.size() == 2);
    for (const auto& f : fb) {
        CHECK(f.eps == +1);
        CHECK(f.level == doctest::Approx(0.3).epsilon(1e-15));
        const bool rising = F_delta_prime(1.5, f.tau) > 0.0;
        CHECK(f.criticality ==
              (rising ? Criticality::subcritical : Criticality::supercritical));
    }

    const auto fc = find_folds(MapParams(2.0, 0.1, 2.0, 1.0)); // C
    REQUIRE(fc.size() == 1);
    CHECK(fc[0].eps == +1);
    CHECK(fc[0].criticality == Criticality::supercritical);

    // X: both folds on the lower level
    const auto fx = find_folds(MapParams(1.5, 0.6, 0.5, 1.0));
    REQUIRE(fx.size() == 2);
    for (const auto& f : fx) {
        CHECK(f.eps == -1);
        CHECK(f.level == doctest::Approx(0.3).epsilon(1e-15));
        const bool rising = F_delta_prime(1.5, f.tau) > 0.0;
        CHECK(f.criticality ==
              (rising ? Criticality::supercritical : Criticality::subcritical));
    }

    CHECK(find_folds(MapParams(1.5, 0.2, 0.5, 1.0)).size() == 4); // Y

    CHECK_THROWS_AS(find_folds(MapParams(1.5, 0.0, 0.5, 1.0)), DomainError);
    CHECK_THROWS_AS(find_folds(MapParams(1.5, 0.2, 0.0, 1.0)), DomainError);
}

TEST_CASE("k = 1 appends the analytic zero-level fold") {
    const auto fa = find_folds(MapParams(1.5, 0.4, 1.0, 1.0)); // a
    REQUIRE(fa.size() == 1);
    CHECK(fa[0].tau == 1.0);
    CHECK(fa[0].level == 0.0);
    CHECK(fa[0].eps == -1);
    CHECK(fa[0].s_star == doctest::Approx(3.0 * M_PI / 2.0));
    CHECK(fa[0].criticality == Criticality::subcritical);

    CHECK(find_folds(MapParams(1.5, 0.2, 1.0, 1.0)).size() == 3); // b
    CHECK(find_folds(MapParams(2.0, 0.5, 1.0, 1.0)).size() == 2); // c
}

TEST_CASE("component intervals by region") {
    // Z: one interval with both endpoints fold radii
    auto ci = component_intervals(MapParams(2.0, 0.5, 0.5, 0.5625));
    REQUIRE(ci.size() == 1);
    CHECK(ci[0].lo_fold.has_value());
    CHECK(ci[0].hi_fold.has_value());
    CHECK(ci[0].lo == doctest::Approx(oracles::cubic_fold_root(0.75)).epsilon(1e-9));
    CHECK(ci[0].hi == doctest::Approx(oracles::cubic_fold_root(0.25)).epsilon(1e-9));

    // A: the whole axis, no folds
    ci = component_intervals(MapParams(1.5, 0.6, 2.0, 1.0));
    REQUIRE(ci.size() == 1);
    CHECK(ci[0].lo == 0.0);
    CHECK(ci[0].hi == 1.0);
    CHECK_FALSE(ci[0].lo_fold.has_value());
    CHECK_FALSE(ci[0].hi_fold.has_value());

    // B: two intervals, outer ends free, inner ends folds
    ci = component_intervals(MapParams(1.5, 0.1, 2.0, 1.0));
    REQUIRE(ci.size() == 2);
    CHECK(ci[0].lo == 0.0);
    CHECK_FALSE(ci[0].lo_fold.has_value());
    CHECK(ci[0].hi_fold.has_value());
    CHECK(ci[1].lo_fold.has_value());
    CHECK(ci[1].hi == 1.0);
    CHECK_FALSE(ci[1].hi_fold.has_value());
    CHECK(ci[0].hi < ci[1].lo);

    // Y: two interior intervals, all four ends folds
    ci = component_intervals(MapParams(1.5, 0.2, 0.5, 1.0));
    REQUIRE(ci.size() == 2);
    for (const auto& c : ci) {
        CHECK(c.lo_fold.has_value());
        CHECK(c.hi_fold.has_value());
        CHECK(c.lo > 0.0);
        CHECK(c.hi < 1.0);
        CHECK(c.lo < c.hi);
    }

    // X: one interior interval bounded by the two lower-level folds
    ci = component_intervals(MapParams(1.5, 0.6, 0.5, 1.0));
    REQUIRE(ci.size() == 1);
    CHECK(ci[0].lo_fold.has_value());
    CHECK(ci[0].hi_fold.has_value());

    // W: empty
    CHECK(component_intervals(MapParams(1.5, 1.5, 0.5, 1.0)).empty());
}

TEST_CASE("traced diagrams match the taxonomy rows") {
    struct Row {
        MapParams mp;
        Shape expect;
        RegionTag tag;
    };
    const std::vector<Row> rows = {
        {MapParams(1.5, 0.6, 2.0, 1.0), {2, 2, 0, 0, 0}, RegionTag::A},
        {MapParams(1.5, 0.1, 2.0, 1.0), {2, 2, 0, 0, 2}, RegionTag::B},
        {MapParams(2.0, 0.1, 2.0, 1.0), {1, 1, 0, 0, 1}, RegionTag::C},
        {MapParams(1.5, 1.5, 0.5, 1.0), {0, 0, 0, 0, 0}, RegionTag::W},
        {MapParams(1.5, 0.6, 0.5, 1.0), {1, 0, 1, 0, 2}, RegionTag::X},
        {MapParams(1.5, 0.2, 0.5, 1.0), {2, 0, 2, 2, 4}, RegionTag::Y},
        {MapParams(2.0, 0.5, 0.5, 0.5625), {1, 0, 1, 1, 2}, RegionTag::Z},
        {MapParams(1.5, 0.4, 1.0, 1.0), {1, 1, 0, 0, 1}, RegionTag::K1_a},
        {MapParams(1.5, 0.2, 1.0, 1.0), {2, 1, 1, 1, 3}, RegionTag::K1_b},
        {MapParams(2.0, 0.5, 1.0, 1.0), {1, 0, 1, 1, 2}, RegionTag::K1_c},
        {MapParams(1.5, 0.2, 0.0, 1.0), {2, 0, 2, 2, 0}, RegionTag::K0_TwoCircles},
        {MapParams(1.5, 0.9, 0.0, 1.0), {0, 0, 0, 0, 0}, RegionTag::K0_NoZeros},
        {MapParams(2.0, 0.9, 0.0, 1.0), {1, 0, 1, 1, 0}, RegionTag::K0_OneCircle},
        {MapParams(1.5, 0.0, 0.5, 1.0), {1, 0, 1, 1, 0}, RegionTag::Gamma0_Circle},
    };
    for (const auto& row : rows) {
        CAPTURE(row.mp.delta);
        CAPTURE(row.mp.gamma);
        CAPTURE(row.mp.k);
        const Diagram d = trace_diagram(row.mp, 2048);
        CHECK(d.region.tag == row.tag);
        const Shape sh = shape_of(d);
        CHECK(sh.n_curves == row.expect.n_curves);
        CHECK(sh.n_open == row.expect.n_open);
        CHECK(sh.n_closed == row.expect.n_closed);
        CHECK(sh.winding_sum == row.expect.winding_sum);
        CHECK(sh.n_folds == row.expect.n_folds);
        // every point of every curve satisfies g = 0 to solver accuracy
        for (const auto& c : d.curves)
            for (std::size_t i = 0; i < c.points.size(); i += 7) {
                const auto& pt = c.points[i];
                const double scale =
                    std::max(1.0, std::abs(F_delta(row.mp.delta, pt.tau)));
                CHECK(std::abs(eval_g(row.mp, pt.tau, pt.s).value) <
                      1e-8 * scale);
            }
    }
}

TEST_CASE("boundary contact flags") {
    const Diagram da = trace_diagram(MapParams(1.5, 0.6, 2.0, 1.0), 2048); // A
    for (const auto& c : da.curves) {
        CHECK(c.touches_tau0);
        CHECK(c.touches_tau1);
    }
    const Diagram dz = trace_diagram(MapParams(2.0, 0.5, 0.5, 0.5625), 2048); // Z
    CHECK_FALSE(dz.curves[0].touches_tau0);
    CHECK_FALSE(dz.curves[0].touches_tau1);
    const Diagram dg = trace_diagram(MapParams(1.5, 0.0, 0.5, 1.0), 512); // gamma=0
    CHECK(dg.curves[0].touches_tau1);
    for (const auto& pt : dg.curves[0].points)
        CHECK(pt.tau == 1.0);
}

TEST_CASE("fold markers sit on their curves") {
    const Diagram d = trace_diagram(MapParams(2.0, 0.5, 0.5, 0.5625), 2048);
    REQUIRE(d.curves.size() == 1);
    const auto& c = d.curves[0];
    REQUIRE(c.folds.size() == 2);
    for (const auto& ref : c.folds) {
        REQUIRE(ref.point_index < c.points.size());
        REQUIRE(ref.fold_index < d.folds.size());
        const auto& pt = c.points[ref.point_index];
        const auto& f = d.folds[ref.fold_index];
        CHECK(pt.tau == doctest::Approx(f.tau).epsilon(1e-12));
        CHECK(circ_dist(pt.s, f.s_star) < 1e-12);
    }
}

TEST_CASE("fold radii agree with the brute-force grid oracle") {
    const struct {
        double delta, gamma, k;
    } inst[] = {
        {2.0, 0.5, 0.5},
        {1.5, 0.2, 0.5},
        {1.5, 0.1, 2.0},
    };
    for (const auto& in : inst) {
        CAPTURE(in.delta);
        const auto scan = oracles::grid_fold_scan(in.delta, in.gamma, in.k);
        const auto folds =
            find_folds(MapParams(in.delta, in.gamma, in.k, 1.0));
        const auto taus = sorted_fold_taus(folds);
        REQUIRE(scan.fold_taus.size() == taus.size());
        for (std::size_t i = 0; i < taus.size(); ++i)
            CHECK(std::abs(taus[i] - scan.fold_taus[i]) <
                  2.0 * scan.resolutions[i]);
    }
}

TEST_CASE("tracer guards") {
    CHECK_THROWS_AS(trace_diagram(MapParams(1.5, 0.6, 0.5, 1.0), 50), DomainError);
}

} // TEST_SUITE
