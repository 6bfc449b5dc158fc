#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "celldiv/grid.hpp"
#include "celldiv/metrics.hpp"

using namespace celldiv;

namespace {

const double kNan = std::numeric_limits<double>::quiet_NaN();

SweepRecord rec(double epsilon, double alpha, std::uint64_t seed, double delta,
                double rel = 0.0) {
    SweepRecord r;
    r.method = Method::filter;
    r.epsilon = epsilon;
    r.alpha = alpha;
    r.seed = seed;
    r.delta = delta;
    r.delta_rel_l2 = rel;
    return r;
}

}  // namespace

TEST_CASE("error metrics on a hand-computed example") {
    Grid g(1.0, 2);  // dx = 1
    GridFunction b(g, {1.0, 1.0});
    GridFunction n(g, {3.0, 4.0});   // data norm^2 = 25
    GridFunction h(g, {1.0, 4.0});   // mismatch (2, 0), norm^2 = 4

    CHECK(delta_metric(b, n, h) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(relative_l2(b, n, h) == doctest::Approx(0.4).epsilon(1e-15));

    // Doubling the mismatch quadruples the squared-numerator functional but
    // only doubles the plain relative error.
    GridFunction h2(g, {-1.0, 4.0});
    CHECK(delta_metric(b, n, h2) == doctest::Approx(3.2).epsilon(1e-15));
    CHECK(relative_l2(b, n, h2) == doctest::Approx(0.8).epsilon(1e-15));

    // Exact recovery scores zero in both.
    GridFunction exact(g, {3.0, 4.0});
    CHECK(delta_metric(b, n, exact) == 0.0);
    CHECK(relative_l2(b, n, exact) == 0.0);
}

TEST_CASE("the two error columns are linked through the data norm") {
    Grid g(2.0, 33);
    GridFunction b(g), n(g), h(g);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        b[i] = 1.0 + 0.2 * x;
        n[i] = std::exp(-x);
        h[i] = b[i] * n[i] + 0.05 * std::sin(5.0 * x);
    }
    double data_sq = 0.0;
    for (double v : n.values) data_sq += v * v;
    data_sq *= g.dx();

    const double delta = delta_metric(b, n, h);
    const double rel = relative_l2(b, n, h);
    CHECK(delta == doctest::Approx(rel * rel * std::sqrt(data_sq)).epsilon(1e-13));
}

TEST_CASE("error metrics validate their inputs") {
    Grid g(1.0, 3);
    GridFunction b(g), n(g), h(g);
    CHECK_THROWS_AS(delta_metric(b, n, h), std::invalid_argument);  // zero data norm
    GridFunction other(Grid(1.0, 5));
    n[1] = 1.0;
    CHECK_THROWS_AS(delta_metric(b, other, h), std::invalid_argument);
    CHECK_THROWS_AS(relative_l2(b, n, GridFunction(Grid(2.0, 3))), std::invalid_argument);
}

TEST_CASE("alpha optimum picks the smallest seed-averaged error") {
    std::vector<SweepRecord> rs = {
        rec(0.1, 0.1, 1, 3.0),
        rec(0.1, 0.2, 1, 1.0),
        rec(0.1, 0.3, 1, 2.0),
    };
    AlphaOptimum best = min_over_alpha(rs, 0.1);
    CHECK(best.value == doctest::Approx(1.0));
    CHECK(best.alpha == doctest::Approx(0.2));
}

TEST_CASE("alpha optimum averages over seeds and skips failures") {
    std::vector<SweepRecord> rs = {
        rec(0.1, 0.1, 1, 4.0), rec(0.1, 0.1, 2, 2.0),   // mean 3
        rec(0.1, 0.2, 1, 2.5), rec(0.1, 0.2, 2, kNan),  // NaN ignored -> 2.5
        rec(0.2, 0.1, 1, 0.1),                          // other epsilon, ignored
    };
    AlphaOptimum best = min_over_alpha(rs, 0.1);
    CHECK(best.value == doctest::Approx(2.5));
    CHECK(best.alpha == doctest::Approx(0.2));

    // Failed records alone leave nothing to minimize.
    std::vector<SweepRecord> bad = {rec(0.3, 0.1, 1, kNan)};
    CHECK_THROWS_AS(min_over_alpha(bad, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(min_over_alpha(rs, 0.5), std::invalid_argument);
}

TEST_CASE("alpha optimum breaks ties toward the smaller alpha") {
    std::vector<SweepRecord> rs = {
        rec(0.1, 0.4, 1, 1.0),
        rec(0.1, 0.2, 1, 1.0),
        rec(0.1, 0.3, 1, 5.0),
    };
    CHECK(min_over_alpha(rs, 0.1).alpha == doctest::Approx(0.2));
}

TEST_CASE("alpha optimum can read either error column") {
    std::vector<SweepRecord> rs = {
        rec(0.1, 0.1, 1, 1.0, 9.0),
        rec(0.1, 0.2, 1, 5.0, 2.0),
    };
    CHECK(min_over_alpha(rs, 0.1, DeltaColumn::delta).alpha == doctest::Approx(0.1));
    CHECK(min_over_alpha(rs, 0.1, DeltaColumn::rel_l2).alpha == doctest::Approx(0.2));
}

TEST_CASE("failed records are exactly the non-finite ones") {
    CHECK_FALSE(rec(0.1, 0.1, 1, 1.0, 1.0).failed());
    CHECK(rec(0.1, 0.1, 1, kNan, 1.0).failed());
    CHECK(rec(0.1, 0.1, 1, 1.0, kNan).failed());
    CHECK(rec(0.1, 0.1, 1, std::numeric_limits<double>::infinity(), 1.0).failed());
}

TEST_CASE("log-log fit recovers pure power laws exactly") {
    std::vector<CurvePoint> sqrt_pts;
    for (double e : {1e-4, 1e-3, 1e-2, 1e-1})
        sqrt_pts.push_back({e, std::sqrt(e), 0.0});
    ConvergenceFit f = fit_loglog_slope(sqrt_pts);
    CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    std::vector<CurvePoint> lin_pts;
    for (double e : {0.3, 0.01, 0.07, 0.002})  // unsorted on purpose
        lin_pts.push_back({e, 3.7 * e, 0.0});
    ConvergenceFit g = fit_loglog_slope(lin_pts);
    CHECK(g.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.intercept == doctest::Approx(std::log(3.7)).epsilon(1e-12));
    for (std::size_t i = 1; i < g.points.size(); ++i)
        CHECK(g.points[i - 1].epsilon < g.points[i].epsilon);
}

TEST_CASE("log-log fit input validation") {
    std::vector<CurvePoint> two = {{0.1, 1.0, 0.0}, {0.2, 2.0, 0.0}};
    CHECK_THROWS_AS(fit_loglog_slope(two), std::invalid_argument);

    std::vector<CurvePoint> neg = {{0.1, 1.0, 0.0}, {0.2, -2.0, 0.0}, {0.3, 1.0, 0.0}};
    CHECK_THROWS_AS(fit_loglog_slope(neg), std::invalid_argument);

    std::vector<CurvePoint> same = {{0.1, 1.0, 0.0}, {0.1, 2.0, 0.0}, {0.1, 3.0, 0.0}};
    CHECK_THROWS_AS(fit_loglog_slope(same), std::invalid_argument);
}

TEST_CASE("lambda mode names round trip") {
    CHECK(lambda_mode_from_string(to_string(LambdaMode::estimated)) == LambdaMode::estimated);
    CHECK(lambda_mode_from_string(to_string(LambdaMode::exact)) == LambdaMode::exact);
    CHECK_THROWS_AS(lambda_mode_from_string("sideways"), std::invalid_argument);
}
