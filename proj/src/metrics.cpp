#include "celldiv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace celldiv {

namespace {

struct Norms {
    double mismatch_sq = 0.0;  // sum (B N - H)^2 dx
    double data_sq = 0.0;      // sum N^2 dx
};

Norms accumulate(const GridFunction& b_true, const GridFunction& n_eps,
                 const GridFunction& h) {
    if (!(b_true.grid == n_eps.grid) || !(n_eps.grid == h.grid))
        throw std::invalid_argument("error metric: grids differ");
    Norms out;
    for (std::size_t i = 0; i < n_eps.size(); ++i) {
        const double d = b_true.values[i] * n_eps.values[i] - h.values[i];
        out.mismatch_sq += d * d;
        out.data_sq += n_eps.values[i] * n_eps.values[i];
    }
    const double dx = n_eps.grid.dx();
    out.mismatch_sq *= dx;
    out.data_sq *= dx;
    if (!(out.data_sq > 0.0))
        throw std::invalid_argument("error metric: zero data norm");
    return out;
}

} // namespace

double delta_metric(const GridFunction& b_true, const GridFunction& n_eps,
                    const GridFunction& h) {
    const Norms n = accumulate(b_true, n_eps, h);
    return n.mismatch_sq / std::sqrt(n.data_sq);
}

double relative_l2(const GridFunction& b_true, const GridFunction& n_eps,
                   const GridFunction& h) {
    const Norms n = accumulate(b_true, n_eps, h);
    return std::sqrt(n.mismatch_sq / n.data_sq);
}

const char* to_string(LambdaMode m) {
    return m == LambdaMode::exact ? "exact" : "estimated";
}

LambdaMode lambda_mode_from_string(const std::string& s) {
    if (s == "estimated") return LambdaMode::estimated;
    if (s == "exact") return LambdaMode::exact;
    throw std::invalid_argument("unknown lambda mode: " + s);
}

bool SweepRecord::failed() const {
    return !std::isfinite(delta) || !std::isfinite(delta_rel_l2);
}

AlphaOptimum min_over_alpha(const std::vector<SweepRecord>& records, double epsilon,
                            DeltaColumn column) {
    std::map<double, std::pair<double, std::size_t>> sums;  // alpha -> (sum, count)
    for (const SweepRecord& r : records) {
        if (r.epsilon != epsilon || r.failed()) continue;
        const double v = (column == DeltaColumn::delta) ? r.delta : r.delta_rel_l2;
        auto& slot = sums[r.alpha];
        slot.first += v;
        slot.second += 1;
    }
    if (sums.empty())
        throw std::invalid_argument("min_over_alpha: no usable records at this epsilon");

    AlphaOptimum best{std::numeric_limits<double>::infinity(), 0.0};
    for (const auto& [alpha, acc] : sums) {
        const double mean = acc.first / static_cast<double>(acc.second);
        if (mean < best.value) best = {mean, alpha};  // map order breaks ties toward smaller alpha
    }
    return best;
}

ConvergenceFit fit_loglog_slope(std::vector<CurvePoint> points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_loglog_slope: need at least 3 points");
    for (const CurvePoint& p : points)
        if (!(p.epsilon > 0.0) || !(p.value > 0.0))
            throw std::invalid_argument("fit_loglog_slope: nonpositive coordinate");

    std::sort(points.begin(), points.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.epsilon < b.epsilon; });

    const auto n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    for (const CurvePoint& p : points) {
        const double x = std::log(p.epsilon);
        const double y = std::log(p.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
    }
    // The normal-equation denominator cancels to roundoff when all epsilons
    // coincide, so degeneracy is detected on the abscissa spread instead.
    if (x_hi - x_lo <= 1e-9 * std::max({std::abs(x_lo), std::abs(x_hi), 1.0}))
        throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
    const double denom = n * sxx - sx * sx;

    ConvergenceFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.points = std::move(points);
    return fit;
}

} // namespace celldiv
