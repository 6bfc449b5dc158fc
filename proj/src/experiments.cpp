#include "celldiv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "celldiv/csv.hpp"
#include "celldiv/noise.hpp"
#include "celldiv/rates.hpp"

namespace celldiv {

namespace {

constexpr double tail_ratio_limit = 1e-6;

bool all_noiseless(const std::vector<double>& epsilons) {
    for (double e : epsilons)
        if (e != 0.0) return false;
    return true;
}

std::string plan_cache_key(const ExperimentPlan& plan) {
    std::ostringstream key;
    key << plan.b_spec << '|' << plan.direct_intervals() << '|'
        << format_double(2.0 * plan.l_half) << '|' << format_double(plan.theta) << '|'
        << format_double(plan.stop_tol);
    return key.str();
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string cache_file_name(const std::string& key) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "direct-%016llx.csv",
                  static_cast<unsigned long long>(fnv1a64(key)));
    return buf;
}

DirectRun finish_direct_run(const ExperimentPlan& plan, EigenPair eigen) {
    DirectRun run;
    run.b = parse_rate(plan.b_spec).sample(eigen.n.grid);

    const Grid& g = eigen.n.grid;
    double tail_sum = 0.0, tail_max = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < eigen.n.size(); ++i) {
        const double v = eigen.n.values[i];
        peak = std::max(peak, v);
        if (g.node(i) >= plan.l_half) {
            tail_sum += v;
            tail_max = std::max(tail_max, v);
        }
    }
    run.tail_mass = tail_sum * g.dx();
    run.tail_max_ratio = (peak > 0.0) ? tail_max / peak : 0.0;
    run.tail_ok = run.tail_max_ratio <= tail_ratio_limit;
    run.eigen = std::move(eigen);
    return run;
}

std::optional<EigenPair> load_cached_eigen(const std::string& path, const std::string& key,
                                           const Grid& expected_grid) {
    std::ifstream is(path);
    if (!is) return std::nullopt;

    EigenPair eigen;
    std::string stored_key;
    std::string line;
    std::streampos data_start = is.tellg();
    while (std::getline(is, line)) {
        if (line.empty() || line[0] != '#') break;
        const std::string body = line.substr(1);
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            data_start = is.tellg();
            continue;
        }
        std::string name = body.substr(0, eq);
        name.erase(0, name.find_first_not_of(' '));
        const std::string value = body.substr(eq + 1);
        try {
            if (name == "key") stored_key = value;
            else if (name == "lambda0") eigen.lambda0 = std::stod(value);
            else if (name == "lambda_log") eigen.lambda_log = std::stod(value);
            else if (name == "lambda_growth") eigen.lambda_growth = std::stod(value);
            else if (name == "iterations") eigen.iterations = std::stoull(value);
            else if (name == "final_residual") eigen.final_residual = std::stod(value);
            else if (name == "stationary_residual") eigen.stationary_residual = std::stod(value);
        } catch (const std::exception&) {
            return std::nullopt;
        }
        data_start = is.tellg();
    }
    if (stored_key != key) return std::nullopt;

    is.clear();
    is.seekg(data_start);
    try {
        eigen.n = read_grid_function_csv(is);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (!(eigen.n.grid == expected_grid)) return std::nullopt;
    return eigen;
}

void store_cached_eigen(const std::string& path, const std::string& key, const EigenPair& eigen) {
    const std::vector<std::string> comments = {
        "key=" + key,
        "lambda0=" + format_double(eigen.lambda0),
        "lambda_log=" + format_double(eigen.lambda_log),
        "lambda_growth=" + format_double(eigen.lambda_growth),
        "iterations=" + std::to_string(eigen.iterations),
        "final_residual=" + format_double(eigen.final_residual),
        "stationary_residual=" + format_double(eigen.stationary_residual),
    };
    write_grid_function_file(path, eigen.n, comments);
}

std::mutex memo_mutex;
std::map<std::string, EigenPair>& memo() {
    static std::map<std::string, EigenPair> m;
    return m;
}

InverseResult dispatch_solve(Method method, const GridFunction& n_eps, const InverseConfig& cfg) {
    switch (method) {
        case Method::brute: return solve_brute(n_eps, cfg);
        case Method::filter: return solve_filter(n_eps, cfg);
        case Method::qr: return solve_qr(n_eps, cfg);
        case Method::mixed: return solve_mixed(n_eps, cfg);
    }
    throw std::invalid_argument("run_sweep: unknown method");
}

std::string record_line(const SweepRecord& r) {
    std::ostringstream os;
    os << to_string(r.method) << ',' << format_double(r.epsilon) << ','
       << format_double(r.alpha) << ',' << r.seed << ',' << format_double(r.delta) << ','
       << format_double(r.delta_rel_l2) << ',' << format_double(r.lambda_used) << ','
       << format_double(r.lambda_abs_err) << ',' << to_string(r.lambda_mode);
    return os.str();
}

double parse_field(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("sweep csv: bad number '" + s + "'");
    return v;
}

} // namespace

std::vector<double> default_alpha_grid() {
    std::vector<double> alphas(13);
    for (std::size_t k = 0; k < alphas.size(); ++k)
        alphas[k] = std::pow(10.0, -3.0 + static_cast<double>(k) * 0.25);
    alphas.back() = 1.0;
    return alphas;
}

std::string smooth_bump_spec() {
    // exp(-8 (x-2)^2) = exp(-((x-2)/w)^2) for w = 1/sqrt(8)
    return "gauss-bump:1:1:2:" + format_double(1.0 / std::sqrt(8.0));
}

std::size_t ExperimentPlan::direct_intervals() const {
    if (i_direct != 0) return i_direct;
    return all_noiseless(epsilons) ? 1000 : 100;
}

Grid ExperimentPlan::direct_grid() const {
    return Grid(2.0 * l_half, direct_intervals() + 1);
}

Grid ExperimentPlan::fine_grid() const {
    return Grid(l_half, refine_factor * direct_intervals() + 1);
}

std::vector<double> ExperimentPlan::alpha_grid() const {
    return alphas.empty() ? default_alpha_grid() : alphas;
}

DirectRun run_direct(const ExperimentPlan& plan) {
    if (plan.refine_factor < 1)
        throw std::invalid_argument("run_direct: refine_factor must be >= 1");
    const std::string key = plan_cache_key(plan);
    const Grid g = plan.direct_grid();

    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo().find(key);
        if (it != memo().end()) return finish_direct_run(plan, it->second);
    }

    std::string disk_path;
    if (!plan.cache_dir.empty()) {
        std::filesystem::create_directories(plan.cache_dir);
        disk_path = (std::filesystem::path(plan.cache_dir) / cache_file_name(key)).string();
        if (auto eigen = load_cached_eigen(disk_path, key, g)) {
            std::lock_guard<std::mutex> lock(memo_mutex);
            memo().emplace(key, *eigen);
            return finish_direct_run(plan, std::move(*eigen));
        }
    }

    const GridFunction b = parse_rate(plan.b_spec).sample(g);
    DirectConfig cfg;
    cfg.theta = plan.theta;
    cfg.stop_tol = plan.stop_tol;
    EigenPair eigen = solve_eigenpair(b, cfg);

    if (!disk_path.empty()) store_cached_eigen(disk_path, key, eigen);
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        memo().emplace(key, eigen);
    }
    return finish_direct_run(plan, std::move(eigen));
}

double lambda0_reference(const ExperimentPlan& plan, const DirectRun& direct) {
    const std::string prefix = "const:";
    if (plan.b_spec.compare(0, prefix.size(), prefix) == 0)
        return std::stod(plan.b_spec.substr(prefix.size()));
    return direct.eigen.lambda0;
}

GridFunction make_noisy_data(const DirectRun& direct, const Grid& fine, double epsilon,
                             std::uint64_t seed) {
    const GridFunction n_fine = resample(direct.eigen.n, fine);
    return perturb(n_fine, NoiseSpec{epsilon, seed});
}

std::vector<SweepRecord> run_sweep(const ExperimentPlan& plan) {
    return run_sweep(plan, run_direct(plan));
}

std::vector<SweepRecord> run_sweep(const ExperimentPlan& plan, const DirectRun& direct) {
    const Grid fine = plan.fine_grid();
    const GridFunction b_true = parse_rate(plan.b_spec).sample(fine);
    const double lambda0 = lambda0_reference(plan, direct);
    const std::vector<double> alphas = plan.alpha_grid();

    std::vector<LambdaMode> modes = {LambdaMode::estimated};
    if (plan.use_exact_lambda) modes.push_back(LambdaMode::exact);

    std::map<std::pair<double, std::uint64_t>, GridFunction> data;
    for (double epsilon : plan.epsilons)
        for (std::uint64_t seed : plan.seeds)
            data.emplace(std::make_pair(epsilon, seed),
                         make_noisy_data(direct, fine, epsilon, seed));

    std::vector<SweepRecord> records;
    records.reserve(plan.methods.size() * plan.epsilons.size() * alphas.size() *
                    plan.seeds.size() * modes.size());

    for (Method method : plan.methods) {
        for (double epsilon : plan.epsilons) {
            for (double alpha : alphas) {
                for (std::uint64_t seed : plan.seeds) {
                    const GridFunction& n_eps = data.at({epsilon, seed});
                    for (LambdaMode mode : modes) {
                        SweepRecord rec;
                        rec.method = method;
                        rec.epsilon = epsilon;
                        rec.alpha = alpha;
                        rec.seed = seed;
                        rec.lambda_mode = mode;

                        InverseConfig cfg;
                        cfg.alpha = alpha;
                        cfg.b_threshold = plan.b_threshold;
                        if (mode == LambdaMode::exact) cfg.lambda_override = lambda0;
                        try {
                            const InverseResult res = dispatch_solve(method, n_eps, cfg);
                            rec.delta = delta_metric(b_true, n_eps, res.h);
                            rec.delta_rel_l2 = relative_l2(b_true, n_eps, res.h);
                            rec.lambda_used = res.lambda_used.value;
                            rec.lambda_abs_err = std::abs(res.lambda_used.value - lambda0);
                        } catch (const std::exception&) {
                            const double nan = std::numeric_limits<double>::quiet_NaN();
                            rec.delta = nan;
                            rec.delta_rel_l2 = nan;
                            rec.lambda_used = nan;
                            rec.lambda_abs_err = nan;
                        }
                        records.push_back(rec);
                    }
                }
            }
        }
    }
    return records;
}

std::vector<MethodFit> fit_convergence(const std::vector<SweepRecord>& records) {
    std::map<std::pair<int, int>, std::vector<SweepRecord>> groups;
    for (const SweepRecord& r : records)
        groups[{static_cast<int>(r.method), static_cast<int>(r.lambda_mode)}].push_back(r);

    std::vector<MethodFit> fits;
    for (auto& [tag, group] : groups) {
        std::vector<double> epsilons;
        for (const SweepRecord& r : group) epsilons.push_back(r.epsilon);
        std::sort(epsilons.begin(), epsilons.end());
        epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());

        std::vector<CurvePoint> delta_points, rel_points;
        for (double eps : epsilons) {
            const AlphaOptimum d = min_over_alpha(group, eps, DeltaColumn::delta);
            const AlphaOptimum r = min_over_alpha(group, eps, DeltaColumn::rel_l2);
            delta_points.push_back({eps, d.value, d.alpha});
            rel_points.push_back({eps, r.value, r.alpha});
        }

        MethodFit fit;
        fit.method = static_cast<Method>(tag.first);
        fit.mode = static_cast<LambdaMode>(tag.second);
        fit.delta_fit = fit_loglog_slope(std::move(delta_points));
        fit.rel_l2_fit = fit_loglog_slope(std::move(rel_points));
        fits.push_back(std::move(fit));
    }
    return fits;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records,
                     const std::vector<std::string>& comments) {
    for (const std::string& c : comments) os << "# " << c << '\n';
    os << "method,epsilon,alpha,seed,delta,delta_rel_l2,lambda_used,lambda_abs_err,lambda_mode\n";
    for (const SweepRecord& r : records) os << record_line(r) << '\n';
}

std::vector<SweepRecord> read_sweep_csv(std::istream& is) {
    std::vector<SweepRecord> records;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 9)
            throw std::invalid_argument("sweep csv: expected 9 fields, got line '" + line + "'");
        SweepRecord r;
        r.method = method_from_string(f[0]);
        r.epsilon = parse_field(f[1]);
        r.alpha = parse_field(f[2]);
        r.seed = std::stoull(f[3]);
        r.delta = parse_field(f[4]);
        r.delta_rel_l2 = parse_field(f[5]);
        r.lambda_used = parse_field(f[6]);
        r.lambda_abs_err = parse_field(f[7]);
        r.lambda_mode = lambda_mode_from_string(f[8]);
        records.push_back(r);
    }
    if (!header_seen) throw std::invalid_argument("sweep csv: missing header");
    return records;
}

void write_sweep_file(const std::string& path, const std::vector<SweepRecord>& records,
                      const std::vector<std::string>& comments) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open for writing: " + path);
    write_sweep_csv(os, records, comments);
    if (!os.flush()) throw std::runtime_error("write failed: " + path);
}

std::vector<SweepRecord> read_sweep_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open: " + path);
    return read_sweep_csv(is);
}

void write_convergence_csv(std::ostream& os, const std::vector<MethodFit>& fits,
                           const std::vector<std::string>& comments) {
    for (const std::string& c : comments) os << "# " << c << '\n';
    for (const MethodFit& f : fits) {
        os << "# fit method=" << to_string(f.method) << " lambda_mode=" << to_string(f.mode)
           << " column=delta slope=" << format_double(f.delta_fit.slope)
           << " intercept=" << format_double(f.delta_fit.intercept) << '\n';
        os << "# fit method=" << to_string(f.method) << " lambda_mode=" << to_string(f.mode)
           << " column=delta_rel_l2 slope=" << format_double(f.rel_l2_fit.slope)
           << " intercept=" << format_double(f.rel_l2_fit.intercept) << '\n';
    }
    os << "method,lambda_mode,column,epsilon,min_value,argmin_alpha\n";
    for (const MethodFit& f : fits) {
        for (const CurvePoint& p : f.delta_fit.points)
            os << to_string(f.method) << ',' << to_string(f.mode) << ",delta,"
               << format_double(p.epsilon) << ',' << format_double(p.value) << ','
               << format_double(p.alpha) << '\n';
        for (const CurvePoint& p : f.rel_l2_fit.points)
            os << to_string(f.method) << ',' << to_string(f.mode) << ",delta_rel_l2,"
               << format_double(p.epsilon) << ',' << format_double(p.value) << ','
               << format_double(p.alpha) << '\n';
    }
}

} // namespace celldiv
