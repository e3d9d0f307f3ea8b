#include "lobres/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <utility>

#include <fmt/format.h>

#include "lobres/wealth.hpp"

namespace lobres {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream reserved for bootstrap resampling; Monte-Carlo paths use 0..paths-1.
constexpr std::uint64_t kBootstrapStream = 0xB007'57A7'0000'0000ULL;

double percentile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
    return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sup_distance(const SampledPath& a, const SampledPath& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

std::string num(double x) { return fmt::format("{:.6g}", x); }

void check_bounds(const BookParams& book, const Strategy& strategy, double scale,
                  const UniformBounds& bounds) {
    const TimeGrid& g = book.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (Side s : {Side::Ask, Side::Bid}) {
            const double k = book.resilience(s, i);
            const double h = book.depth(s, i);
            const double a = book.permanent(s, i);
            if (k < bounds.resilience_lower) {
                throw std::invalid_argument("declared bound violated: K below resilience_lower");
            }
            if ((1.0 - a) / h > bounds.bound || a / h > bounds.bound ||
                book.base_spread(s, i) > bounds.bound) {
                throw std::invalid_argument("declared bound violated: book coefficient exceeds C");
            }
        }
        if (std::abs(strategy.step_rate(i)) > bounds.bound * scale) {
            throw std::invalid_argument("declared bound violated: trading rate exceeds C");
        }
    }
}

struct ConvergenceOptions {
    bool scaled_rates = false;
    std::string metric = "mean";
    const UniformBounds* bounds = nullptr;
};

ConvergenceReport run_convergence(const ExperimentSetup& setup, const ConvergenceOptions& opt) {
    if (setup.strategy.kind == StrategySpec::Kind::Blocks) {
        throw std::invalid_argument(
            "convergence experiments need an absolutely continuous strategy (no blocks)");
    }
    if (setup.mc.paths == 0) {
        throw std::invalid_argument("at least one Monte-Carlo path is required");
    }
    const auto& kappas = setup.ladder.values();
    const TimeGrid finest = setup.grid.grid_for(setup.ladder.max());
    std::vector<std::vector<double>> errors(kappas.size(), std::vector<double>(setup.mc.paths));

    for (std::size_t p = 0; p < setup.mc.paths; ++p) {
        RandomSource rng(setup.mc.seed, p);
        const SampledPath w = sample_brownian(finest, rng);
        for (std::size_t k = 0; k < kappas.size(); ++k) {
            const double kappa = kappas[k];
            const TimeGrid grid = setup.grid.grid_for(kappa);
            const SampledPath s = setup.fundamental.from_brownian(restrict_to(w, grid));
            const BookParams book = setup.book.instantiate(grid, kappa);
            const double scale = opt.scaled_rates ? std::pow(kappa, 0.25) : 1.0;
            const Strategy strategy = setup.strategy.build(grid, s, scale);
            if (opt.bounds != nullptr) {
                check_bounds(book, strategy, scale, *opt.bounds);
            }
            const WealthPath ow = ow_wealth(book, strategy, s, setup.initial_wealth);
            const WealthPath ac = ac_wealth(book, strategy, s, setup.initial_wealth);
            errors[k][p] = sup_distance(ow.wealth, ac.wealth);
        }
    }

    ConvergenceReport report;
    report.metric = opt.metric;
    std::vector<std::pair<double, double>> points;
    for (std::size_t k = 0; k < kappas.size(); ++k) {
        const auto& e = errors[k];
        std::vector<double> sq(e.size());
        std::transform(e.begin(), e.end(), sq.begin(), [](double x) { return x * x; });
        ConvergenceRow row{};
        row.kappa = kappas[k];
        row.mean_err = mean(e);
        row.p95_err = percentile(e, 0.95);
        row.l2_err = std::sqrt(mean(sq));
        const double primary = opt.metric == "l2" ? row.l2_err : row.mean_err;
        row.kappa_x_err = row.kappa * primary;
        row.sqrt_kappa_x_err = std::sqrt(row.kappa) * primary;
        if (primary > 0.0) {
            points.emplace_back(row.kappa, primary);
        } else {
            ++report.zero_error_points;
        }
        row.slope_so_far = points.size() >= 3 ? fit_rate(points).slope : kNaN;
        report.rows.push_back(row);
    }
    if (points.size() >= 3) {
        report.fit = fit_rate(points);
    }
    return report;
}

}  // namespace

KappaLadder::KappaLadder(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("kappa ladder must not be empty");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
            throw std::invalid_argument("kappa ladder values must be positive");
        }
        if (i > 0 && !(values_[i] > values_[i - 1])) {
            throw std::invalid_argument("kappa ladder must be strictly increasing");
        }
    }
}

KappaLadder KappaLadder::geometric(double first, std::size_t count, double ratio) {
    std::vector<double> v(count);
    double k = first;
    for (double& x : v) {
        x = k;
        k *= ratio;
    }
    return KappaLadder(std::move(v));
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
    std::vector<double> xs, ys;
    for (const auto& [kappa, err] : points) {
        if (err > 0.0 && kappa > 0.0) {
            xs.push_back(std::log(kappa));
            ys.push_back(std::log(err));
        }
    }
    if (xs.size() < 3) {
        throw InsufficientData("rate fit needs at least 3 points with positive error, got " +
                               std::to_string(xs.size()));
    }
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss += r * r;
    }
    return RateFit{slope, intercept, std::sqrt(ss / n)};
}

bool all_passed(const std::vector<Gate>& gates) {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.passed; });
}

SampledPath common_fundamental(const ExperimentSetup& setup, std::size_t stream, double kappa) {
    RandomSource rng(setup.mc.seed, stream);
    const SampledPath w = sample_brownian(setup.grid.grid_for(setup.ladder.max()), rng);
    return setup.fundamental.from_brownian(restrict_to(w, setup.grid.grid_for(kappa)));
}

ConvergenceReport theorem1_experiment(const ExperimentSetup& setup) {
    return run_convergence(setup, {});
}

ConvergenceReport remark1_experiment(const ExperimentSetup& setup) {
    ConvergenceOptions opt;
    opt.scaled_rates = true;
    return run_convergence(setup, opt);
}

ConvergenceReport l2_convergence_experiment(const ExperimentSetup& setup,
                                            const UniformBounds& bounds, bool scaled_rates) {
    ConvergenceOptions opt;
    opt.scaled_rates = scaled_rates;
    opt.metric = "l2";
    opt.bounds = &bounds;
    return run_convergence(setup, opt);
}

std::vector<Gate> convergence_gates(const ConvergenceReport& report, double scale_exponent,
                                    bool upper_half_only, double max_slope) {
    std::vector<Gate> gates;
    const std::size_t n = report.rows.size();
    const std::size_t start = upper_half_only ? n / 2 : 0;
    bool decreasing = n - start >= 2;
    std::string detail;
    for (std::size_t i = start; i < n; ++i) {
        const double scaled = std::pow(report.rows[i].kappa, scale_exponent) * report.primary(i);
        detail += (detail.empty() ? "" : " ") + num(scaled);
        if (i > start) {
            const double prev =
                std::pow(report.rows[i - 1].kappa, scale_exponent) * report.primary(i - 1);
            decreasing = decreasing && scaled < prev;
        }
    }
    gates.push_back({fmt::format("kappa^{} x {} error strictly decreasing{}", scale_exponent,
                                 report.metric, upper_half_only ? " (upper half)" : ""),
                     decreasing, detail});
    if (report.fit) {
        gates.push_back({fmt::format("fitted slope <= {}", max_slope),
                         report.fit->slope <= max_slope, "slope " + num(report.fit->slope)});
    } else {
        gates.push_back({fmt::format("fitted slope <= {}", max_slope), false,
                         "fewer than 3 positive error points"});
    }
    return gates;
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
    out << "kappa,mean_err,p95_err,kappa_x_err,slope_so_far,l2_err,sqrt_kappa_x_err\n";
    for (const ConvergenceRow& r : report.rows) {
        out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.kappa,
                           r.mean_err, r.p95_err, r.kappa_x_err, r.slope_so_far, r.l2_err,
                           r.sqrt_kappa_x_err);
    }
}

LemmaReport lemma_jump_experiment(const ExperimentSetup& setup, double window_factor) {
    if (setup.strategy.kind != StrategySpec::Kind::Blocks || setup.strategy.block_times.empty()) {
        throw std::invalid_argument("block-dominance experiment needs a nonzero block strategy");
    }
    if (setup.mc.paths == 0) {
        throw std::invalid_argument("at least one Monte-Carlo path is required");
    }
    const auto& kappas = setup.ladder.values();
    const TimeGrid finest = setup.grid.grid_for(setup.ladder.max());

    LemmaReport report;
    report.deterministic = setup.fundamental.deterministic();
    report.limit = 0.0;
    for (std::size_t k = 0; k < setup.strategy.block_times.size(); ++k) {
        const double t = setup.strategy.block_times[k];
        const double theta = setup.strategy.block_sizes.at(k);
        const bool buy = theta > 0.0;
        const double alpha = buy ? setup.book.permanent_up(t) : setup.book.permanent_down(t);
        const double h = buy ? setup.book.depth_up(t) : setup.book.depth_down(t);
        report.limit += (1.0 - alpha) * theta * theta / (2.0 * h);
    }

    std::vector<std::vector<double>> diffs(kappas.size(), std::vector<double>(setup.mc.paths));
    for (std::size_t p = 0; p < setup.mc.paths; ++p) {
        RandomSource rng(setup.mc.seed, p);
        const SampledPath w = sample_brownian(finest, rng);
        for (std::size_t k = 0; k < kappas.size(); ++k) {
            const double kappa = kappas[k];
            const TimeGrid grid = setup.grid.grid_for(kappa);
            const SampledPath s = setup.fundamental.from_brownian(restrict_to(w, grid));
            const BookParams book = setup.book.instantiate(grid, kappa);
            const Strategy blocks = setup.strategy.build(grid, s);
            if (!blocks.has_blocks()) {
                throw std::invalid_argument("block-dominance experiment needs a nonzero strategy");
            }
            const Strategy smooth = smooth_blocks(blocks, kappa, window_factor);
            diffs[k][p] = ow_wealth(book, smooth, s, setup.initial_wealth).terminal() -
                          ow_wealth(book, blocks, s, setup.initial_wealth).terminal();
        }
    }
    for (std::size_t k = 0; k < kappas.size(); ++k) {
        const auto& d = diffs[k];
        const auto positive = std::count_if(d.begin(), d.end(), [](double x) { return x > 0.0; });
        report.rows.push_back({kappas[k], mean(d), *std::min_element(d.begin(), d.end()),
                               static_cast<double>(positive) / static_cast<double>(d.size())});
    }
    return report;
}

std::vector<Gate> lemma_gates(const LemmaReport& report, double tolerance,
                              double min_positive_fraction) {
    std::vector<Gate> gates;
    const LemmaRow& last = report.rows.back();
    if (report.deterministic) {
        const double gap = std::abs(last.mean_diff - report.limit);
        gates.push_back({fmt::format("|D(kappa_max) - limit| <= {}", tolerance), gap <= tolerance,
                         fmt::format("D {} limit {} gap {}", num(last.mean_diff),
                                     num(report.limit), num(gap))});
    }
    const double need = report.deterministic ? 1.0 : min_positive_fraction;
    gates.push_back({fmt::format("fraction of paths with D(kappa_max) > 0 >= {}", need),
                     last.positive_fraction >= need, "fraction " + num(last.positive_fraction)});
    return gates;
}

void write_lemma_csv(std::ostream& out, const LemmaReport& report) {
    out << "kappa,mean_diff,min_diff,positive_fraction,limit\n";
    for (const LemmaRow& r : report.rows) {
        out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.kappa, r.mean_diff,
                           r.min_diff, r.positive_fraction, report.limit);
    }
}

TrackerBoundReport tracker_bound_experiment(const TrackerBoundSetup& setup) {
    const double c = setup.coefficient_bound;
    if (!(c > 0.0) || std::abs(setup.drift) > c || std::abs(setup.volatility) > c) {
        throw std::invalid_argument("target drift/volatility violate the declared bound C");
    }
    if (!(setup.speed_lower > 0.0) || setup.speed < setup.speed_lower) {
        throw std::invalid_argument("tracker rate M violates its declared lower bound");
    }
    if (setup.mc.paths < 2) {
        throw std::invalid_argument("tracker bound estimate needs at least two paths");
    }
    const auto& kappas = setup.ladder.values();
    const TimeGrid finest = setup.grid.grid_for(setup.ladder.max());
    const double mu = setup.drift;
    const double sigma = setup.volatility;

    std::vector<std::vector<double>> sups(kappas.size(), std::vector<double>(setup.mc.paths));
    for (std::size_t p = 0; p < setup.mc.paths; ++p) {
        RandomSource rng(setup.mc.seed, p);
        const SampledPath w = sample_brownian(finest, rng);
        for (std::size_t k = 0; k < kappas.size(); ++k) {
            const double kappa = kappas[k];
            const TimeGrid grid = setup.grid.grid_for(kappa);
            TrackerSpec spec{ito_from_brownian(
                                 restrict_to(w, grid), [mu](double, double) { return mu; },
                                 [sigma](double, double) { return sigma; }, setup.initial_target),
                             constant_path(grid, setup.speed), kappa, c, c};
            const auto pos = exponential_tracker(spec).positions();
            double sup = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double d = spec.target[i] - pos[i];
                sup = std::max(sup, std::sqrt(kappa) * d * d);
            }
            sups[k][p] = sup;
        }
    }

    TrackerBoundReport report;
    report.bound = 5.0 * c * c * setup.grid.horizon / setup.speed_lower;
    for (std::size_t k = 0; k < kappas.size(); ++k) {
        const auto& v = sups[k];
        const double m = mean(v);
        double ss = 0.0;
        for (double x : v) {
            ss += (x - m) * (x - m);
        }
        const double se = std::sqrt(ss / static_cast<double>(v.size() - 1)) /
                          std::sqrt(static_cast<double>(v.size()));
        report.rows.push_back({kappas[k], m, se, m > report.bound + 3.0 * se});
    }
    return report;
}

std::vector<Gate> tracker_bound_gates(const TrackerBoundReport& report) {
    bool ok = true;
    std::string detail;
    for (const TrackerBoundRow& r : report.rows) {
        ok = ok && !r.violated;
        detail += fmt::format("{}{}:{}", detail.empty() ? "" : " ", num(r.kappa), num(r.estimate));
    }
    return {{fmt::format("estimate <= {} + 3 SE for every kappa", num(report.bound)), ok, detail}};
}

void write_tracker_bound_csv(std::ostream& out, const TrackerBoundReport& report) {
    out << "kappa,estimate,std_error,bound,violated\n";
    for (const TrackerBoundRow& r : report.rows) {
        out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{}\n", r.kappa, r.estimate, r.std_error,
                           report.bound, r.violated ? 1 : 0);
    }
}

CertaintyEquivalent certainty_equivalent(const std::vector<double>& wealth, double risk_aversion,
                                         std::size_t resamples, std::uint64_t seed) {
    if (wealth.empty() || !(risk_aversion > 0.0)) {
        throw std::invalid_argument("certainty equivalent needs wealth samples and gamma > 0");
    }
    auto ce_of = [&](auto&& sample_at) {
        const std::size_t n = wealth.size();
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            top = std::max(top, -risk_aversion * sample_at(j));
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += std::exp(-risk_aversion * sample_at(j) - top);
        }
        return -(top + std::log(acc / static_cast<double>(n))) / risk_aversion;
    };
    CertaintyEquivalent ce{};
    ce.value = ce_of([&](std::size_t j) { return wealth[j]; });
    ce.ci_low = ce.ci_high = ce.value;
    if (resamples > 0) {
        RandomSource rng(seed, kBootstrapStream);
        std::vector<double> draws(resamples);
        std::vector<std::size_t> idx(wealth.size());
        for (double& d : draws) {
            for (auto& i : idx) {
                i = static_cast<std::size_t>(rng.next_u64() % wealth.size());
            }
            d = ce_of([&](std::size_t j) { return wealth[idx[j]]; });
        }
        ce.ci_low = percentile(draws, 0.025);
        ce.ci_high = percentile(draws, 0.975);
    }
    return ce;
}

UtilityReport utility_experiment(const UtilitySetup& setup) {
    const ExperimentSetup& base = setup.base;
    const BookTemplate& bt = base.book;
    const CoefficientSpec zero = CoefficientSpec::constant(0.0);
    if (!(bt.spread_up == zero) || !(bt.spread_down == zero)) {
        throw std::invalid_argument("utility experiment requires zero base spreads");
    }
    if (!(bt.permanent_up == zero) || !(bt.permanent_down == zero)) {
        throw std::invalid_argument("utility experiment requires zero permanent impact");
    }
    if (!(bt.resilience_up == bt.resilience_down) || !(bt.depth_up == bt.depth_down)) {
        throw std::invalid_argument("utility experiment requires a symmetric book");
    }
    if (!(base.fundamental.volatility > 0.0)) {
        throw std::invalid_argument("utility experiment requires sigma > 0 (tracking speed is zero)");
    }
    if (!(setup.risk_aversion > 0.0)) {
        throw std::invalid_argument("risk aversion gamma must be positive");
    }
    if (std::find(setup.multipliers.begin(), setup.multipliers.end(), 1.0) ==
        setup.multipliers.end()) {
        throw std::invalid_argument("speed multipliers must include the candidate 1");
    }
    for (double m : setup.multipliers) {
        if (!(m > 0.0)) {
            throw std::invalid_argument("speed multipliers must be positive");
        }
    }
    if (base.mc.paths == 0) {
        throw std::invalid_argument("at least one Monte-Carlo path is required");
    }

    // (kappa, multiplier) cells: the comparison first, then the ladder.
    std::vector<std::pair<double, double>> cells;
    for (double m : setup.multipliers) {
        cells.emplace_back(setup.kappa, m);
    }
    for (double k : base.ladder.values()) {
        if (k != setup.kappa) {
            cells.emplace_back(k, 1.0);
        }
    }
    double kappa_max = setup.kappa;
    for (const auto& cell : cells) {
        kappa_max = std::max(kappa_max, cell.first);
    }
    const TimeGrid finest = base.grid.grid_for(kappa_max);
    const double sigma = base.fundamental.volatility;
    const double target = base.fundamental.drift / (setup.risk_aversion * sigma * sigma);

    std::vector<std::vector<double>> ow(cells.size(), std::vector<double>(base.mc.paths));
    std::vector<std::vector<double>> ac(cells.size(), std::vector<double>(base.mc.paths));
    for (std::size_t p = 0; p < base.mc.paths; ++p) {
        RandomSource rng(base.mc.seed, p);
        const SampledPath w = sample_brownian(finest, rng);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto [kappa, mult] = cells[c];
            const TimeGrid grid = base.grid.grid_for(kappa);
            const SampledPath s = base.fundamental.from_brownian(restrict_to(w, grid));
            const BookParams book = bt.instantiate(grid, kappa);
            const Strategy tracker = optimal_tracker(
                book, constant_path(grid, sigma), constant_path(grid, 1.0 / setup.risk_aversion),
                constant_path(grid, target), setup.initial_position, mult);
            ow[c][p] = ow_wealth(book, tracker, s, base.initial_wealth).terminal();
            ac[c][p] = ac_wealth(book, tracker, s, base.initial_wealth).terminal();
        }
    }

    UtilityReport report;
    report.kappa = setup.kappa;
    report.frictionless = base.initial_wealth + base.fundamental.drift * base.fundamental.drift *
                                                    base.grid.horizon /
                                                    (2.0 * setup.risk_aversion * sigma * sigma);
    auto row_for = [&](std::size_t c) {
        return UtilityRow{cells[c].first, cells[c].second,
                          certainty_equivalent(ow[c], setup.risk_aversion,
                                               setup.bootstrap_resamples, base.mc.seed),
                          certainty_equivalent(ac[c], setup.risk_aversion, 0, base.mc.seed).value};
    };
    std::size_t candidate = 0;
    for (std::size_t c = 0; c < setup.multipliers.size(); ++c) {
        report.comparison.push_back(row_for(c));
        if (setup.multipliers[c] == 1.0) {
            candidate = c;
        }
    }
    std::size_t next = setup.multipliers.size();
    for (double k : base.ladder.values()) {
        report.ladder.push_back(k == setup.kappa ? report.comparison[candidate] : row_for(next++));
    }
    return report;
}

std::vector<Gate> utility_gates(const UtilityReport& report) {
    std::vector<Gate> gates;
    const auto candidate = std::find_if(report.comparison.begin(), report.comparison.end(),
                                        [](const UtilityRow& r) { return r.multiplier == 1.0; });
    if (candidate == report.comparison.end()) {
        return {{"candidate tracker present", false, "no multiplier-1 row"}};
    }
    for (const UtilityRow& c : report.comparison) {
        if (c.multiplier == 1.0) {
            continue;
        }
        const double hw = c.ow.half_width();
        gates.push_back({fmt::format("CE(1) >= CE({}) - CI half-width at kappa {}",
                                     num(c.multiplier), num(report.kappa)),
                         candidate->ow.value >= c.ow.value - hw,
                         fmt::format("CE(1) {} CE({}) {} half-width {}", num(candidate->ow.value),
                                     num(c.multiplier), num(c.ow.value), num(hw))});
    }
    if (report.ladder.size() >= 2) {
        bool increasing = true;
        bool below = true;
        std::string detail;
        for (std::size_t i = 0; i < report.ladder.size(); ++i) {
            const UtilityRow& r = report.ladder[i];
            detail += fmt::format("{}{}:{}", i ? " " : "", num(r.kappa), num(r.ow.value));
            if (i > 0) {
                increasing = increasing && r.ow.value > report.ladder[i - 1].ow.value;
            }
            below = below && r.ow.value <= report.frictionless + r.ow.half_width();
        }
        gates.push_back({"CE(kappa) strictly increasing over the ladder", increasing, detail});
        gates.push_back({"CE(kappa) at or below the frictionless CE (within CI)", below,
                         "frictionless " + num(report.frictionless)});
    }
    return gates;
}

void write_utility_csv(std::ostream& out, const UtilityReport& report) {
    out << "section,kappa,multiplier,ce_ow,ci_low,ci_high,ce_ac,ce_frictionless\n";
    for (const UtilityRow& r : report.comparison) {
        out << fmt::format("comparison,{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                           r.kappa, r.multiplier, r.ow.value, r.ow.ci_low, r.ow.ci_high, r.ac,
                           report.frictionless);
    }
    for (const UtilityRow& r : report.ladder) {
        out << fmt::format("ladder,{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                           r.kappa, r.multiplier, r.ow.value, r.ow.ci_low, r.ow.ci_high, r.ac,
                           report.frictionless);
    }
}

}  // namespace lobres
