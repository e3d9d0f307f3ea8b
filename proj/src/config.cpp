#include "lobres/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace lobres {

ParseError::ParseError(std::size_t line, std::string key, const std::string& message)
    : std::runtime_error(key.empty() ? fmt::format("line {}: {}", line, message)
                                     : fmt::format("line {}: key '{}': {}", line, key, message)),
      line_(line),
      key_(std::move(key)) {}

namespace {

constexpr std::array<std::pair<ExperimentKind, const char*>, 7> kExperimentNames{{
    {ExperimentKind::Simulate, "simulate"},
    {ExperimentKind::Theorem1, "theorem1"},
    {ExperimentKind::Remark1, "remark1"},
    {ExperimentKind::LemmaJump, "lemma-jump"},
    {ExperimentKind::TrackerBound, "tracker-bound"},
    {ExperimentKind::Utility, "utility"},
    {ExperimentKind::L2, "l2"},
}};

constexpr std::array<std::pair<StrategySpec::Kind, const char*>, 5> kStrategyNames{{
    {StrategySpec::Kind::Zero, "zero"},
    {StrategySpec::Kind::Constant, "constant"},
    {StrategySpec::Kind::Sine, "sine"},
    {StrategySpec::Kind::Cosine, "cosine"},
    {StrategySpec::Kind::Blocks, "blocks"},
}};

std::string trim(std::string_view s) {
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return std::string(s);
}

double to_double(const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw std::invalid_argument("expected a finite number, got '" + text + "'");
    }
    return v;
}

template <class Int>
Int to_integer(const std::string& text) {
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

std::vector<double> to_list(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) {
        return out;
    }
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        out.push_back(to_double(trim(std::string_view(text).substr(start, comma - start))));
        if (comma == std::string::npos) {
            return out;
        }
        start = comma + 1;
    }
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + num(v[i]);
    }
    return out;
}

struct Field {
    const char* key;
    std::function<void(RunConfig&, const std::string&)> read;
    std::function<std::optional<std::string>(const RunConfig&)> write;
};

Field number(const char* key, double RunConfig::*member) {
    return {key, [member](RunConfig& c, const std::string& v) { c.*member = to_double(v); },
            [member](const RunConfig& c) -> std::optional<std::string> { return num(c.*member); }};
}

template <class Get>
Field number_at(const char* key, Get get) {
    return {key, [get](RunConfig& c, const std::string& v) { get(c) = to_double(v); },
            [get](const RunConfig& c) -> std::optional<std::string> {
                return num(get(c));
            }};
}

template <class Get>
Field optional_number_at(const char* key, Get get) {
    return {key, [get](RunConfig& c, const std::string& v) { get(c) = to_double(v); },
            [get](const RunConfig& c) -> std::optional<std::string> {
                const auto& v = get(c);
                return v ? std::optional<std::string>(num(*v)) : std::nullopt;
            }};
}

template <class Get>
Field list_at(const char* key, Get get) {
    return {key, [get](RunConfig& c, const std::string& v) { get(c) = to_list(v); },
            [get](const RunConfig& c) -> std::optional<std::string> {
                return list(get(c));
            }};
}

template <class Get>
Field coefficient_at(const char* key, Get get) {
    return {key, [get](RunConfig& c, const std::string& v) { get(c) = CoefficientSpec::parse(v); },
            [get](const RunConfig& c) -> std::optional<std::string> {
                return get(c).to_string();
            }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        {"experiment",
         [](RunConfig& c, const std::string& v) {
             const auto kind = parse_experiment(v);
             if (!kind) {
                 throw std::invalid_argument("unknown experiment '" + v + "'");
             }
             c.experiment = *kind;
         },
         [](const RunConfig& c) -> std::optional<std::string> { return to_string(c.experiment); }},
        number_at("horizon", [](auto& c) -> auto& { return c.grid.horizon; }),
        {"steps",
         [](RunConfig& c, const std::string& v) { c.grid.base_steps = to_integer<std::size_t>(v); },
         [](const RunConfig& c) -> std::optional<std::string> {
             return std::to_string(c.grid.base_steps);
         }},
        number_at("grid_scale", [](auto& c) -> auto& { return c.grid.scale; }),
        number("kappa", &RunConfig::kappa),
        {"kappa_ladder",
         [](RunConfig& c, const std::string& v) { c.kappa_ladder = to_list(v); },
         [](const RunConfig& c) -> std::optional<std::string> {
             return c.kappa_ladder ? std::optional<std::string>(list(*c.kappa_ladder))
                                   : std::nullopt;
         }},
        {"paths", [](RunConfig& c, const std::string& v) { c.mc.paths = to_integer<std::size_t>(v); },
         [](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.mc.paths); }},
        {"seed",
         [](RunConfig& c, const std::string& v) { c.mc.seed = to_integer<std::uint64_t>(v); },
         [](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.mc.seed); }},
        number("x0", &RunConfig::x0),
        number("budget", &RunConfig::budget),
        {"output", [](RunConfig& c, const std::string& v) { c.output = v; },
         [](const RunConfig& c) -> std::optional<std::string> { return c.output; }},

        coefficient_at("book.K_up", [](auto& c) -> auto& { return c.book.resilience_up; }),
        coefficient_at("book.K_down", [](auto& c) -> auto& { return c.book.resilience_down; }),
        coefficient_at("book.h_up", [](auto& c) -> auto& { return c.book.depth_up; }),
        coefficient_at("book.h_down", [](auto& c) -> auto& { return c.book.depth_down; }),
        coefficient_at("book.alpha_up", [](auto& c) -> auto& { return c.book.permanent_up; }),
        coefficient_at("book.alpha_down",
                       [](auto& c) -> auto& { return c.book.permanent_down; }),
        coefficient_at("book.eps_up", [](auto& c) -> auto& { return c.book.spread_up; }),
        coefficient_at("book.eps_down", [](auto& c) -> auto& { return c.book.spread_down; }),

        number_at("fundamental.s0", [](auto& c) -> auto& { return c.fundamental.initial; }),
        number_at("fundamental.mu", [](auto& c) -> auto& { return c.fundamental.drift; }),
        number_at("fundamental.sigma",
                  [](auto& c) -> auto& { return c.fundamental.volatility; }),

        {"strategy.kind",
         [](RunConfig& c, const std::string& v) {
             const auto it = std::find_if(kStrategyNames.begin(), kStrategyNames.end(),
                                          [&](const auto& p) { return v == p.second; });
             if (it == kStrategyNames.end()) {
                 throw std::invalid_argument("unknown strategy kind '" + v + "'");
             }
             c.strategy.kind = it->first;
         },
         [](const RunConfig& c) -> std::optional<std::string> {
             for (const auto& [kind, name] : kStrategyNames) {
                 if (kind == c.strategy.kind) {
                     return name;
                 }
             }
             return std::nullopt;
         }},
        number_at("strategy.amplitude", [](auto& c) -> auto& { return c.strategy.amplitude; }),
        number_at("strategy.frequency", [](auto& c) -> auto& { return c.strategy.frequency; }),
        number_at("strategy.phase", [](auto& c) -> auto& { return c.strategy.phase; }),
        number_at("strategy.feedback", [](auto& c) -> auto& { return c.strategy.feedback; }),
        number_at("strategy.rate_bound",
                  [](auto& c) -> auto& { return c.strategy.rate_bound; }),
        list_at("strategy.block_times", [](auto& c) -> auto& { return c.strategy.block_times; }),
        list_at("strategy.block_sizes", [](auto& c) -> auto& { return c.strategy.block_sizes; }),
        optional_number_at("strategy.latest", [](auto& c) -> auto& { return c.strategy.latest; }),

        number("lemma.window", &RunConfig::lemma_window),

        number_at("tracker.drift", [](auto& c) -> auto& { return c.tracker.drift; }),
        number_at("tracker.vol", [](auto& c) -> auto& { return c.tracker.volatility; }),
        number_at("tracker.bound", [](auto& c) -> auto& { return c.tracker.bound; }),
        number_at("tracker.speed", [](auto& c) -> auto& { return c.tracker.speed; }),
        number_at("tracker.speed_lower",
                  [](auto& c) -> auto& { return c.tracker.speed_lower; }),
        number_at("tracker.initial", [](auto& c) -> auto& { return c.tracker.initial; }),

        number_at("utility.gamma", [](auto& c) -> auto& { return c.utility.risk_aversion; }),
        list_at("utility.multipliers", [](auto& c) -> auto& { return c.utility.multipliers; }),
        number_at("utility.initial_position",
                  [](auto& c) -> auto& { return c.utility.initial_position; }),
        {"utility.bootstrap",
         [](RunConfig& c, const std::string& v) {
             c.utility.bootstrap = to_integer<std::size_t>(v);
         },
         [](const RunConfig& c) -> std::optional<std::string> {
             return std::to_string(c.utility.bootstrap);
         }},

        number_at("l2.bound", [](auto& c) -> auto& { return c.l2.bound; }),
        number_at("l2.resilience_lower",
                  [](auto& c) -> auto& { return c.l2.resilience_lower; }),

        optional_number_at("gate.max_slope", [](auto& c) -> auto& { return c.gates.max_slope; }),
        number_at("gate.tolerance", [](auto& c) -> auto& { return c.gates.tolerance; }),
        optional_number_at("gate.min_positive_fraction",
                           [](auto& c) -> auto& { return c.gates.min_positive_fraction; }),
    };
    return table;
}

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw ValidationError(message);
    }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    for (const auto& [k, name] : kExperimentNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment(const std::string& name) {
    for (const auto& [k, n] : kExperimentNames) {
        if (name == n) {
            return k;
        }
    }
    return std::nullopt;
}

KappaLadder RunConfig::ladder() const {
    if (kappa_ladder) {
        return KappaLadder(*kappa_ladder);
    }
    switch (experiment) {
        case ExperimentKind::TrackerBound: return KappaLadder::geometric(16.0, 7);
        case ExperimentKind::Utility: return KappaLadder({64.0, 256.0, 1024.0});
        default: return KappaLadder::geometric(16.0, 9);
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line_no, "", "expected 'key = value'");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const auto& table = fields();
        const auto it = std::find_if(table.begin(), table.end(),
                                     [&](const Field& f) { return key == f.key; });
        if (it == table.end()) {
            throw ParseError(line_no, key, "unknown key");
        }
        if (!seen.insert(key).second) {
            throw ParseError(line_no, key, "duplicate key");
        }
        try {
            it->read(config, value);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, key, e.what());
        }
    }
    validate_config(config);
    return config;
}

std::string serialize(const RunConfig& config) {
    std::string out;
    for (const Field& f : fields()) {
        if (const auto v = f.write(config)) {
            out += fmt::format("{} = {}\n", f.key, *v);
        }
    }
    return out;
}

void validate_config(const RunConfig& c) {
    require(c.grid.horizon > 0.0, "horizon must be positive");
    require(c.grid.base_steps > 0, "steps must be at least 1");
    require(c.grid.scale > 0.0, "grid_scale must be positive");
    require(c.kappa > 0.0, "kappa must be positive");
    require(c.mc.paths > 0, "paths must be at least 1");
    require(c.budget > 0.0, "budget must be positive");
    require(!c.output.empty(), "output must not be empty");
    require(c.fundamental.volatility >= 0.0, "fundamental.sigma must be non-negative");
    require(c.lemma_window > 0.0, "lemma.window must be positive");

    KappaLadder ladder({1.0});
    try {
        ladder = c.ladder();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("kappa_ladder: ") + e.what());
    }

    // Coefficients are checked on the coarsest and finest grids in play.
    const double kmin = std::min(ladder.values().front(), c.kappa);
    const double kmax = std::max(ladder.max(), c.kappa);
    for (double k : {kmin, kmax}) {
        const TimeGrid grid = c.grid.grid_for(k);
        try {
            (void)c.book.instantiate(grid, k);
        } catch (const std::exception& e) {
            throw ValidationError(std::string("book: ") + e.what());
        }
        try {
            (void)c.strategy.build(grid, constant_path(grid, c.fundamental.initial));
        } catch (const std::exception& e) {
            throw ValidationError(std::string("strategy: ") + e.what());
        }
    }

    const bool uses_rates = c.strategy.kind != StrategySpec::Kind::Blocks;
    switch (c.experiment) {
        case ExperimentKind::Theorem1:
        case ExperimentKind::Remark1:
        case ExperimentKind::L2:
            require(uses_rates, "convergence experiments need a rate strategy, not blocks");
            require(c.l2.bound > 0.0 && c.l2.resilience_lower > 0.0,
                    "l2.bound and l2.resilience_lower must be positive");
            break;
        case ExperimentKind::LemmaJump:
            require(!uses_rates && !c.strategy.block_times.empty(),
                    "lemma-jump needs strategy.kind = blocks with at least one block");
            break;
        case ExperimentKind::TrackerBound:
            require(c.mc.paths >= 2, "tracker-bound needs at least 2 paths");
            require(c.tracker.volatility >= 0.0, "tracker.vol must be non-negative");
            require(c.tracker.bound > 0.0, "tracker.bound must be positive");
            require(c.tracker.speed_lower > 0.0, "tracker.speed_lower must be positive");
            require(c.tracker.speed >= c.tracker.speed_lower,
                    "tracker.speed must be at least tracker.speed_lower");
            break;
        case ExperimentKind::Utility:
            require(c.utility.risk_aversion > 0.0, "utility.gamma must be positive");
            require(c.fundamental.volatility > 0.0, "utility needs fundamental.sigma > 0");
            require(std::all_of(c.utility.multipliers.begin(), c.utility.multipliers.end(),
                                [](double m) { return m > 0.0; }),
                    "utility.multipliers must be positive");
            require(std::find(c.utility.multipliers.begin(), c.utility.multipliers.end(), 1.0) !=
                        c.utility.multipliers.end(),
                    "utility.multipliers must contain 1");
            require(c.book.resilience_up == c.book.resilience_down &&
                        c.book.depth_up == c.book.depth_down &&
                        c.book.permanent_up == c.book.permanent_down &&
                        c.book.spread_up == c.book.spread_down,
                    "utility needs a symmetric book");
            require(c.book.permanent_up == CoefficientSpec::constant(0.0) &&
                        c.book.spread_up == CoefficientSpec::constant(0.0),
                    "utility needs alpha = 0 and eps = 0");
            break;
        case ExperimentKind::Simulate:
            break;
    }
    if (c.gates.min_positive_fraction) {
        require(*c.gates.min_positive_fraction >= 0.0 && *c.gates.min_positive_fraction <= 1.0,
                "gate.min_positive_fraction must lie in [0,1]");
    }
    require(c.gates.tolerance >= 0.0, "gate.tolerance must be non-negative");
}

std::string config_hash(const RunConfig& config) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : serialize(config)) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return fmt::format("{:016x}", h);
}

ExperimentSetup experiment_setup(const RunConfig& c) {
    ExperimentSetup s{c.grid, c.book, c.fundamental, c.strategy, c.ladder(), c.mc, c.x0};
    return s;
}

TrackerBoundSetup tracker_bound_setup(const RunConfig& c) {
    TrackerBoundSetup s;
    s.grid = c.grid;
    s.drift = c.tracker.drift;
    s.volatility = c.tracker.volatility;
    s.coefficient_bound = c.tracker.bound;
    s.speed = c.tracker.speed;
    s.speed_lower = c.tracker.speed_lower;
    s.initial_target = c.tracker.initial;
    s.ladder = c.ladder();
    s.mc = c.mc;
    return s;
}

UtilitySetup utility_setup(const RunConfig& c) {
    UtilitySetup s;
    s.base = experiment_setup(c);
    s.risk_aversion = c.utility.risk_aversion;
    s.multipliers = c.utility.multipliers;
    s.kappa = c.kappa;
    s.initial_position = c.utility.initial_position;
    s.bootstrap_resamples = c.utility.bootstrap;
    return s;
}

}  // namespace lobres
