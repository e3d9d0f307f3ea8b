#include "lobres/order_book.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lobres {

namespace {

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* what) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string("grid mismatch: ") + what);
    }
}

void check_positive(const SampledPath& p, const char* name) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0)) {
            throw std::invalid_argument(std::string(name) + " must be positive (index " +
                                        std::to_string(i) + ")");
        }
    }
}

void check_nonnegative(const SampledPath& p, const char* name) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] >= 0.0)) {
            throw std::invalid_argument(std::string(name) + " must be nonnegative (index " +
                                        std::to_string(i) + ")");
        }
    }
}

void check_permanent(const SampledPath& p, const char* name) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] >= 0.0 && p[i] <= 0.5)) {
            throw std::invalid_argument(std::string(name) + " must lie in [0,1/2] (index " +
                                        std::to_string(i) + ")");
        }
    }
}

// (1 - exp(-x)) / x
double phi1(double x) {
    if (x < 1e-8) {
        return 1.0 - 0.5 * x;
    }
    return -std::expm1(-x) / x;
}

// (exp(-x) - 1 + x) / x^2
double phi2(double x) {
    if (x < 1e-2) {
        return 0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0 + x * x * x * x / 720.0;
    }
    return (std::expm1(-x) + x) / (x * x);
}

Side opposite(Side s) { return s == Side::Ask ? Side::Bid : Side::Ask; }

}  // namespace

BookParams::BookParams(double kappa, BookCoefficients coefficients)
    : kappa_(kappa), c_(std::move(coefficients)) {
    if (!(kappa_ > 0.0) || !std::isfinite(kappa_)) {
        throw std::invalid_argument("resilience scale kappa must be positive");
    }
    const TimeGrid& g = c_.resilience_up.grid();
    for (const SampledPath* p : {&c_.resilience_down, &c_.depth_up, &c_.depth_down,
                                 &c_.permanent_up, &c_.permanent_down, &c_.spread_up,
                                 &c_.spread_down}) {
        require_same_grid(g, p->grid(), "book coefficients");
    }
    check_positive(c_.resilience_up, "K_up");
    check_positive(c_.resilience_down, "K_down");
    check_positive(c_.depth_up, "h_up");
    check_positive(c_.depth_down, "h_down");
    check_permanent(c_.permanent_up, "alpha_up");
    check_permanent(c_.permanent_down, "alpha_down");
    check_nonnegative(c_.spread_up, "eps_up");
    check_nonnegative(c_.spread_down, "eps_down");
}

bool BookParams::symmetric() const {
    for (std::size_t i = 0; i < grid().size(); ++i) {
        if (c_.resilience_up[i] != c_.resilience_down[i] || c_.depth_up[i] != c_.depth_down[i]) {
            return false;
        }
    }
    return true;
}

BookParams constant_book(const TimeGrid& grid, double kappa, double resilience, double depth,
                         double permanent, double spread) {
    return BookParams(kappa, BookCoefficients{
                                 constant_path(grid, resilience), constant_path(grid, resilience),
                                 constant_path(grid, depth), constant_path(grid, depth),
                                 constant_path(grid, permanent), constant_path(grid, permanent),
                                 constant_path(grid, spread), constant_path(grid, spread)});
}

ExcessStep advance_excess(double excess, double input, double decay, double dt) {
    const double x = decay * dt;
    const double q = std::exp(-x);
    const double p1 = phi1(x);
    return ExcessStep{excess * q + input * dt * p1, excess * dt * p1 + input * dt * dt * phi2(x)};
}

double excess_input(const BookParams& book, Side side, std::size_t i, double amount) {
    if (amount == 0.0) {
        return 0.0;
    }
    // Trades on `side` itself move it by (1 - alpha)/h; trades on the other
    // side widen it by alpha/h of that side.
    const Side hit = amount > 0.0 ? Side::Ask : Side::Bid;
    const double size = std::abs(amount);
    if (hit == side) {
        return (1.0 - book.permanent(side, i)) / book.depth(side, i) * size;
    }
    return book.permanent(opposite(side), i) / book.depth(opposite(side), i) * size;
}

double permanent_shift(const BookParams& book, std::size_t i, double amount) {
    if (amount > 0.0) {
        return book.permanent(Side::Ask, i) / book.depth(Side::Ask, i) * amount;
    }
    if (amount < 0.0) {
        return book.permanent(Side::Bid, i) / book.depth(Side::Bid, i) * amount;
    }
    return 0.0;
}

SpreadPaths evolve_spreads(const BookParams& book, const Strategy& strategy) {
    const TimeGrid& g = book.grid();
    require_same_grid(g, strategy.grid(), "book vs strategy");
    const double dt = g.spacing();

    auto side_path = [&](Side side) {
        std::vector<double> pre(g.size()), post(g.size());
        double e = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            pre[i] = e;
            e += excess_input(book, side, i, strategy.block_at(i));
            post[i] = e;
            if (i < g.steps()) {
                const double decay = book.kappa() * book.resilience(side, i);
                e = advance_excess(e, excess_input(book, side, i, strategy.step_rate(i)), decay, dt)
                        .end;
            }
        }
        std::vector<double> total(g.size()), total_pre(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            total[i] = book.base_spread(side, i) + post[i];
            total_pre[i] = book.base_spread(side, i) + pre[i];
        }
        return SideSpread{SampledPath(g, std::move(total)), SampledPath(g, std::move(total_pre)),
                          SampledPath(g, std::move(post)), SampledPath(g, std::move(pre))};
    };
    return SpreadPaths{side_path(Side::Ask), side_path(Side::Bid)};
}

ReferencePricePath reference_price(const BookParams& book, const Strategy& strategy,
                                   const SampledPath& fundamental) {
    const TimeGrid& g = book.grid();
    require_same_grid(g, strategy.grid(), "book vs strategy");
    require_same_grid(g, fundamental.grid(), "book vs fundamental");
    const double dt = g.spacing();
    std::vector<double> post(g.size()), pre(g.size()), shift(g.size());
    double p = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        pre[i] = fundamental[i] + p;
        p += permanent_shift(book, i, strategy.block_at(i));
        shift[i] = p;
        post[i] = fundamental[i] + p;
        if (i < g.steps()) {
            p += permanent_shift(book, i, strategy.step_rate(i)) * dt;
        }
    }
    return ReferencePricePath{SampledPath(g, std::move(post)), SampledPath(g, std::move(pre)),
                              SampledPath(g, std::move(shift))};
}

SampledPath scaled_excess_spread(const BookParams& book, const Strategy& strategy, Side side) {
    if (strategy.has_blocks()) {
        throw std::invalid_argument("scaled excess spread requires a strategy without blocks");
    }
    const SpreadPaths spreads = evolve_spreads(book, strategy);
    const SampledPath& e = spreads.side(side).excess;
    std::vector<double> v(e.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = book.kappa() * e[i];
    }
    return SampledPath(e.grid(), std::move(v));
}

}  // namespace lobres
