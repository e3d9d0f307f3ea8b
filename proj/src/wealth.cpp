#include "lobres/wealth.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace lobres {

namespace {

Side hit_side(double amount) { return amount > 0.0 ? Side::Ask : Side::Bid; }

void check_grids(const BookParams& book, const Strategy& strategy, const SampledPath& fundamental) {
    if (!(book.grid() == strategy.grid()) || !(book.grid() == fundamental.grid())) {
        throw std::invalid_argument("grid mismatch: book, strategy and fundamental must share a grid");
    }
}

struct Ledger {
    explicit Ledger(std::size_t n)
        : gain(n), spread(n), impact(n), block(n), shift(n) {}

    std::vector<double> gain, spread, impact, block, shift;
    double g = 0.0, s = 0.0, m = 0.0, b = 0.0, p = 0.0;

    void record(std::size_t i) {
        gain[i] = g;
        spread[i] = s;
        impact[i] = m;
        block[i] = b;
        shift[i] = p;
    }

    WealthPath finish(const TimeGrid& grid, double x0) {
        std::vector<double> x(gain.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = x0 + gain[i] - spread[i] - impact[i] - block[i];
        }
        return WealthPath{SampledPath(grid, std::move(x)),      SampledPath(grid, std::move(gain)),
                          SampledPath(grid, std::move(spread)), SampledPath(grid, std::move(impact)),
                          SampledPath(grid, std::move(block)),  SampledPath(grid, std::move(shift))};
    }
};

// Position-weighted increments of the reference price over step i. The
// position is linear in time on the step and the reference price is taken
// linear between its post-block value at t_i and pre-block value at t_{i+1}.
void accrue_step_gain(Ledger& led, const ReferencePricePath& ref, const BookParams& book,
                      std::size_t i, double phi, double phi_next, double rate) {
    const double mean_position = 0.5 * (phi + phi_next);
    led.g += mean_position * (ref.pre_jump[i + 1] - ref.values[i]);
    led.p += mean_position * permanent_shift(book, i, rate) * book.grid().spacing();
}

}  // namespace

WealthPath ow_wealth(const BookParams& book, const Strategy& strategy,
                     const SampledPath& fundamental, double x0) {
    check_grids(book, strategy, fundamental);
    const TimeGrid& g = book.grid();
    const double dt = g.spacing();
    const SpreadPaths spreads = evolve_spreads(book, strategy);
    const ReferencePricePath ref = reference_price(book, strategy, fundamental);

    Ledger led(g.size());
    double phi = strategy.initial_position();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (const double theta = strategy.block_at(i); theta != 0.0) {
            const Side side = hit_side(theta);
            const double jump = ref.values[i] - ref.pre_jump[i];
            led.g += phi * jump;
            led.p += phi * jump;
            led.s += book.base_spread(side, i) * std::abs(theta);
            led.m += spreads.side(side).excess_pre[i] * std::abs(theta);
            led.b += (0.5 - book.permanent(side, i)) / book.depth(side, i) * theta * theta;
            phi += theta;
        }
        led.record(i);
        if (i == g.steps()) {
            break;
        }
        const double c = strategy.step_rate(i);
        const double phi_next = phi + c * dt;
        accrue_step_gain(led, ref, book, i, phi, phi_next, c);
        if (c != 0.0) {
            const Side side = hit_side(c);
            const double decay = book.kappa() * book.resilience(side, i);
            const ExcessStep step = advance_excess(spreads.side(side).excess[i],
                                                   excess_input(book, side, i, c), decay, dt);
            led.s += book.base_spread(side, i) * std::abs(c) * dt;
            led.m += std::abs(c) * step.integral;
        }
        phi = phi_next;
    }
    return led.finish(g, x0);
}

SafeAccountPath safe_account(const BookParams& book, const Strategy& strategy,
                             const SampledPath& fundamental, double x0) {
    check_grids(book, strategy, fundamental);
    const TimeGrid& g = book.grid();
    const double dt = g.spacing();
    const SpreadPaths spreads = evolve_spreads(book, strategy);
    const ReferencePricePath ref = reference_price(book, strategy, fundamental);

    std::vector<double> cash(g.size()), position(g.size());
    double phi = strategy.initial_position();
    double account = x0 - phi * ref.pre_jump[0];
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (const double theta = strategy.block_at(i); theta != 0.0) {
            const Side side = hit_side(theta);
            // Average execution price: pre-trade quote plus half the quote move.
            const double sign = theta > 0.0 ? 1.0 : -1.0;
            const double quote = ref.pre_jump[i] + sign * spreads.side(side).total_pre[i];
            const double half_move = sign * std::abs(theta) / (2.0 * book.depth(side, i));
            account -= (quote + half_move) * theta;
            phi += theta;
        }
        cash[i] = account;
        position[i] = phi;
        if (i == g.steps()) {
            break;
        }
        const double c = strategy.step_rate(i);
        if (c != 0.0) {
            const Side side = hit_side(c);
            const double decay = book.kappa() * book.resilience(side, i);
            const ExcessStep step = advance_excess(spreads.side(side).excess[i],
                                                   excess_input(book, side, i, c), decay, dt);
            const double mid_reference = 0.5 * (ref.values[i] + ref.pre_jump[i + 1]);
            account -= c * dt * mid_reference;
            account -= std::abs(c) * (book.base_spread(side, i) * dt + step.integral);
        }
        phi += c * dt;
    }
    return SafeAccountPath{SampledPath(g, std::move(cash)), SampledPath(g, std::move(position)),
                           ref.values};
}

WealthPath ac_wealth(const BookParams& book, const Strategy& strategy,
                     const SampledPath& fundamental, double x0) {
    check_grids(book, strategy, fundamental);
    if (strategy.has_blocks()) {
        throw std::invalid_argument(
            "reduced-form wealth is defined for absolutely continuous strategies only");
    }
    const TimeGrid& g = book.grid();
    const double dt = g.spacing();
    const ReferencePricePath ref = reference_price(book, strategy, fundamental);

    Ledger led(g.size());
    double phi = strategy.initial_position();
    for (std::size_t i = 0; i < g.size(); ++i) {
        led.record(i);
        if (i == g.steps()) {
            break;
        }
        const double c = strategy.step_rate(i);
        const double phi_next = phi + c * dt;
        accrue_step_gain(led, ref, book, i, phi, phi_next, c);
        if (c != 0.0) {
            const Side side = hit_side(c);
            const double lambda = (1.0 - book.permanent(side, i)) /
                                  (book.kappa() * book.resilience(side, i) * book.depth(side, i));
            led.s += book.base_spread(side, i) * std::abs(c) * dt;
            led.m += lambda * c * c * dt;
        }
        phi = phi_next;
    }
    return led.finish(g, x0);
}

void write_wealth_csv(std::ostream& out, const WealthPath& path) {
    const TimeGrid& g = path.wealth.grid();
    out << "t,X,gain,spread_cost,impact_cost,block_cost,permanent_shift\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", g.time(i),
                           path.wealth[i], path.gain[i], path.spread_cost[i], path.impact_cost[i],
                           path.block_cost[i], path.permanent_shift[i]);
    }
}

}  // namespace lobres
