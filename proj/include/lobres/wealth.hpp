#pragma once

#include <iosfwd>

#include "lobres/order_book.hpp"
#include "lobres/paths.hpp"
#include "lobres/strategy.hpp"

namespace lobres {

// Wealth marked at the reference price, with cumulative cost components.
// At every grid point (after any block there):
//   wealth = x0 + gain - spread_cost - impact_cost - block_cost
// `permanent_shift` is the part of `gain` earned on the trader's own
// permanent impact; it is already included in `gain`.
struct WealthPath {
    SampledPath wealth;
    SampledPath gain;
    SampledPath spread_cost;   // base spreads paid on turnover
    SampledPath impact_cost;   // excess spreads (OW) or quadratic costs (AC)
    SampledPath block_cost;    // (1/2 - alpha)/h d[phi] terms
    SampledPath permanent_shift;

    double terminal() const { return wealth.back(); }
};

struct SafeAccountPath {
    SampledPath cash;       // phi^0
    SampledPath position;   // phi after blocks
    SampledPath reference;  // S^phi after blocks

    // phi^0 + phi S^phi at grid point i.
    double marked_wealth(std::size_t i) const { return cash[i] + position[i] * reference[i]; }
};

// Block-shaped book wealth. Blocks are charged at the pre-jump spread and
// position; trading over a step pays the exact integral of the spread under
// the frozen-coefficient dynamics. The trading gain integrates the position
// against the reference price exactly along the linear interpolant of the
// sampled fundamental (so it carries no discrete cross-variation term).
WealthPath ow_wealth(const BookParams& book, const Strategy& strategy,
                     const SampledPath& fundamental, double x0);

// Safe account from per-trade execution prices: each purchase pays the
// reference price plus the pre-trade spread plus half of its own impact.
SafeAccountPath safe_account(const BookParams& book, const Strategy& strategy,
                             const SampledPath& fundamental, double x0);

// Reduced-form wealth with quadratic costs lambda = (1 - alpha)/(kappa K h)
// and permanent impact gamma = alpha / h. Strategies with blocks are rejected.
WealthPath ac_wealth(const BookParams& book, const Strategy& strategy,
                     const SampledPath& fundamental, double x0);

// Columns: t,X,gain,spread_cost,impact_cost,block_cost,permanent_shift
void write_wealth_csv(std::ostream& out, const WealthPath& path);

}  // namespace lobres
