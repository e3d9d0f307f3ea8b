#pragma once

#include "lobres/paths.hpp"
#include "lobres/strategy.hpp"

namespace lobres {

enum class Side { Ask, Bid };

// Order-book coefficient paths. "up" refers to the ask side (hit by buys),
// "down" to the bid side (hit by sells).
struct BookCoefficients {
    SampledPath resilience_up;    // K_up
    SampledPath resilience_down;  // K_down
    SampledPath depth_up;         // h_up, shares per unit price
    SampledPath depth_down;       // h_down
    SampledPath permanent_up;     // alpha_up in [0, 1/2]
    SampledPath permanent_down;   // alpha_down in [0, 1/2]
    SampledPath spread_up;        // base ask spread eps_up
    SampledPath spread_down;      // base bid spread eps_down
};

// Block-shaped book with resilience kappa * K. Construction validates every
// coefficient pointwise and requires a common grid.
class BookParams {
public:
    BookParams(double kappa, BookCoefficients coefficients);

    double kappa() const noexcept { return kappa_; }
    const BookCoefficients& coefficients() const noexcept { return c_; }
    const TimeGrid& grid() const noexcept { return c_.resilience_up.grid(); }

    double resilience(Side s, std::size_t i) const {
        return s == Side::Ask ? c_.resilience_up[i] : c_.resilience_down[i];
    }
    double depth(Side s, std::size_t i) const {
        return s == Side::Ask ? c_.depth_up[i] : c_.depth_down[i];
    }
    double permanent(Side s, std::size_t i) const {
        return s == Side::Ask ? c_.permanent_up[i] : c_.permanent_down[i];
    }
    double base_spread(Side s, std::size_t i) const {
        return s == Side::Ask ? c_.spread_up[i] : c_.spread_down[i];
    }

    // K_up == K_down and h_up == h_down pointwise.
    bool symmetric() const;

    BookParams with_kappa(double kappa) const { return BookParams(kappa, c_); }

private:
    double kappa_;
    BookCoefficients c_;
};

// Book with constant coefficients on both sides.
BookParams constant_book(const TimeGrid& grid, double kappa, double resilience, double depth,
                         double permanent, double spread);

// One side of the book. `total` holds the spread right after any block at
// each grid point; `total_pre` the value just before it (eps_{t-}).
struct SideSpread {
    SampledPath total;
    SampledPath total_pre;
    SampledPath excess;      // total - base
    SampledPath excess_pre;  // total_pre - base
};

struct SpreadPaths {
    SideSpread ask;
    SideSpread bid;

    const SideSpread& side(Side s) const { return s == Side::Ask ? ask : bid; }
};

struct ReferencePricePath {
    SampledPath values;     // S^phi right after blocks
    SampledPath pre_jump;   // S^phi just before blocks
    SampledPath shift;      // cumulative permanent impact, values - fundamental
};

// Exact solution of de = (-a e + g) dt over one step of length dt with
// frozen decay a > 0 and input g.
struct ExcessStep {
    double end;       // e(dt)
    double integral;  // int_0^dt e(s) ds
};
ExcessStep advance_excess(double excess, double input, double decay, double dt);

// Impact a signed trade of size `amount` (block size, or rate) adds to the
// excess spread on `side` at grid point i.
double excess_input(const BookParams& book, Side side, std::size_t i, double amount);

// Permanent shift per unit of signed trade at grid point i (alpha / h of the
// side that is hit).
double permanent_shift(const BookParams& book, std::size_t i, double amount);

SpreadPaths evolve_spreads(const BookParams& book, const Strategy& strategy);

ReferencePricePath reference_price(const BookParams& book, const Strategy& strategy,
                                   const SampledPath& fundamental);

// kappa * (eps^phi - eps) on one side; strategy must be free of blocks.
SampledPath scaled_excess_spread(const BookParams& book, const Strategy& strategy, Side side);

}  // namespace lobres
