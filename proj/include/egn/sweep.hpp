#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egn/game.hpp"
#include "egn/graph.hpp"

namespace egn {

// Non-negative rational in lowest terms. Kept exact so breakpoint ordering
// and interval midpoints never suffer float rounding.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational of(std::int64_t num, std::int64_t den);
    static Rational integer(std::int64_t n) { return of(n, 1); }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;  // "0", "2", "3/2"

    bool operator==(const Rational&) const = default;
    bool operator<(const Rational& o) const;
};

Rational midpoint(Rational a, Rational b);

enum class BreakpointMode {
    // {0} plus every degree ratio d_v/d_u. Provided for presentation
    // purposes; not sufficient in general (see ExactThresholds).
    DegreeRatios,
    // {0} plus every value k/(d_v-k) a neighbor-count ratio can take;
    // contains every R at which any vertex condition can change. Default.
    ExactThresholds,
};

std::vector<Rational> breakpoints(const Graph& g, BreakpointMode mode);

enum class SweepGameClass { Coordination, AntiCoordination };

// [[r,0],[0,1]] or [[-r,0],[0,-1]]: |sigma_d| = 1 and ratio exactly r.
// Classification of pure profiles with a common matrix depends only on the
// ratio, so these stand in for any matrix with the same r. Requires r > 0.
PayoffMatrix canonical_matrix(SweepGameClass cls, double r);

struct SweepRow {
    enum class Kind { Interval, Breakpoint };

    Kind kind = Kind::Interval;
    Rational lo;              // interval start, or the breakpoint itself
    Rational hi;              // interval end; ignored for breakpoints/unbounded
    bool unbounded = false;   // final (lo, inf) interval
    Rational sample;          // R value actually classified
    std::int64_t sne_count = 0;
    std::int64_t ne_count = 0;  // includes the strict ones

    std::string label() const;  // "(1,3/2)", "3/2", "(2,inf)"
};

struct SweepReport {
    SweepGameClass game_class = SweepGameClass::Coordination;
    std::vector<Rational> points;  // breakpoints used, ascending, starting at 0
    std::vector<SweepRow> rows;    // ascending R, alternating interval/breakpoint
};

// Classify all pure profiles at one sample per open interval (the exact
// midpoint; largest breakpoint + 1 for the unbounded tail) and at each
// breakpoint > 0. jobs <= 0 uses all threads.
SweepReport sweep_sne_counts(const Graph& g, SweepGameClass cls,
                             const std::vector<Rational>& bp, int jobs = 0);

// kind,r_label,r_sample,sne_count,ne_count
std::string render_sweep_csv(const SweepReport& rep);
std::string render_sweep_table(const SweepReport& rep);

}  // namespace egn
