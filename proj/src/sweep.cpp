#include "egn/sweep.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "egn/equilibria.hpp"

namespace egn {

Rational Rational::of(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num < 0) throw std::invalid_argument("rational: negative values not used here");
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

Rational midpoint(Rational a, Rational b) {
    // Degrees are small, so these products fit in 64 bits; verify anyway.
    const __int128 num = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    const __int128 den = static_cast<__int128>(2) * a.den * b.den;
    const std::int64_t n64 = static_cast<std::int64_t>(num);
    const std::int64_t d64 = static_cast<std::int64_t>(den);
    if (num != n64 || den != d64) throw std::overflow_error("rational midpoint overflow");
    return Rational::of(n64, d64);
}

std::vector<Rational> breakpoints(const Graph& g, BreakpointMode mode) {
    std::set<Rational> points;  // Rational has operator<, set keeps them sorted/unique
    points.insert(Rational::integer(0));
    const int n = g.num_vertices();
    if (mode == BreakpointMode::DegreeRatios) {
        for (int v = 0; v < n; ++v) {
            for (int u = 0; u < n; ++u) {
                if (g.degree(u) == 0) continue;
                if (g.degree(v) == 0) continue;
                points.insert(Rational::of(g.degree(v), g.degree(u)));
            }
        }
    } else {
        for (int v = 0; v < n; ++v) {
            const int d = g.degree(v);
            for (int k = 1; k < d; ++k) points.insert(Rational::of(k, d - k));
        }
    }
    return {points.begin(), points.end()};
}

PayoffMatrix canonical_matrix(SweepGameClass cls, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("canonical matrix needs r > 0");
    if (cls == SweepGameClass::Coordination) return {r, 0.0, 0.0, 1.0};
    return {-r, 0.0, 0.0, -1.0};
}

std::string SweepRow::label() const {
    if (kind == Kind::Breakpoint) return lo.str();
    return "(" + lo.str() + "," + (unbounded ? "inf" : hi.str()) + ")";
}

namespace {

SweepRow classified_row(const Graph& g, SweepGameClass cls, SweepRow row, int jobs) {
    const EgnInstance inst(g, canonical_matrix(cls, row.sample.value()));
    const ClassCounts counts = count_classified(inst, jobs);
    row.sne_count = counts.strict;
    row.ne_count = counts.nash();
    return row;
}

}  // namespace

SweepReport sweep_sne_counts(const Graph& g, SweepGameClass cls,
                             const std::vector<Rational>& bp, int jobs) {
    if (bp.empty() || !(bp.front() == Rational::integer(0)))
        throw std::invalid_argument("sweep: breakpoint list must start at 0");
    for (std::size_t i = 1; i < bp.size(); ++i)
        if (!(bp[i - 1] < bp[i]))
            throw std::invalid_argument("sweep: breakpoints must be strictly ascending");

    SweepReport rep;
    rep.game_class = cls;
    rep.points = bp;
    for (std::size_t i = 1; i < bp.size(); ++i) {
        SweepRow interval;
        interval.kind = SweepRow::Kind::Interval;
        interval.lo = bp[i - 1];
        interval.hi = bp[i];
        interval.sample = midpoint(bp[i - 1], bp[i]);
        rep.rows.push_back(classified_row(g, cls, interval, jobs));

        SweepRow point;
        point.kind = SweepRow::Kind::Breakpoint;
        point.lo = bp[i];
        point.sample = bp[i];
        rep.rows.push_back(classified_row(g, cls, point, jobs));
    }
    SweepRow tail;
    tail.kind = SweepRow::Kind::Interval;
    tail.lo = bp.back();
    tail.unbounded = true;
    tail.sample = Rational::of(bp.back().num + bp.back().den, bp.back().den);  // lo + 1
    rep.rows.push_back(classified_row(g, cls, tail, jobs));
    return rep;
}

std::string render_sweep_csv(const SweepReport& rep) {
    std::ostringstream out;
    out << "kind,r_label,r_sample,sne_count,ne_count\n";
    out.precision(17);
    for (const SweepRow& row : rep.rows) {
        out << (row.kind == SweepRow::Kind::Interval ? "interval" : "breakpoint") << ","
            << "\"" << row.label() << "\"," << row.sample.value() << "," << row.sne_count
            << "," << row.ne_count << "\n";
    }
    return out.str();
}

std::string render_sweep_table(const SweepReport& rep) {
    std::size_t width = 1;
    for (const SweepRow& row : rep.rows) width = std::max(width, row.label().size());
    std::ostringstream out;
    std::string head = "R";
    head.resize(width, ' ');
    out << head << "  SNE  NE\n";
    for (const SweepRow& row : rep.rows) {
        std::string label = row.label();
        label.resize(width, ' ');
        out << label << "  " << row.sne_count << "    " << row.ne_count << "\n";
    }
    return out.str();
}

}  // namespace egn
