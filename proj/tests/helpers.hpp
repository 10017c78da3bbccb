#pragma once

#include <random>
#include <vector>

#include "egn/game.hpp"
#include "egn/graph.hpp"

// Deterministic generators shared by the property tests. Payoff entries come
// from the half-unit grid, so sigmas, eigenvalues, and payoff sums are all
// exactly representable and oracle comparisons can demand bitwise equality.
namespace testutil {

inline int pick(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Multiple of 0.5 in [-3, 3].
inline double grid_value(std::mt19937_64& rng) { return 0.5 * pick(rng, -6, 6); }

// Positive multiple of 0.5 in [0.5, 3].
inline double grid_positive(std::mt19937_64& rng) { return 0.5 * pick(rng, 1, 6); }

inline egn::Graph random_connected_graph(std::mt19937_64& rng, int min_n = 2, int max_n = 12) {
    const int n = pick(rng, min_n, max_n);
    // Densities kept above the connectivity threshold so the generator's
    // resampling loop terminates quickly.
    double avg = 1.0;
    if (n > 2 && n <= 4) avg = 1.0 + 0.5 * pick(rng, 0, 2);
    if (n > 4) avg = 2.0 + 0.5 * pick(rng, 0, 2 * (std::min(n - 1, 6) - 2));
    return egn::Graph::erdos_renyi(n, avg, rng());
}

// Matrix with the requested sigma pair; off-diagonal entries random.
inline egn::PayoffMatrix matrix_with_sigmas(std::mt19937_64& rng, double sigma_c,
                                            double sigma_d) {
    egn::PayoffMatrix b;
    b.dc = grid_value(rng);
    b.cd = grid_value(rng);
    b.cc = b.dc + sigma_c;
    b.dd = b.cd + sigma_d;
    return b;
}

inline egn::PayoffMatrix random_coordination(std::mt19937_64& rng) {
    return matrix_with_sigmas(rng, grid_positive(rng), grid_positive(rng));
}

inline egn::PayoffMatrix random_anticoordination(std::mt19937_64& rng) {
    return matrix_with_sigmas(rng, -grid_positive(rng), -grid_positive(rng));
}

// Any sign combination, including zero sigmas.
inline egn::PayoffMatrix random_any_class(std::mt19937_64& rng) {
    return matrix_with_sigmas(rng, grid_value(rng), grid_value(rng));
}

inline std::vector<egn::PayoffMatrix> per_vertex(std::mt19937_64& rng, int n,
                                                 egn::PayoffMatrix (*gen)(std::mt19937_64&)) {
    std::vector<egn::PayoffMatrix> out;
    out.reserve(n);
    for (int v = 0; v < n; ++v) out.push_back(gen(rng));
    return out;
}

// Anti-coordination with ratio strictly above degree-1 at every vertex
// (cooperator-side bound) or with the inverse ratio above it (defector side).
inline std::vector<egn::PayoffMatrix> anti_with_ratio_bound(std::mt19937_64& rng,
                                                            const egn::Graph& g,
                                                            bool cooperator_side) {
    std::vector<egn::PayoffMatrix> out;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const double small = 0.5 * pick(rng, 1, 2);
        const double big = small * (g.degree(v) - 1) + 0.5 * pick(rng, 1, 2);
        const double sc = cooperator_side ? big : small;
        const double sd = cooperator_side ? small : big;
        out.push_back(matrix_with_sigmas(rng, -sc, -sd));
    }
    return out;
}

}  // namespace testutil
