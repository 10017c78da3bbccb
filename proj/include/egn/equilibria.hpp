#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "egn/game.hpp"
#include "egn/graph.hpp"

namespace egn {

// Pure strategy profile over n vertices, addressable as an integer:
// bit v (0-based, LSB = player 1) holds x_{v+1} in {0,1}, 1 = cooperate.
struct PureProfile {
    std::uint64_t index = 0;
    int n = 0;

    static PureProfile from_index(std::uint64_t index, int n);
    // bits[0] is player 1's strategy.
    static PureProfile from_bits(const std::vector<int>& bits);
    // Leftmost character is player 1 ('0' or '1').
    static PureProfile from_bitstring(const std::string& s);
    static PureProfile full_cooperation(int n);
    static PureProfile full_defection(int n) { return from_index(0, n); }

    int bit(int v) const { return static_cast<int>(index >> v & 1u); }
    // Player 1 leftmost.
    std::string bitstring() const;
    StateVector to_state() const;
    // Bitmask of cooperating vertices (bit v = vertex v+1).
    VertexSet cooperator_set() const { return index; }

    bool operator==(const PureProfile&) const = default;
};

struct NeighborCounts {
    int n_c = 0;  // cooperating neighbors
    int n_d = 0;  // defecting neighbors
};

NeighborCounts neighbor_counts(const EgnInstance& inst, int v, PureProfile p);

// Diagonal Jacobian entry at a pure profile:
// (1 - 2 x_v)(sigma_c n_c - sigma_d n_d). Negative = v is strictly stable.
double pure_eigenvalue(const EgnInstance& inst, int v, PureProfile p);

enum class Verdict {
    StrictNash,  // every eigenvalue < -tol
    NashOnly,    // every eigenvalue <= tol, some within tol of zero
    NotNash,
};

std::string to_string(Verdict v);

// Which stability condition applies at the vertex, determined by its game
// class and played strategy; mixed-sign and degenerate matrices fall back to
// the raw eigenvalue sign.
enum class ConditionTag {
    CoordinationCooperate,  // defecting neighbors must stay below R * n_c
    CoordinationDefect,     // cooperating neighbors must stay below n_d / R
    AntiCooperate,          // cooperating neighbors must stay below n_d / R
    AntiDefect,             // defecting neighbors must stay below R * n_c
    SignFallback,
};

std::string to_string(ConditionTag t);

struct VertexReport {
    double lambda = 0.0;
    ConditionTag condition = ConditionTag::SignFallback;
    bool strict = false;  // lambda < -tol
    bool weak = false;    // lambda <= tol
};

struct ProfileClassification {
    PureProfile profile;
    Verdict verdict = Verdict::NotNash;
    std::vector<VertexReport> vertices;
};

// Classify via the per-vertex eigenvalue signs.
ProfileClassification classify_pure(const EgnInstance& inst, PureProfile p,
                                    double tol = kSignTolerance);

// Independent verdict from the equilibrium definition itself: for each vertex
// compare the network payoff of its played strategy against the unilateral
// switch (payoffs are affine in x_v, so the two corners decide).
ProfileClassification best_response_oracle(const EgnInstance& inst, PureProfile p,
                                           double tol = kSignTolerance);

// Dense Jacobian of the replicator field. Off-diagonal entries vanish at
// pure profiles, where the diagonal equals pure_eigenvalue exactly.
struct JacobianMatrix {
    int n = 0;
    std::vector<double> entries;  // row-major
    std::vector<double> k;        // per-vertex selection gradient

    double entry(int v, int w) const { return entries[static_cast<std::size_t>(v) * n + w]; }
};

JacobianMatrix jacobian_at(const EgnInstance& inst, const StateVector& x);

// True when some coordination-class vertex (positive degree) plays the
// opposite strategy of every neighbor; such a profile is never a NE, so
// enumeration may skip it.
bool coordination_vertex_all_opposed(const EgnInstance& inst, PureProfile p);

// True when some anti-coordination vertex (positive degree) plays the same
// strategy as every neighbor; such a profile is never a NE.
bool anticoordination_vertex_all_matched(const EgnInstance& inst, PureProfile p);

enum class Filter { All, Nash, StrictNash };

bool matches(Verdict v, Filter f);

// Classify profiles 0..2^n-1 in ascending index order and hand each one
// matching the filter to sink. prune=true skips provably non-Nash profiles
// without full classification; output is identical either way (the skip
// filters are sound), so pruning only saves work for Nash/StrictNash.
// Throws when n exceeds kEnumerationGuard.
void for_each_classified(const EgnInstance& inst, Filter filter, bool prune,
                         const std::function<void(const ProfileClassification&)>& sink);

std::vector<ProfileClassification> enumerate_classified_serial(const EgnInstance& inst,
                                                               Filter filter, bool prune);

// Parallel variant; jobs <= 0 uses all available threads. Output is
// deterministic and identical to the serial result for any job count.
std::vector<ProfileClassification> enumerate_classified(const EgnInstance& inst, Filter filter,
                                                        bool prune, int jobs = 0);

struct ClassCounts {
    std::int64_t strict = 0;     // SNE
    std::int64_t weak_only = 0;  // NE but not strict
    std::int64_t not_nash = 0;

    std::int64_t nash() const { return strict + weak_only; }
    std::int64_t total() const { return strict + weak_only + not_nash; }
    bool operator==(const ClassCounts&) const = default;
};

ClassCounts count_classified_serial(const EgnInstance& inst);
ClassCounts count_classified(const EgnInstance& inst, int jobs = 0);

// Sufficient condition for the two uniform profiles to be the only SNE:
// common coordination payoffs on a connected graph with R > d_v - 1 for all
// v. nullopt when the hypotheses (common matrix, coordination class,
// connectivity, finite R) do not hold; otherwise whether the degree bound is
// met. A false result is inconclusive, not a refutation.
std::optional<bool> uniform_profiles_unique_sne(const EgnInstance& inst);

// When every vertex is anti-coordination and the ratio bound holds, SNE
// membership reduces to a set property of the graph alone.
enum class IdsEquivalence {
    CooperatorIds,  // R_v > d_v - 1 for all v: SNE <=> cooperators independent dominating
    DefectorIds,    // 1/R_v > d_v - 1 for all v: SNE <=> defectors independent dominating
    Inapplicable,
};

std::string to_string(IdsEquivalence e);

// Prefers CooperatorIds when both bounds hold.
IdsEquivalence ids_equivalence(const EgnInstance& inst);

// Vertices forced to agree in every SNE, merged transitively. Derived from
// the strict per-vertex conditions: an edge joins two groups when neither
// disagreement pattern across it can be completed to a strict equilibrium
// given the group memberships established so far (iterated to a fixpoint).
struct AgreementGroups {
    std::vector<int> group;  // vertex -> group id, 0-based, contiguous
    int num_groups = 0;

    std::vector<std::vector<int>> members() const;
};

AgreementGroups agreement_groups(const EgnInstance& inst);

bool constant_on_groups(const AgreementGroups& g, PureProfile p);

// All group-constant profiles (the SNE candidates), ascending index order.
std::vector<PureProfile> candidate_profiles(const EgnInstance& inst);

}  // namespace egn
