#include "egn/equilibria.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace egn {

PureProfile PureProfile::from_index(std::uint64_t index, int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("profile: vertex count must be in 1..64");
    if (n < 64 && index >> n)
        throw std::invalid_argument("profile: index has bits beyond the vertex count");
    return {index, n};
}

PureProfile PureProfile::from_bits(const std::vector<int>& bits) {
    const int n = static_cast<int>(bits.size());
    std::uint64_t index = 0;
    for (int v = 0; v < n; ++v) {
        if (bits[v] != 0 && bits[v] != 1)
            throw std::invalid_argument("profile: entries must be 0 or 1");
        index |= static_cast<std::uint64_t>(bits[v]) << v;
    }
    return from_index(index, n);
}

PureProfile PureProfile::from_bitstring(const std::string& s) {
    const int n = static_cast<int>(s.size());
    std::uint64_t index = 0;
    for (int v = 0; v < n; ++v) {
        if (s[v] != '0' && s[v] != '1')
            throw std::invalid_argument("profile: bitstring may only contain 0 and 1");
        if (s[v] == '1') index |= std::uint64_t{1} << v;
    }
    return from_index(index, n);
}

PureProfile PureProfile::full_cooperation(int n) {
    const std::uint64_t all = (n >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    return from_index(all, n);
}

std::string PureProfile::bitstring() const {
    std::string s(n, '0');
    for (int v = 0; v < n; ++v)
        if (bit(v)) s[v] = '1';
    return s;
}

StateVector PureProfile::to_state() const {
    StateVector x(n);
    for (int v = 0; v < n; ++v) x[v] = static_cast<double>(bit(v));
    return x;
}

NeighborCounts neighbor_counts(const EgnInstance& inst, int v, PureProfile p) {
    const int n_c = std::popcount(inst.graph().neighbor_mask(v) & p.index);
    return {n_c, inst.graph().degree(v) - n_c};
}

double pure_eigenvalue(const EgnInstance& inst, int v, PureProfile p) {
    const auto [n_c, n_d] = neighbor_counts(inst, v, p);
    const double margin = inst.sigma_c(v) * n_c - inst.sigma_d(v) * n_d;
    return (1.0 - 2.0 * p.bit(v)) * margin;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::StrictNash: return "SNE";
        case Verdict::NashOnly: return "NE-only";
        case Verdict::NotNash: return "NotNE";
    }
    return "?";
}

std::string to_string(ConditionTag t) {
    switch (t) {
        case ConditionTag::CoordinationCooperate: return "coordination-cooperate";
        case ConditionTag::CoordinationDefect: return "coordination-defect";
        case ConditionTag::AntiCooperate: return "anticoordination-cooperate";
        case ConditionTag::AntiDefect: return "anticoordination-defect";
        case ConditionTag::SignFallback: return "lambda-sign";
    }
    return "?";
}

std::string to_string(IdsEquivalence e) {
    switch (e) {
        case IdsEquivalence::CooperatorIds: return "cooperator-ids";
        case IdsEquivalence::DefectorIds: return "defector-ids";
        case IdsEquivalence::Inapplicable: return "inapplicable";
    }
    return "?";
}

namespace {

ConditionTag condition_tag(GameClass c, int bit) {
    switch (c) {
        case GameClass::Coordination:
            return bit ? ConditionTag::CoordinationCooperate : ConditionTag::CoordinationDefect;
        case GameClass::AntiCoordination:
            return bit ? ConditionTag::AntiCooperate : ConditionTag::AntiDefect;
        default:
            return ConditionTag::SignFallback;
    }
}

Verdict verdict_from_flags(bool all_strict, bool all_weak) {
    if (all_strict) return Verdict::StrictNash;
    if (all_weak) return Verdict::NashOnly;
    return Verdict::NotNash;
}

// Verdict without building the per-vertex report; must follow the same
// thresholds as classify_pure.
Verdict quick_verdict(const EgnInstance& inst, PureProfile p, double tol) {
    bool all_strict = true;
    for (int v = 0; v < inst.num_vertices(); ++v) {
        const double lam = pure_eigenvalue(inst, v, p);
        if (lam > tol) return Verdict::NotNash;
        all_strict = all_strict && lam < -tol;
    }
    return all_strict ? Verdict::StrictNash : Verdict::NashOnly;
}

}  // namespace

ProfileClassification classify_pure(const EgnInstance& inst, PureProfile p, double tol) {
    const int n = inst.num_vertices();
    ProfileClassification out;
    out.profile = p;
    out.vertices.resize(n);
    bool all_strict = true, all_weak = true;
    for (int v = 0; v < n; ++v) {
        VertexReport& r = out.vertices[v];
        r.lambda = pure_eigenvalue(inst, v, p);
        r.condition = condition_tag(inst.vertex_class(v), p.bit(v));
        r.strict = r.lambda < -tol;
        r.weak = r.lambda <= tol;
        all_strict = all_strict && r.strict;
        all_weak = all_weak && r.weak;
    }
    out.verdict = verdict_from_flags(all_strict, all_weak);
    return out;
}

ProfileClassification best_response_oracle(const EgnInstance& inst, PureProfile p, double tol) {
    const int n = inst.num_vertices();
    ProfileClassification out;
    out.profile = p;
    out.vertices.resize(n);
    StateVector x = p.to_state();
    bool all_strict = true, all_weak = true;
    for (int v = 0; v < n; ++v) {
        const double played = network_payoff(inst, x, v);
        x[v] = 1.0 - x[v];
        const double switched = network_payoff(inst, x, v);
        x[v] = 1.0 - x[v];
        // Payoff gained by the unilateral switch; <= 0 means no incentive to
        // deviate. Coincides with the diagonal Jacobian entry.
        const double gain = switched - played;
        VertexReport& r = out.vertices[v];
        r.lambda = gain;
        r.condition = condition_tag(inst.vertex_class(v), p.bit(v));
        r.strict = gain < -tol;
        r.weak = gain <= tol;
        all_strict = all_strict && r.strict;
        all_weak = all_weak && r.weak;
    }
    out.verdict = verdict_from_flags(all_strict, all_weak);
    return out;
}

JacobianMatrix jacobian_at(const EgnInstance& inst, const StateVector& x) {
    const int n = inst.num_vertices();
    JacobianMatrix j;
    j.n = n;
    j.entries.assign(static_cast<std::size_t>(n) * n, 0.0);
    j.k.resize(n);
    for (int v = 0; v < n; ++v) {
        double sum_c = 0.0, sum_d = 0.0;
        for (int w : inst.graph().neighbors(v)) {
            sum_c += x[w];
            sum_d += 1.0 - x[w];
        }
        j.k[v] = inst.sigma_c(v) * sum_c - inst.sigma_d(v) * sum_d;
        const double off = x[v] * (1.0 - x[v]) * (inst.sigma_c(v) + inst.sigma_d(v));
        for (int w : inst.graph().neighbors(v))
            j.entries[static_cast<std::size_t>(v) * n + w] = off;
        j.entries[static_cast<std::size_t>(v) * n + v] = (1.0 - 2.0 * x[v]) * j.k[v];
    }
    return j;
}

bool coordination_vertex_all_opposed(const EgnInstance& inst, PureProfile p) {
    for (int v = 0; v < inst.num_vertices(); ++v) {
        if (inst.vertex_class(v) != GameClass::Coordination) continue;
        if (inst.graph().degree(v) == 0) continue;
        const auto [n_c, n_d] = neighbor_counts(inst, v, p);
        if ((p.bit(v) ? n_c : n_d) == 0) return true;
    }
    return false;
}

bool anticoordination_vertex_all_matched(const EgnInstance& inst, PureProfile p) {
    for (int v = 0; v < inst.num_vertices(); ++v) {
        if (inst.vertex_class(v) != GameClass::AntiCoordination) continue;
        if (inst.graph().degree(v) == 0) continue;
        const auto [n_c, n_d] = neighbor_counts(inst, v, p);
        if ((p.bit(v) ? n_d : n_c) == 0) return true;
    }
    return false;
}

bool matches(Verdict v, Filter f) {
    switch (f) {
        case Filter::All: return true;
        case Filter::Nash: return v != Verdict::NotNash;
        case Filter::StrictNash: return v == Verdict::StrictNash;
    }
    return false;
}

namespace {

void check_enumeration_guard(int n) {
    if (n > kEnumerationGuard) {
        std::ostringstream msg;
        msg << "enumeration scans 2^n profiles; n=" << n << " exceeds the guard of "
            << kEnumerationGuard << " (classify individual profiles instead)";
        throw std::invalid_argument(msg.str());
    }
}

bool prunable(const EgnInstance& inst, PureProfile p) {
    return coordination_vertex_all_opposed(inst, p) ||
           anticoordination_vertex_all_matched(inst, p);
}

// When a structural result pins down the SNE set, emit it directly instead of
// scanning 2^n profiles. Each candidate is still classified (and filtered on
// its actual verdict) so edge cases cannot slip through. Returns false when
// no structural result applies.
bool short_circuit_sne(const EgnInstance& inst,
                       const std::function<void(const ProfileClassification&)>& sink) {
    const int n = inst.num_vertices();
    std::vector<std::uint64_t> candidates;
    if (auto uniq = uniform_profiles_unique_sne(inst); uniq && *uniq) {
        candidates = {0, PureProfile::full_cooperation(n).index};
    } else {
        const IdsEquivalence eq = ids_equivalence(inst);
        if (eq == IdsEquivalence::Inapplicable) return false;
        const std::uint64_t full = PureProfile::full_cooperation(n).index;
        for (VertexSet s : enumerate_independent_dominating_sets(inst.graph()))
            candidates.push_back(eq == IdsEquivalence::CooperatorIds ? s : (full & ~s));
        std::sort(candidates.begin(), candidates.end());
    }
    for (std::uint64_t idx : candidates) {
        auto c = classify_pure(inst, PureProfile::from_index(idx, n));
        if (c.verdict == Verdict::StrictNash) sink(c);
    }
    return true;
}

}  // namespace

void for_each_classified(const EgnInstance& inst, Filter filter, bool prune,
                         const std::function<void(const ProfileClassification&)>& sink) {
    const int n = inst.num_vertices();
    check_enumeration_guard(n);
    if (prune && filter == Filter::StrictNash && short_circuit_sne(inst, sink)) return;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const PureProfile p{idx, n};
        if (prune && filter != Filter::All && prunable(inst, p)) continue;
        auto c = classify_pure(inst, p);
        if (matches(c.verdict, filter)) sink(c);
    }
}

std::vector<ProfileClassification> enumerate_classified_serial(const EgnInstance& inst,
                                                               Filter filter, bool prune) {
    std::vector<ProfileClassification> out;
    for_each_classified(inst, filter, prune,
                        [&](const ProfileClassification& c) { out.push_back(c); });
    return out;
}

std::vector<ProfileClassification> enumerate_classified(const EgnInstance& inst, Filter filter,
                                                        bool prune, int jobs) {
#ifndef _OPENMP
    (void)jobs;
    return enumerate_classified_serial(inst, filter, prune);
#else
    const int n = inst.num_vertices();
    check_enumeration_guard(n);
    if (prune && filter == Filter::StrictNash) {
        std::vector<ProfileClassification> out;
        if (short_circuit_sne(inst, [&](const ProfileClassification& c) { out.push_back(c); }))
            return out;
    }
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const std::uint64_t total = std::uint64_t{1} << n;
    // Contiguous chunks concatenated in chunk order keep the output in
    // ascending index order for any thread count.
    const int nchunks = std::max(threads * 4, 1);
    std::vector<std::vector<ProfileClassification>> parts(nchunks);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int c = 0; c < nchunks; ++c) {
        const std::uint64_t lo = total / nchunks * c + std::min<std::uint64_t>(c, total % nchunks);
        const std::uint64_t hi =
            total / nchunks * (c + 1) + std::min<std::uint64_t>(c + 1, total % nchunks);
        auto& out = parts[c];
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            const PureProfile p{idx, n};
            if (prune && filter != Filter::All && prunable(inst, p)) continue;
            auto cl = classify_pure(inst, p);
            if (matches(cl.verdict, filter)) out.push_back(std::move(cl));
        }
    }
    std::vector<ProfileClassification> out;
    for (auto& part : parts) {
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
#endif
}

ClassCounts count_classified_serial(const EgnInstance& inst) {
    const int n = inst.num_vertices();
    check_enumeration_guard(n);
    ClassCounts counts;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        switch (quick_verdict(inst, PureProfile{idx, n}, kSignTolerance)) {
            case Verdict::StrictNash: ++counts.strict; break;
            case Verdict::NashOnly: ++counts.weak_only; break;
            case Verdict::NotNash: ++counts.not_nash; break;
        }
    }
    return counts;
}

ClassCounts count_classified(const EgnInstance& inst, int jobs) {
#ifndef _OPENMP
    (void)jobs;
    return count_classified_serial(inst);
#else
    const int n = inst.num_vertices();
    check_enumeration_guard(n);
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const long long total = 1ll << n;
    long long strict = 0, weak = 0, notn = 0;
#pragma omp parallel for schedule(static) reduction(+ : strict, weak, notn) \
    num_threads(threads)
    for (long long idx = 0; idx < total; ++idx) {
        switch (quick_verdict(inst, PureProfile{static_cast<std::uint64_t>(idx), n},
                              kSignTolerance)) {
            case Verdict::StrictNash: ++strict; break;
            case Verdict::NashOnly: ++weak; break;
            case Verdict::NotNash: ++notn; break;
        }
    }
    return {strict, weak, notn};
#endif
}

std::optional<bool> uniform_profiles_unique_sne(const EgnInstance& inst) {
    const auto common = inst.common_payoff();
    if (!common) return std::nullopt;
    if (classify_game(*common) != GameClass::Coordination) return std::nullopt;
    if (!inst.graph().connected()) return std::nullopt;
    const Ratio r = payoff_ratio(*common);
    if (!r.defined) return std::nullopt;
    return r.value > static_cast<double>(inst.graph().max_degree() - 1);
}

IdsEquivalence ids_equivalence(const EgnInstance& inst) {
    bool coop = true, def = true;
    for (int v = 0; v < inst.num_vertices(); ++v) {
        if (inst.vertex_class(v) != GameClass::AntiCoordination)
            return IdsEquivalence::Inapplicable;
        const double r = inst.sigma_c(v) / inst.sigma_d(v);  // > 0: both sigmas negative
        const double bound = inst.graph().degree(v) - 1.0;
        coop = coop && r > bound;
        def = def && 1.0 / r > bound;
    }
    if (coop) return IdsEquivalence::CooperatorIds;
    if (def) return IdsEquivalence::DefectorIds;
    return IdsEquivalence::Inapplicable;
}

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

// ok[n_c] = vertex v playing s is strictly stable with n_c cooperating neighbors.
std::vector<char> strict_feasible(const EgnInstance& inst, int v, int s) {
    const int d = inst.graph().degree(v);
    std::vector<char> ok(d + 1);
    for (int n_c = 0; n_c <= d; ++n_c) {
        const double margin = inst.sigma_c(v) * n_c - inst.sigma_d(v) * (d - n_c);
        const double lam = (s ? -1.0 : 1.0) * margin;
        ok[n_c] = lam < -kSignTolerance;
    }
    return ok;
}

}  // namespace

AgreementGroups agreement_groups(const EgnInstance& inst) {
    const Graph& g = inst.graph();
    const int n = g.num_vertices();
    std::vector<std::array<std::vector<char>, 2>> feasible(n);
    for (int v = 0; v < n; ++v) {
        feasible[v][0] = strict_feasible(inst, v, 0);
        feasible[v][1] = strict_feasible(inst, v, 1);
    }
    UnionFind uf(n);

    // Can vertex a play sa in some strict equilibrium while b plays sb, given
    // that established group members always agree? Neighbors outside both
    // groups are treated as free, so "yes" is conservative.
    auto pattern_feasible = [&](int a, int sa, int b, int sb) {
        const int ra = uf.find(a), rb = uf.find(b);
        int same = 0, other = 0;
        for (int w : g.neighbors(a)) {
            const int r = uf.find(w);
            if (r == ra)
                ++same;
            else if (r == rb)
                ++other;
        }
        const int fixed_c = same * sa + other * sb;
        const int free = g.degree(a) - same - other;
        const auto& ok = feasible[a][sa];
        for (int n_c = fixed_c; n_c <= fixed_c + free; ++n_c)
            if (ok[n_c]) return true;
        return false;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < n; ++u) {
            for (int v : g.neighbors(u)) {
                if (u >= v || uf.find(u) == uf.find(v)) continue;
                const bool u_coop =
                    pattern_feasible(u, 1, v, 0) && pattern_feasible(v, 0, u, 1);
                const bool v_coop =
                    pattern_feasible(u, 0, v, 1) && pattern_feasible(v, 1, u, 0);
                if (!u_coop && !v_coop) changed = uf.unite(u, v) || changed;
            }
        }
    }

    AgreementGroups out;
    out.group.assign(n, -1);
    std::vector<int> root_to_id(n, -1);
    for (int v = 0; v < n; ++v) {
        const int r = uf.find(v);
        if (root_to_id[r] < 0) root_to_id[r] = out.num_groups++;
        out.group[v] = root_to_id[r];
    }
    return out;
}

std::vector<std::vector<int>> AgreementGroups::members() const {
    std::vector<std::vector<int>> out(num_groups);
    for (int v = 0; v < static_cast<int>(group.size()); ++v) out[group[v]].push_back(v);
    return out;
}

bool constant_on_groups(const AgreementGroups& g, PureProfile p) {
    std::vector<int> value(g.num_groups, -1);
    for (int v = 0; v < p.n; ++v) {
        int& val = value[g.group[v]];
        if (val < 0)
            val = p.bit(v);
        else if (val != p.bit(v))
            return false;
    }
    return true;
}

std::vector<PureProfile> candidate_profiles(const EgnInstance& inst) {
    const int n = inst.num_vertices();
    const AgreementGroups groups = agreement_groups(inst);
    if (groups.num_groups > kEnumerationGuard) {
        std::ostringstream msg;
        msg << "candidate enumeration scans 2^groups profiles; " << groups.num_groups
            << " groups exceeds the guard of " << kEnumerationGuard;
        throw std::invalid_argument(msg.str());
    }
    std::vector<std::uint64_t> group_mask(groups.num_groups, 0);
    for (int v = 0; v < n; ++v) group_mask[groups.group[v]] |= std::uint64_t{1} << v;
    std::vector<PureProfile> out;
    const std::uint64_t total = std::uint64_t{1} << groups.num_groups;
    for (std::uint64_t assign = 0; assign < total; ++assign) {
        std::uint64_t idx = 0;
        for (int gi = 0; gi < groups.num_groups; ++gi)
            if (assign >> gi & 1u) idx |= group_mask[gi];
        out.push_back(PureProfile{idx, n});
    }
    std::sort(out.begin(), out.end(),
              [](const PureProfile& a, const PureProfile& b) { return a.index < b.index; });
    return out;
}

}  // namespace egn
