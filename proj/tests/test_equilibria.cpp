#include <doctest.h>

#include <egn/equilibria.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "helpers.hpp"

using namespace egn;
using doctest::Approx;

namespace {

const PayoffMatrix kCs{2.1, 0.0, 0.0, 1.0};  // coordination, R = 2.1
const PayoffMatrix kHd{0.0, 1.0, 1.0, 0.0};  // anti-coordination, R = 1

// The 18-vertex caterpillar study instance: stalk payoffs kCs, leaf payoffs
// R = 1.5 coordination.
EgnInstance caterpillar_instance() {
    Graph g = Graph::caterpillar(8, {0, 1, 0, 5, 0, 0, 4, 0});
    std::vector<PayoffMatrix> payoffs(18, kCs);
    for (int v = 8; v < 18; ++v) payoffs[v] = PayoffMatrix{3.0, 0.0, 0.0, 2.0};
    return EgnInstance(std::move(g), std::move(payoffs));
}

std::vector<std::uint64_t> verdict_indices(const std::vector<ProfileClassification>& rows,
                                           Verdict v) {
    std::vector<std::uint64_t> out;
    for (const auto& r : rows)
        if (r.verdict == v) out.push_back(r.profile.index);
    return out;
}

}  // namespace

TEST_CASE("profile encoding") {
    PureProfile p = PureProfile::from_bitstring("110");
    CHECK(p.n == 3);
    CHECK(p.index == 3);  // player 1 is the least significant bit
    CHECK(p.bit(0) == 1);
    CHECK(p.bit(1) == 1);
    CHECK(p.bit(2) == 0);
    CHECK(p.bitstring() == "110");
    CHECK(p == PureProfile::from_bits({1, 1, 0}));
    CHECK(p.to_state() == StateVector{1.0, 1.0, 0.0});
    CHECK(p.cooperator_set() == VertexSet{0b011});
    CHECK(PureProfile::full_cooperation(3).index == 7);
    CHECK(PureProfile::full_defection(3).index == 0);
    CHECK_THROWS(PureProfile::from_bitstring("10x"));
    CHECK_THROWS(PureProfile::from_index(1, 0));
}

TEST_CASE("neighbor counts") {
    EgnInstance p3(Graph::path(3), kCs);
    PureProfile fc = PureProfile::full_cooperation(3);
    CHECK(neighbor_counts(p3, 1, fc).n_c == 2);
    CHECK(neighbor_counts(p3, 1, fc).n_d == 0);
    PureProfile p{0b011, 3};
    CHECK(neighbor_counts(p3, 1, p).n_c == 1);
    CHECK(neighbor_counts(p3, 1, p).n_d == 1);
    CHECK(neighbor_counts(p3, 2, p).n_c == 1);

    EgnInstance cat = caterpillar_instance();
    // stalk vertex 4 sees its five leaves cooperate, two stalk neighbors defect
    PureProfile leaves{0b11111u << 9, 18};
    CHECK(neighbor_counts(cat, 3, leaves).n_c == 5);
    CHECK(neighbor_counts(cat, 3, leaves).n_d == 2);
}

TEST_CASE("pure eigenvalue closed forms") {
    EgnInstance p3(Graph::path(3), kCs);
    PureProfile fc = PureProfile::full_cooperation(3);
    // full cooperation: lambda_v = -sigma_c * deg(v)
    CHECK(pure_eigenvalue(p3, 1, fc) == Approx(-4.2));
    CHECK(pure_eigenvalue(p3, 0, fc) == Approx(-2.1));
    // full defection: lambda_v = -sigma_d * deg(v)
    PureProfile fd = PureProfile::full_defection(3);
    CHECK(pure_eigenvalue(p3, 1, fd) == Approx(-2.0));
    // defector facing one cooperator gains exactly sigma_c
    CHECK(pure_eigenvalue(p3, 2, PureProfile{0b011, 3}) == 2.1);
}

TEST_CASE("classify_pure on small instances") {
    EgnInstance p3(Graph::path(3), kCs);

    auto fc = classify_pure(p3, PureProfile::full_cooperation(3));
    CHECK(fc.verdict == Verdict::StrictNash);
    for (const auto& vr : fc.vertices) {
        CHECK(vr.strict);
        CHECK(vr.condition == ConditionTag::CoordinationCooperate);
    }

    auto bad = classify_pure(p3, PureProfile{0b011, 3});
    CHECK(bad.verdict == Verdict::NotNash);
    CHECK(bad.vertices[2].lambda == 2.1);
    CHECK(!bad.vertices[2].weak);
    CHECK(bad.vertices[2].condition == ConditionTag::CoordinationDefect);

    EgnInstance anti(Graph::path(3), kHd);
    auto mid = classify_pure(anti, PureProfile{0b010, 3});
    CHECK(mid.verdict == Verdict::StrictNash);
    CHECK(mid.vertices[0].condition == ConditionTag::AntiDefect);
    CHECK(mid.vertices[1].condition == ConditionTag::AntiCooperate);

    // zero matrix: every profile is weakly stable everywhere
    EgnInstance flat(Graph::path(3), PayoffMatrix{});
    auto any = classify_pure(flat, PureProfile{0b101, 3});
    CHECK(any.verdict == Verdict::NashOnly);
    CHECK(any.vertices[0].condition == ConditionTag::SignFallback);
}

TEST_CASE("best response oracle agrees on textbook cases") {
    EgnInstance star(Graph::star(5), kCs);
    auto fc = best_response_oracle(star, PureProfile::full_cooperation(5));
    CHECK(fc.verdict == Verdict::StrictNash);
    // a lone cooperating leaf wants to switch
    auto lone = best_response_oracle(star, PureProfile{0b00010, 5});
    CHECK(lone.verdict == Verdict::NotNash);
    CHECK(lone.vertices[1].lambda > 0.0);

    EgnInstance flat(Graph::star(5), PayoffMatrix{});
    CHECK(best_response_oracle(flat, PureProfile{0b01010, 5}).verdict == Verdict::NashOnly);
}

TEST_CASE("jacobian at pure and interior points") {
    EgnInstance p3(Graph::path(3), kCs);
    PureProfile p{0b011, 3};
    JacobianMatrix j = jacobian_at(p3, p.to_state());
    for (int v = 0; v < 3; ++v) {
        CHECK(j.entry(v, v) == pure_eigenvalue(p3, v, p));  // bitwise
        for (int w = 0; w < 3; ++w)
            if (w != v) CHECK(j.entry(v, w) == 0.0);
    }

    StateVector mid{0.5, 0.5, 0.5};
    JacobianMatrix jm = jacobian_at(p3, mid);
    // off-diagonal: x_v(1-x_v) * (sigma_c + sigma_d) on edges
    CHECK(jm.entry(0, 1) == Approx(0.25 * 3.1));
    CHECK(jm.entry(1, 0) == Approx(0.25 * 3.1));
    CHECK(jm.entry(0, 2) == 0.0);  // non-adjacent
}

TEST_CASE("skip predicates") {
    EgnInstance p3(Graph::path(3), kCs);
    // middle defects, both neighbors cooperate
    CHECK(coordination_vertex_all_opposed(p3, PureProfile{0b101, 3}));
    // end defects against its cooperating neighbor
    CHECK(coordination_vertex_all_opposed(p3, PureProfile{0b011, 3}));
    CHECK(!coordination_vertex_all_opposed(p3, PureProfile::full_cooperation(3)));
    CHECK(!coordination_vertex_all_opposed(p3, PureProfile::full_defection(3)));

    EgnInstance anti(Graph::path(3), kHd);
    CHECK(anticoordination_vertex_all_matched(anti, PureProfile::full_cooperation(3)));
    CHECK(anticoordination_vertex_all_matched(anti, PureProfile::full_defection(3)));
    CHECK(!anticoordination_vertex_all_matched(anti, PureProfile{0b010, 3}));

    // predicates never fire on a matrix class they do not cover
    CHECK(!coordination_vertex_all_opposed(anti, PureProfile{0b101, 3}));
    CHECK(!anticoordination_vertex_all_matched(p3, PureProfile::full_cooperation(3)));
}

TEST_CASE("enumeration on the 3-path") {
    EgnInstance p3(Graph::path(3), kCs);
    auto all = enumerate_classified_serial(p3, Filter::All, false);
    REQUIRE(all.size() == 8);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].profile.index == i);
    CHECK(verdict_indices(all, Verdict::StrictNash) == std::vector<std::uint64_t>{0, 7});
    CHECK(verdict_indices(all, Verdict::NashOnly).empty());

    auto sne = enumerate_classified_serial(p3, Filter::StrictNash, false);
    REQUIRE(sne.size() == 2);
    CHECK(sne[0].profile.index == 0);
    CHECK(sne[1].profile.index == 7);

    EgnInstance anti(Graph::path(3), kHd);
    auto anti_sne = enumerate_classified_serial(anti, Filter::StrictNash, false);
    REQUIRE(anti_sne.size() == 2);
    CHECK(anti_sne[0].profile.index == 0b010);
    CHECK(anti_sne[1].profile.index == 0b101);
    // matches the independent-dominating-set picture exactly
    CHECK(enumerate_independent_dominating_sets(anti.graph()) ==
          std::vector<VertexSet>{0b010, 0b101});
}

TEST_CASE("pruning never changes the output") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = testutil::random_connected_graph(rng, 2, 9);
        EgnInstance inst(g, testutil::per_vertex(rng, g.num_vertices(),
                                                 testutil::random_any_class));
        for (Filter f : {Filter::All, Filter::Nash, Filter::StrictNash}) {
            auto plain = enumerate_classified_serial(inst, f, false);
            auto pruned = enumerate_classified_serial(inst, f, true);
            REQUIRE(plain.size() == pruned.size());
            for (std::size_t i = 0; i < plain.size(); ++i) {
                CHECK(plain[i].profile == pruned[i].profile);
                CHECK(plain[i].verdict == pruned[i].verdict);
            }
        }
    }
}

TEST_CASE("strict equilibria are contained in the Nash set") {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 10; ++rep) {
        Graph g = testutil::random_connected_graph(rng, 2, 8);
        EgnInstance inst(g, testutil::per_vertex(rng, g.num_vertices(),
                                                 testutil::random_any_class));
        auto sne = enumerate_classified_serial(inst, Filter::StrictNash, false);
        auto ne = enumerate_classified_serial(inst, Filter::Nash, false);
        std::vector<std::uint64_t> sne_idx, ne_idx;
        for (const auto& r : sne) sne_idx.push_back(r.profile.index);
        for (const auto& r : ne) ne_idx.push_back(r.profile.index);
        CHECK(std::includes(ne_idx.begin(), ne_idx.end(), sne_idx.begin(), sne_idx.end()));
    }
}

TEST_CASE("enumeration guard") {
    EgnInstance big(Graph::path(31), kCs);
    CHECK_THROWS(enumerate_classified_serial(big, Filter::StrictNash, false));
    CHECK_THROWS(count_classified_serial(big));
}

TEST_CASE("counts match enumeration") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        Graph g = testutil::random_connected_graph(rng, 2, 9);
        EgnInstance inst(g, testutil::per_vertex(rng, g.num_vertices(),
                                                 testutil::random_any_class));
        auto all = enumerate_classified_serial(inst, Filter::All, false);
        ClassCounts c = count_classified_serial(inst);
        CHECK(c.total() == static_cast<std::int64_t>(all.size()));
        CHECK(c.total() == std::int64_t{1} << g.num_vertices());
        CHECK(c.strict ==
              static_cast<std::int64_t>(verdict_indices(all, Verdict::StrictNash).size()));
        CHECK(c.weak_only ==
              static_cast<std::int64_t>(verdict_indices(all, Verdict::NashOnly).size()));
        CHECK(c.nash() == c.strict + c.weak_only);
    }
}

TEST_CASE("uniform-profile uniqueness condition") {
    CHECK(uniform_profiles_unique_sne(EgnInstance(Graph::path(3), kCs)) ==
          std::optional<bool>{true});
    CHECK(uniform_profiles_unique_sne(EgnInstance(Graph::path(2), kCs)) ==
          std::optional<bool>{true});
    // hub degree 4 needs R > 3; R = 2.1 fails the bound (inconclusive, not false)
    CHECK(uniform_profiles_unique_sne(EgnInstance(Graph::star(5), kCs)) ==
          std::optional<bool>{false});
    // hypotheses not met
    CHECK(!uniform_profiles_unique_sne(EgnInstance(Graph::path(3), kHd)).has_value());
    CHECK(!uniform_profiles_unique_sne(
               EgnInstance(Graph::from_edge_list(4, {{1, 2}, {3, 4}}), kCs))
               .has_value());
    EgnInstance two(Graph::path(2),
                    std::vector<PayoffMatrix>{kCs, PayoffMatrix{3.0, 0.0, 0.0, 2.0}});
    CHECK(!uniform_profiles_unique_sne(two).has_value());
    CHECK(!uniform_profiles_unique_sne(
               EgnInstance(Graph::path(2), PayoffMatrix{1.0, 0.0, 0.0, 0.0}))
               .has_value());

    // when the condition holds, enumeration confirms exactly two SNE
    EgnInstance p3(Graph::path(3), kCs);
    auto sne = enumerate_classified_serial(p3, Filter::StrictNash, false);
    REQUIRE(sne.size() == 2);
    CHECK(sne[0].profile.index == 0);
    CHECK(sne[1].profile.index == 7);
}

TEST_CASE("independent-dominating-set equivalence") {
    Graph p3 = Graph::path(3);
    auto ids = enumerate_independent_dominating_sets(p3);

    // R = 1 at the degree-2 hub misses the strict bound
    EgnInstance r1(p3, kHd);
    CHECK(ids_equivalence(r1) == IdsEquivalence::Inapplicable);

    // R = 2 > d_v - 1 everywhere: cooperators of every SNE form an IDS
    EgnInstance r2(p3, PayoffMatrix{-2.0, 0.0, 0.0, -1.0});
    CHECK(ids_equivalence(r2) == IdsEquivalence::CooperatorIds);
    auto sne2 = enumerate_classified_serial(r2, Filter::StrictNash, false);
    std::vector<VertexSet> coop2;
    for (const auto& r : sne2) coop2.push_back(r.profile.cooperator_set());
    CHECK(coop2 == ids);

    // inverse ratio 2: defectors form the IDS
    EgnInstance rhalf(p3, PayoffMatrix{-1.0, 0.0, 0.0, -2.0});
    CHECK(ids_equivalence(rhalf) == IdsEquivalence::DefectorIds);
    auto sneh = enumerate_classified_serial(rhalf, Filter::StrictNash, false);
    std::vector<VertexSet> defect;
    for (const auto& r : sneh)
        defect.push_back(~r.profile.cooperator_set() & ((VertexSet{1} << 3) - 1));
    std::sort(defect.begin(), defect.end());
    CHECK(defect == ids);

    // both bounds hold on an edge: the cooperator reading is preferred
    EgnInstance k2(Graph::path(2), kHd);
    CHECK(ids_equivalence(k2) == IdsEquivalence::CooperatorIds);

    CHECK(ids_equivalence(EgnInstance(p3, kCs)) == IdsEquivalence::Inapplicable);
}

TEST_CASE("eigenvalue, payoff, and jacobian routes agree everywhere") {
    std::mt19937_64 rng(14);
    for (int rep = 0; rep < 40; ++rep) {
        Graph g = testutil::random_connected_graph(rng, 2, 9);
        const int n = g.num_vertices();
        auto payoffs = testutil::per_vertex(rng, n, testutil::random_any_class);
        if (rep % 4 == 0)  // force a degenerate vertex into the mix
            payoffs[testutil::pick(rng, 0, n - 1)] =
                testutil::matrix_with_sigmas(rng, testutil::grid_value(rng), 0.0);
        EgnInstance inst(g, payoffs);
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            PureProfile p{idx, n};
            auto a = classify_pure(inst, p);
            auto b = best_response_oracle(inst, p);
            JacobianMatrix j = jacobian_at(inst, p.to_state());
            REQUIRE(a.verdict == b.verdict);
            for (int v = 0; v < n; ++v) {
                REQUIRE(a.vertices[v].lambda == b.vertices[v].lambda);  // bitwise
                REQUIRE(a.vertices[v].lambda == j.entry(v, v));
            }
        }
    }
}

TEST_CASE("agreement groups on the caterpillar") {
    EgnInstance cat = caterpillar_instance();
    AgreementGroups ag = agreement_groups(cat);
    CHECK(ag.num_groups == 4);
    std::vector<std::vector<int>> expect{
        {0, 1, 2, 8}, {3, 9, 10, 11, 12, 13}, {4, 5}, {6, 7, 14, 15, 16, 17}};
    CHECK(ag.members() == expect);

    auto cands = candidate_profiles(cat);
    CHECK(cands.size() == 16);
    for (const auto& p : cands) CHECK(constant_on_groups(ag, p));

    // the known SNE set is exactly the candidates that survive classification
    std::vector<std::uint64_t> expect_sne{0,      48,     263,    311,
                                          16191,  246000, 246263, 262143};
    std::vector<std::uint64_t> got;
    for (const auto& p : cands)
        if (classify_pure(cat, p).verdict == Verdict::StrictNash) got.push_back(p.index);
    CHECK(got == expect_sne);
}

TEST_CASE("every strict equilibrium is constant on its agreement groups") {
    std::mt19937_64 rng(15);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = testutil::random_connected_graph(rng, 2, 9);
        EgnInstance inst(g, testutil::per_vertex(rng, g.num_vertices(),
                                                 testutil::random_any_class));
        AgreementGroups ag = agreement_groups(inst);
        REQUIRE(ag.num_groups >= 1);
        auto sne = enumerate_classified_serial(inst, Filter::StrictNash, false);
        for (const auto& r : sne) CHECK(constant_on_groups(ag, r.profile));

        // candidate list is group-constant, sorted, and covers the SNE set
        auto cands = candidate_profiles(inst);
        CHECK(std::is_sorted(cands.begin(), cands.end(),
                             [](const PureProfile& a, const PureProfile& b) {
                                 return a.index < b.index;
                             }));
        std::vector<std::uint64_t> cidx;
        for (const auto& p : cands) cidx.push_back(p.index);
        for (const auto& r : sne)
            CHECK(std::binary_search(cidx.begin(), cidx.end(), r.profile.index));
    }
}

TEST_CASE("verdict and tag names") {
    CHECK(to_string(Verdict::StrictNash) == "SNE");
    CHECK(to_string(Verdict::NashOnly) == "NE-only");
    CHECK(to_string(Verdict::NotNash) == "NotNE");
    CHECK(to_string(ConditionTag::CoordinationCooperate) == "coordination-cooperate");
    CHECK(to_string(ConditionTag::SignFallback) == "lambda-sign");
    CHECK(to_string(IdsEquivalence::CooperatorIds) == "cooperator-ids");
}
