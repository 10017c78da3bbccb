#include "egn/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace egn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::runtime_error("instance: " + where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed) known = known || item.key() == k;
        if (!known) fail(where, "unknown key '" + item.key() + "'");
    }
}

const json& require(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing key '") + key + "'");
    return *it;
}

PayoffMatrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
        j[0].size() != 2 || j[1].size() != 2)
        fail(where, "payoff matrix must be [[cc,cd],[dc,dd]]");
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!j[r][c].is_number()) fail(where, "payoff entries must be numbers");
    return {j[0][0].get<double>(), j[0][1].get<double>(), j[1][0].get<double>(),
            j[1][1].get<double>()};
}

}  // namespace

EgnInstance parse_instance(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("instance: ") + e.what());
    }
    if (!root.is_object()) fail("top level", "expected an object");
    reject_unknown_keys(root, "top level", {"graph", "payoffs"});

    const json& jg = require(root, "top level", "graph");
    if (!jg.is_object()) fail("graph", "expected an object");
    reject_unknown_keys(jg, "graph", {"n", "edges"});
    const json& jn = require(jg, "graph", "n");
    if (!jn.is_number_integer() || jn.get<long long>() < 1)
        fail("graph.n", "expected a positive integer");
    const int n = jn.get<int>();
    const json& je = require(jg, "graph", "edges");
    if (!je.is_array()) fail("graph.edges", "expected an array of [u,v] pairs");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < je.size(); ++i) {
        const json& pair = je[i];
        const std::string where = "graph.edges[" + std::to_string(i) + "]";
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer())
            fail(where, "expected [u,v] with integer endpoints");
        edges.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    Graph graph = [&] {
        try {
            return Graph::from_edge_list(n, edges);
        } catch (const std::exception& e) {
            fail("graph.edges", e.what());
        }
    }();

    const json& jp = require(root, "top level", "payoffs");
    if (!jp.is_object()) fail("payoffs", "expected an object");
    reject_unknown_keys(jp, "payoffs", {"default", "overrides"});
    const PayoffMatrix fallback = parse_matrix(require(jp, "payoffs", "default"),
                                               "payoffs.default");
    std::vector<PayoffMatrix> payoffs(n, fallback);
    if (auto it = jp.find("overrides"); it != jp.end()) {
        if (!it->is_object()) fail("payoffs.overrides", "expected an object");
        for (const auto& item : it->items()) {
            const std::string where = "payoffs.overrides['" + item.key() + "']";
            int v = 0;
            try {
                std::size_t pos = 0;
                v = std::stoi(item.key(), &pos);
                if (pos != item.key().size()) throw std::invalid_argument(item.key());
            } catch (const std::exception&) {
                fail(where, "key must be a vertex number");
            }
            if (v < 1 || v > n)
                fail(where, "vertex out of range 1.." + std::to_string(n));
            payoffs[v - 1] = parse_matrix(item.value(), where);
        }
    }
    return EgnInstance(std::move(graph), std::move(payoffs));
}

EgnInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_instance(buffer.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string instance_to_json(const EgnInstance& inst) {
    const Graph& g = inst.graph();
    json edges = json::array();
    for (int v = 0; v < g.num_vertices(); ++v)
        for (int w : g.neighbors(v))
            if (v < w) edges.push_back({v + 1, w + 1});

    auto matrix_json = [](const PayoffMatrix& b) {
        return json{{b.cc, b.cd}, {b.dc, b.dd}};
    };

    // The most common matrix becomes the default; the rest are overrides.
    std::map<std::array<double, 4>, int> tally;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const PayoffMatrix& b = inst.payoff(v);
        ++tally[{b.cc, b.cd, b.dc, b.dd}];
    }
    std::array<double, 4> best{};
    int best_count = -1;
    for (const auto& [key, count] : tally) {
        if (count > best_count) {
            best = key;
            best_count = count;
        }
    }
    const PayoffMatrix fallback{best[0], best[1], best[2], best[3]};
    json overrides = json::object();
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!(inst.payoff(v) == fallback))
            overrides[std::to_string(v + 1)] = matrix_json(inst.payoff(v));

    json payoffs{{"default", matrix_json(fallback)}};
    if (!overrides.empty()) payoffs["overrides"] = overrides;
    const json root{{"graph", {{"n", g.num_vertices()}, {"edges", edges}}},
                    {"payoffs", payoffs}};
    return root.dump(2) + "\n";
}

std::string export_dot(const Graph& g, PureProfile p) {
    if (p.n != g.num_vertices())
        throw std::invalid_argument("dot export: profile size does not match the graph");
    std::ostringstream out;
    out << "graph state {\n  node [style=filled];\n";
    for (int v = 0; v < g.num_vertices(); ++v)
        out << "  " << v + 1 << " [fillcolor=" << (p.bit(v) ? "yellow" : "red") << "];\n";
    for (int v = 0; v < g.num_vertices(); ++v)
        for (int w : g.neighbors(v))
            if (v < w) out << "  " << v + 1 << " -- " << w + 1 << ";\n";
    out << "}\n";
    return out.str();
}

std::string classification_report_json(const ProfileClassification& c) {
    json vertices = json::array();
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
        const VertexReport& r = c.vertices[v];
        vertices.push_back({{"vertex", v + 1},
                            {"lambda", r.lambda},
                            {"condition", to_string(r.condition)},
                            {"strict", r.strict},
                            {"weak", r.weak}});
    }
    const json root{{"profile", c.profile.bitstring()},
                    {"index", c.profile.index},
                    {"verdict", to_string(c.verdict)},
                    {"vertices", vertices}};
    return root.dump(2) + "\n";
}

std::string classification_report_text(const ProfileClassification& c) {
    std::ostringstream out;
    out << "profile " << c.profile.bitstring() << " (index " << c.profile.index
        << "): " << to_string(c.verdict) << "\n";
    out.precision(12);
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
        const VertexReport& r = c.vertices[v];
        out << "  vertex " << v + 1 << ": lambda=" << r.lambda << " ["
            << to_string(r.condition) << "] "
            << (r.strict ? "strict" : r.weak ? "weak" : "violated") << "\n";
    }
    return out.str();
}

std::string enumeration_csv_row(const ProfileClassification& c) {
    return std::to_string(c.profile.index) + "," + c.profile.bitstring() + "," +
           to_string(c.verdict);
}

std::string trajectory_csv(const Trajectory& t) {
    std::ostringstream out;
    out << "t";
    const std::size_t n = t.terminal.size();
    for (std::size_t v = 1; v <= n; ++v) out << ",x_" << v;
    out << "\n";
    out.precision(12);
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        out << t.times[i];
        for (double c : t.states[i]) out << "," << c;
        out << "\n";
    }
    return out.str();
}

std::string basin_report_json(const BasinReport& r) {
    std::int64_t samples = r.nonconverged;
    json converged = json::object();
    for (const auto& [index, count] : r.converged) {
        converged[PureProfile{index, r.n}.bitstring()] = count;
        samples += count;
    }
    const json root{{"samples", samples},
                    {"converged", converged},
                    {"nonconverged", r.nonconverged}};
    return root.dump(2) + "\n";
}

}  // namespace egn
