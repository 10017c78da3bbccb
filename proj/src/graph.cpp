#include "egn/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace egn {

Graph::Graph(int n) : n_(n), nbrs_(n), nbr_mask_(n, 0) {
    if (n <= 0) throw std::invalid_argument("graph: vertex count must be positive");
}

void Graph::add_edge(int u, int v) {
    if (n_ <= 64) {
        if (nbr_mask_[u] >> v & 1u) return;
        nbr_mask_[u] |= std::uint64_t{1} << v;
        nbr_mask_[v] |= std::uint64_t{1} << u;
    } else {
        if (std::find(nbrs_[u].begin(), nbrs_[u].end(), v) != nbrs_[u].end()) return;
    }
    nbrs_[u].push_back(v);
    nbrs_[v].push_back(u);
    ++edge_count_;
}

void Graph::sort_adjacency() {
    for (auto& a : nbrs_) std::sort(a.begin(), a.end());
}

bool Graph::adjacent(int v, int w) const {
    if (n_ <= 64) return nbr_mask_[v] >> w & 1u;
    return std::binary_search(nbrs_[v].begin(), nbrs_[v].end(), w);
}

int Graph::max_degree() const {
    int m = 0;
    for (int v = 0; v < n_; ++v) m = std::max(m, degree(v));
    return m;
}

bool Graph::connected() const {
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : nbrs_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n_;
}

bool Graph::operator==(const Graph& other) const {
    return n_ == other.n_ && nbrs_ == other.nbrs_;
}

Graph Graph::from_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 1 || u > n || v < 1 || v > n) {
            std::ostringstream msg;
            msg << "edge (" << u << "," << v << "): endpoint out of range 1.." << n;
            throw std::invalid_argument(msg.str());
        }
        if (u == v) {
            std::ostringstream msg;
            msg << "edge (" << u << "," << v << "): self-loops are not allowed";
            throw std::invalid_argument(msg.str());
        }
        g.add_edge(u - 1, v - 1);
    }
    g.sort_adjacency();
    return g;
}

Graph Graph::path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    g.sort_adjacency();
    return g;
}

Graph Graph::star(int n) {
    if (n < 2) throw std::invalid_argument("star: need at least 2 vertices");
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(0, v);
    g.sort_adjacency();
    return g;
}

Graph Graph::caterpillar(int stalk_len, const std::vector<int>& branch_counts) {
    if (stalk_len <= 0) throw std::invalid_argument("caterpillar: stalk length must be positive");
    if (static_cast<int>(branch_counts.size()) != stalk_len)
        throw std::invalid_argument("caterpillar: branch_counts length must equal stalk length");
    int total = stalk_len;
    for (int b : branch_counts) {
        if (b < 0) throw std::invalid_argument("caterpillar: branch counts must be non-negative");
        total += b;
    }
    Graph g(total);
    for (int v = 0; v + 1 < stalk_len; ++v) g.add_edge(v, v + 1);
    int leaf = stalk_len;
    for (int s = 0; s < stalk_len; ++s)
        for (int b = 0; b < branch_counts[s]; ++b) g.add_edge(s, leaf++);
    g.sort_adjacency();
    return g;
}

namespace {

// mt19937_64 output mapped to [0,1); fully specified by the standard, so
// generation is reproducible across platforms.
double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Graph Graph::erdos_renyi(int n, double avg_degree, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("erdos_renyi: need at least 2 vertices");
    if (!(avg_degree > 0.0) || !(avg_degree < n))
        throw std::invalid_argument("erdos_renyi: average degree must lie in (0, n)");
    const double p = avg_degree / (n - 1);
    std::mt19937_64 rng(seed);
    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (unit_draw(rng) < p) g.add_edge(u, v);
        if (g.connected()) {
            g.sort_adjacency();
            return g;
        }
    }
    std::ostringstream msg;
    msg << "erdos_renyi: no connected sample in " << kMaxAttempts << " attempts (n=" << n
        << ", avg_degree=" << avg_degree << "); raise avg_degree";
    throw std::runtime_error(msg.str());
}

bool is_independent(const Graph& g, VertexSet s) {
    const int n = g.num_vertices();
    for (int v = 0; v < n; ++v)
        if (s >> v & 1u)
            if (g.neighbor_mask(v) & s) return false;
    return true;
}

bool is_dominating(const Graph& g, VertexSet s) {
    const int n = g.num_vertices();
    for (int v = 0; v < n; ++v)
        if (!(s >> v & 1u))
            if (!(g.neighbor_mask(v) & s)) return false;
    return true;
}

std::vector<VertexSet> enumerate_independent_dominating_sets(const Graph& g) {
    const int n = g.num_vertices();
    if (n > kEnumerationGuard) {
        std::ostringstream msg;
        msg << "independent dominating set enumeration scans 2^n subsets; n=" << n
            << " exceeds the guard of " << kEnumerationGuard;
        throw std::invalid_argument(msg.str());
    }
    std::vector<VertexSet> out;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t s = 0; s < total; ++s)
        if (is_independent(g, s) && is_dominating(g, s)) out.push_back(s);
    return out;
}

std::string format_vertex_set(VertexSet s, int n) {
    std::string out = "{";
    bool first = true;
    for (int v = 0; v < n; ++v) {
        if (s >> v & 1u) {
            if (!first) out += ",";
            out += std::to_string(v + 1);
            first = false;
        }
    }
    out += "}";
    return out;
}

namespace {

// Strips '#' comments, returns whitespace tokens per line.
std::vector<std::string> tokenize_line(const std::string& raw) {
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string t;
    while (in >> t) tokens.push_back(t);
    return tokens;
}

long parse_int(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        long value = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                 ": expected an integer, got '" + tok + "'");
    }
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::string raw;
    int line_no = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, raw)) {
        ++line_no;
        auto tokens = tokenize_line(raw);
        if (tokens.empty()) continue;
        if (n < 0) {
            if (tokens.size() != 2 || tokens[0] != "n")
                throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                         ": expected header 'n <count>'");
            n = static_cast<int>(parse_int(tokens[1], line_no));
            if (n <= 0)
                throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                         ": vertex count must be positive");
            continue;
        }
        if (tokens.size() != 2)
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": expected 'u v'");
        edges.emplace_back(static_cast<int>(parse_int(tokens[0], line_no)),
                           static_cast<int>(parse_int(tokens[1], line_no)));
    }
    if (n < 0) throw std::runtime_error("edge list: missing 'n <count>' header");
    return Graph::from_edge_list(n, edges);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list file: " + path);
    return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << "n " << g.num_vertices() << "\n";
    for (int v = 0; v < g.num_vertices(); ++v)
        for (int w : g.neighbors(v))
            if (v < w) out << v + 1 << " " << w + 1 << "\n";
}

}  // namespace egn
