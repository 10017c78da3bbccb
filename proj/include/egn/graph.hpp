#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace egn {

// Subset and profile enumerations index into machine-word bitmasks.
inline constexpr int kEnumerationGuard = 30;

// Undirected simple graph. Vertices are 0-based in the API; the text and
// JSON formats (and all printed reports) use 1-based ids.
class Graph {
public:
    // Edge endpoints are 1-based, matching the file formats. Duplicate
    // edges collapse; self-loops and out-of-range endpoints are rejected.
    static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges);

    static Graph path(int n);

    // Vertex 1 is the center.
    static Graph star(int n);

    // Path of stalk_len vertices; branch_counts[i] pendant leaves attach to
    // stalk vertex i+1. Leaves are numbered from stalk_len+1 in stalk order.
    static Graph caterpillar(int stalk_len, const std::vector<int>& branch_counts);

    // G(n,p) with p = avg_degree/(n-1), resampled until connected (at most
    // 1000 attempts, then an error). Deterministic in (n, avg_degree, seed).
    static Graph erdos_renyi(int n, double avg_degree, std::uint64_t seed);

    int num_vertices() const { return n_; }
    int num_edges() const { return edge_count_; }
    int degree(int v) const { return static_cast<int>(nbrs_[v].size()); }
    const std::vector<int>& neighbors(int v) const { return nbrs_[v]; }
    bool adjacent(int v, int w) const;
    int max_degree() const;
    bool connected() const;

    // Bit w set iff w is adjacent to v. Only meaningful for n <= 64.
    std::uint64_t neighbor_mask(int v) const { return nbr_mask_[v]; }

    bool operator==(const Graph& other) const;

private:
    explicit Graph(int n);
    void add_edge(int u, int v);  // 0-based, ignores duplicates
    void sort_adjacency();

    int n_ = 0;
    int edge_count_ = 0;
    std::vector<std::vector<int>> nbrs_;
    std::vector<std::uint64_t> nbr_mask_;  // valid when n_ <= 64
};

// Vertex subset as a bitmask: bit i = vertex i (0-based). Usable for
// graphs with at most 64 vertices; enumeration is guarded at 30.
using VertexSet = std::uint64_t;

bool is_independent(const Graph& g, VertexSet s);
bool is_dominating(const Graph& g, VertexSet s);

// All subsets that are both independent and dominating, ascending bitmask
// order. Rejects graphs above the enumeration guard.
std::vector<VertexSet> enumerate_independent_dominating_sets(const Graph& g);

// "{1,3}" with 1-based ids.
std::string format_vertex_set(VertexSet s, int n);

// Edge-list text format: first line "n <count>", then one "u v" pair per
// line, 1-based; '#' starts a comment.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace egn
