#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zf {

// Bit mask over vertex ids; graphs are capped at 64 vertices.
using VertexMask = std::uint64_t;
// Ordered list of distinct vertex ids.
using VertexSeq = std::vector<int>;
using Edge = std::pair<int, int>;

inline constexpr int kMaxVertices = 64;

inline VertexMask bit(int v) { return VertexMask{1} << v; }
inline int popcount(VertexMask m) { return __builtin_popcountll(m); }
inline int lowest(VertexMask m) { return __builtin_ctzll(m); }

VertexMask to_mask(const std::vector<int>& vs);
std::vector<int> to_vector(VertexMask m);

// Simple undirected graph on vertices 0..n-1 stored as adjacency bit masks.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, const std::vector<Edge>& edges);

    int order() const noexcept { return n_; }
    int size() const;  // edge count

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    VertexMask neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return popcount(neighbors(v)); }
    int max_degree() const;
    bool has_isolated_vertex() const;
    bool is_connected() const;
    VertexMask all() const { return n_ == 64 ? ~VertexMask{0} : bit(n_) - 1; }

    // Edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    bool operator==(const Graph& other) const = default;

private:
    void check_vertex(int v) const;

    int n_ = 0;
    std::vector<VertexMask> adj_;
};

// Disjoint union, vertices of `b` shifted by a.order().
Graph disjoint_union(const Graph& a, const Graph& b);
// Relabel: vertex v of g becomes perm[v].
Graph relabel(const Graph& g, const std::vector<int>& perm);

// graph6 codec (single-byte size form, n <= 62).
Graph parse_graph6(std::string_view text);
std::string encode_graph6(const Graph& g);
// Reads one graph6 record per line; blank and '#'-prefixed lines are skipped.
std::vector<Graph> read_graph6_stream(std::istream& in);

bool is_induced_path(const Graph& g, const VertexSeq& s);

// Minimum graph6 string over all relabelings; equal strings iff isomorphic. n <= 10.
std::string canonical_form(const Graph& g);

// One representative per isomorphism class of connected graphs with max degree <= 3,
// sorted by canonical form; vertices carry the canonical labeling. 1 <= n <= 8.
std::vector<Graph> enumerate_connected_subcubic(int n);

// Named families.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph empty_graph(int n);
// 5-cycle 0..4 with a pendant path of `lengths[i]` edges hanging from cycle vertex i.
Graph figure8_graph(const std::vector<int>& lengths);
// Builtin grammar: K{n}, P{n}, C{n}, K{a},{b}, E{n} (edgeless), fig8:l1,l2,l3,l4,l5.
// Returns false if `name` is not a builtin token.
bool try_parse_builtin(std::string_view name, Graph& out);

}  // namespace zf
