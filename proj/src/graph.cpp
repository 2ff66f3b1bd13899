#include "zf/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "zf/errors.hpp"

namespace zf {

VertexMask to_mask(const std::vector<int>& vs) {
    VertexMask m = 0;
    for (int v : vs) m |= bit(v);
    return m;
}

std::vector<int> to_vector(VertexMask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(lowest(m));
        m &= m - 1;
    }
    return out;
}

Graph::Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices)
        throw UnsupportedSize("graph order " + std::to_string(n) + " outside 0..64");
    adj_.assign(static_cast<std::size_t>(n), 0);
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_) throw DomainError("vertex " + std::to_string(v) + " out of range");
}

int Graph::size() const {
    int twice = 0;
    for (VertexMask m : adj_) twice += popcount(m);
    return twice / 2;
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw DomainError("loop at vertex " + std::to_string(u));
    adj_[static_cast<std::size_t>(u)] |= bit(v);
    adj_[static_cast<std::size_t>(v)] |= bit(u);
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[static_cast<std::size_t>(u)] >> v) & 1U;
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

bool Graph::has_isolated_vertex() const {
    return std::any_of(adj_.begin(), adj_.end(), [](VertexMask m) { return m == 0; });
}

bool Graph::is_connected() const {
    if (n_ == 0) return true;
    VertexMask seen = 1, frontier = 1;
    while (frontier) {
        VertexMask next = 0;
        for (int v : to_vector(frontier)) next |= neighbors(v);
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == all();
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u) {
        const VertexMask higher = u + 1 >= kMaxVertices ? 0 : ~(bit(u + 1) - 1);
        for (int v : to_vector(neighbors(u) & higher)) out.emplace_back(u, v);
    }
    return out;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.order() + b.order());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(u + a.order(), v + a.order());
    return g;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    Graph h(g.order());
    for (auto [u, v] : g.edges())
        h.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    return h;
}

// ---------------------------------------------------------------------------
// graph6

namespace {

constexpr int kMaxGraph6Order = 62;

std::size_t graph6_body_length(int n) {
    const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
    return (bits + 5) / 6;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
    if (text.empty()) throw ParseError("empty graph6 record", 0);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c < 63 || c > 126) throw ParseError("character outside 63..126", i);
    }
    const int n = static_cast<unsigned char>(text[0]) - 63;
    if (n > kMaxGraph6Order) throw UnsupportedSize("graph6 multi-byte size form is not supported");
    const std::size_t body = graph6_body_length(n);
    if (text.size() < body + 1) throw ParseError("truncated graph6 record", text.size());
    if (text.size() > body + 1) throw ParseError("trailing garbage after graph6 record", body + 1);

    Graph g(n);
    std::size_t k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            const int value = static_cast<unsigned char>(text[1 + k / 6]) - 63;
            if ((value >> (5 - static_cast<int>(k % 6))) & 1) g.add_edge(i, j);
        }
    }
    if (k % 6 != 0) {
        const int value = static_cast<unsigned char>(text[body]) - 63;
        if (value & ((1 << (6 - static_cast<int>(k % 6))) - 1))
            throw ParseError("nonzero padding bits", body);
    }
    return g;
}

std::string encode_graph6(const Graph& g) {
    const int n = g.order();
    if (n > kMaxGraph6Order) throw UnsupportedSize("graph6 encoding supports n <= 62");
    std::string out(1 + graph6_body_length(n), static_cast<char>(63));
    out[0] = static_cast<char>(n + 63);
    std::size_t k = 0;
    for (int j = 1; j < n; ++j) {
        const VertexMask nb = g.neighbors(j);
        for (int i = 0; i < j; ++i, ++k)
            if ((nb >> i) & 1) out[1 + k / 6] = static_cast<char>(out[1 + k / 6] + (1 << (5 - k % 6)));
    }
    return out;
}

std::vector<Graph> read_graph6_stream(std::istream& in) {
    std::vector<Graph> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(parse_graph6(line));
    }
    return out;
}

bool is_induced_path(const Graph& g, const VertexSeq& s) {
    VertexMask seen = 0;
    for (int v : s) {
        if (v < 0 || v >= g.order()) throw DomainError("vertex " + std::to_string(v) + " out of range");
        if (seen & bit(v)) throw InvalidSequence("vertex " + std::to_string(v) + " repeated");
        seen |= bit(v);
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        VertexMask expected = 0;
        if (i > 0) expected |= bit(s[i - 1]);
        if (i + 1 < s.size()) expected |= bit(s[i + 1]);
        if ((g.neighbors(s[i]) & seen) != expected) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Canonical form: exhaustive minimisation of the upper-triangle bit string over
// all relabelings. Branches whose completed columns already exceed the best
// string are cut; the minimum found is the same as full enumeration.

namespace {

struct CanonicalSearch {
    const Graph& g;
    int n;
    std::vector<int> perm;
    std::vector<std::uint32_t> columns;  // columns[j] = bits for (0..j-1, j), MSB first
    std::vector<std::uint32_t> best;
    bool have_best = false;
    VertexMask used = 0;

    explicit CanonicalSearch(const Graph& graph)
        : g(graph), n(graph.order()), perm(static_cast<std::size_t>(n)),
          columns(static_cast<std::size_t>(n)), best(static_cast<std::size_t>(n)) {}

    // -1: prefix smaller than best, 0: equal, 1: greater
    int compare_prefix(int upto) const {
        if (!have_best) return -1;
        for (int j = 0; j <= upto; ++j) {
            if (columns[static_cast<std::size_t>(j)] != best[static_cast<std::size_t>(j)])
                return columns[static_cast<std::size_t>(j)] < best[static_cast<std::size_t>(j)] ? -1 : 1;
        }
        return 0;
    }

    void run(int depth) {
        if (depth == n) {
            if (compare_prefix(n - 1) < 0) {
                best = columns;
                have_best = true;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used & bit(v)) continue;
            std::uint32_t col = 0;
            const VertexMask nb = g.neighbors(v);
            for (int i = 0; i < depth; ++i) col = (col << 1) | ((nb >> perm[static_cast<std::size_t>(i)]) & 1U);
            columns[static_cast<std::size_t>(depth)] = col;
            if (compare_prefix(depth) > 0) continue;
            perm[static_cast<std::size_t>(depth)] = v;
            used |= bit(v);
            run(depth + 1);
            used &= ~bit(v);
        }
    }
};

std::string encode_columns(int n, const std::vector<std::uint32_t>& columns) {
    Graph h(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if ((columns[static_cast<std::size_t>(j)] >> (j - 1 - i)) & 1U) h.add_edge(i, j);
    return encode_graph6(h);
}

}  // namespace

std::string canonical_form(const Graph& g) {
    if (g.order() > 10) throw UnsupportedSize("canonical_form supports n <= 10");
    if (g.order() == 0) return encode_graph6(g);
    CanonicalSearch search(g);
    search.run(0);
    return encode_columns(g.order(), search.best);
}

std::vector<Graph> enumerate_connected_subcubic(int n) {
    if (n < 1 || n > 8) throw UnsupportedSize("built-in enumeration supports 1 <= n <= 8");
    std::set<std::string> current{encode_graph6(Graph(1))};
    for (int order = 2; order <= n; ++order) {
        std::set<std::string> next;
        for (const auto& code : current) {
            const Graph base = parse_graph6(code);
            std::vector<int> open;
            for (int v = 0; v < base.order(); ++v)
                if (base.degree(v) <= 2) open.push_back(v);
            const auto k = open.size();
            for (std::uint32_t subset = 1; subset < (1U << k); ++subset) {
                if (popcount(subset) > 3) continue;
                Graph ext(order);
                for (auto [u, v] : base.edges()) ext.add_edge(u, v);
                for (std::size_t i = 0; i < k; ++i)
                    if ((subset >> i) & 1U) ext.add_edge(open[i], order - 1);
                next.insert(canonical_form(ext));
            }
        }
        current = std::move(next);
    }
    std::vector<Graph> out;
    out.reserve(current.size());
    for (const auto& code : current) out.push_back(parse_graph6(code));
    return out;
}

// ---------------------------------------------------------------------------
// Named families

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    if (n < 3) throw DomainError("cycle needs at least 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
    return g;
}

Graph empty_graph(int n) { return Graph(n); }

Graph figure8_graph(const std::vector<int>& lengths) {
    if (lengths.size() != 5) throw DomainError("figure-8 family needs five pendant lengths");
    int n = 5;
    for (int len : lengths) {
        if (len < 1) throw DomainError("pendant path lengths must be >= 1");
        n += len;
    }
    Graph g(n);
    for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
    int next = 5;
    for (int i = 0; i < 5; ++i) {
        int prev = i;
        for (int s = 0; s < lengths[static_cast<std::size_t>(i)]; ++s) {
            g.add_edge(prev, next);
            prev = next++;
        }
    }
    return g;
}

namespace {

bool parse_int_list(std::string_view text, std::vector<int>& out) {
    out.clear();
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto token = text.substr(0, comma);
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) return false;
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
        if (text.empty()) return false;
    }
    return !out.empty();
}

}  // namespace

bool try_parse_builtin(std::string_view name, Graph& out) {
    std::vector<int> args;
    if (name.starts_with("fig8:")) {
        if (!parse_int_list(name.substr(5), args) || args.size() != 5) return false;
        out = figure8_graph(args);
        return true;
    }
    if (name.size() < 2) return false;
    const char family = name[0];
    if (!parse_int_list(name.substr(1), args)) return false;
    for (int a : args)
        if (a < 1 || a > kMaxVertices) return false;
    switch (family) {
        case 'K':
            if (args.size() == 1) out = complete_graph(args[0]);
            else if (args.size() == 2) out = complete_bipartite(args[0], args[1]);
            else return false;
            return true;
        case 'P':
            if (args.size() != 1) return false;
            out = path_graph(args[0]);
            return true;
        case 'C':
            if (args.size() != 1 || args[0] < 3) return false;
            out = cycle_graph(args[0]);
            return true;
        case 'E':
            if (args.size() != 1) return false;
            out = empty_graph(args[0]);
            return true;
        default:
            return false;
    }
}

}  // namespace zf
