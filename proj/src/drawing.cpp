#include "zf/drawing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "zf/errors.hpp"
#include "zf/forcing.hpp"

namespace zf {

std::vector<int> StandardDrawing::row_of() const {
    std::vector<int> out(static_cast<std::size_t>(host.order()), -1);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int v : rows[r])
            if (v >= 0 && v < host.order()) out[static_cast<std::size_t>(v)] = static_cast<int>(r);
    return out;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

struct Point {
    Rational x;
    Rational y;
};

bool within(const Rational& a, const Rational& b, const Rational& c) { return std::min(a, b) <= c && c <= std::max(a, b); }

// r on segment pq, given collinearity.
bool on_segment(const Point& p, const Point& q, const Point& r) { return within(p.x, q.x, r.x) && within(p.y, q.y, r.y); }

int orient(const Point& a, const Point& b, const Point& c) { return zf::orient(a.x, a.y, b.x, b.y, c.x, c.y); }

bool segments_meet(const Point& a, const Point& b, const Point& c, const Point& d) {
    const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) || (o3 == 0 && on_segment(c, d, a)) ||
           (o4 == 0 && on_segment(c, d, b));
}

std::string edge_name(int u, int v) { return std::to_string(u) + "-" + std::to_string(v); }

}  // namespace

DrawingReport verify_drawing(const Graph& g, const StandardDrawing& d) {
    DrawingReport rep;
    auto fail = [&](const std::string& what) {
        rep.ok = false;
        rep.violations.push_back(what);
    };
    const int n = g.order();
    if (static_cast<int>(d.x.size()) != n) {
        fail("expected " + std::to_string(n) + " x coordinates, got " + std::to_string(d.x.size()));
        return rep;
    }
    std::vector<int> row(static_cast<std::size_t>(n), -1);
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
        for (int v : d.rows[r]) {
            if (v < 0 || v >= n) {
                fail("row vertex " + std::to_string(v) + " out of range");
                return rep;
            }
            if (row[static_cast<std::size_t>(v)] != -1) {
                fail("vertex " + std::to_string(v) + " appears twice");
                return rep;
            }
            row[static_cast<std::size_t>(v)] = static_cast<int>(r);
        }
    }
    for (int v = 0; v < n; ++v)
        if (row[static_cast<std::size_t>(v)] == -1) fail("vertex " + std::to_string(v) + " is in no row");
    if (!rep.ok) return rep;

    for (std::size_t r = 0; r < d.rows.size(); ++r) {
        const auto& seq = d.rows[r];
        if (!is_induced_path(g, seq)) fail("row " + std::to_string(r) + " is not an induced path");
        for (std::size_t i = 0; i + 1 < seq.size(); ++i)
            if (!(d.x[static_cast<std::size_t>(seq[i])] < d.x[static_cast<std::size_t>(seq[i + 1])]))
                fail("x does not increase from " + std::to_string(seq[i]) + " to " + std::to_string(seq[i + 1]));
    }
    std::vector<int> pos(static_cast<std::size_t>(n), 0);
    for (const auto& seq : d.rows)
        for (std::size_t i = 0; i < seq.size(); ++i) pos[static_cast<std::size_t>(seq[i])] = static_cast<int>(i);

    auto pt = [&](int v) { return Point{d.x[static_cast<std::size_t>(v)], Rational(row[static_cast<std::size_t>(v)])}; };
    std::vector<Edge> segs;
    for (auto [u, v] : g.edges()) {
        if (row[static_cast<std::size_t>(u)] != row[static_cast<std::size_t>(v)]) {
            segs.emplace_back(u, v);
        } else if (std::abs(pos[static_cast<std::size_t>(u)] - pos[static_cast<std::size_t>(v)]) != 1) {
            fail("row edge " + edge_name(u, v) + " joins non-consecutive vertices");
        }
    }

    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto [a, b] = segs[i];
        for (int v = 0; v < n; ++v) {
            if (v == a || v == b) continue;
            if (orient(pt(a), pt(b), pt(v)) == 0 && on_segment(pt(a), pt(b), pt(v)))
                fail("segment " + edge_name(a, b) + " passes through vertex " + std::to_string(v));
        }
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const auto [c, e] = segs[j];
            const int shared = (a == c || a == e) ? a : (b == c || b == e) ? b : -1;
            if (shared == -1) {
                if (segments_meet(pt(a), pt(b), pt(c), pt(e)))
                    fail("segments " + edge_name(a, b) + " and " + edge_name(c, e) + " cross");
                continue;
            }
            // Sharing an endpoint: only a collinear overlap is a violation.
            const int p = shared == a ? b : a;
            const int q = shared == c ? e : c;
            const Point s = pt(shared), sp = pt(p), sq = pt(q);
            if (orient(s, sp, sq) == 0 && ((sp.x - s.x) * (sq.x - s.x) + (sp.y - s.y) * (sq.y - s.y)).sign() > 0)
                fail("segments " + edge_name(a, b) + " and " + edge_name(c, e) + " overlap");
        }
    }
    return rep;
}

std::vector<int> leftmost_set(const StandardDrawing& d) {
    std::vector<int> out;
    for (const auto& seq : d.rows) {
        if (seq.empty()) continue;
        out.push_back(*std::min_element(seq.begin(), seq.end(), [&](int a, int b) {
            return d.x[static_cast<std::size_t>(a)] < d.x[static_cast<std::size_t>(b)];
        }));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Exact realization for up to three rows

namespace {

void rescale_to_grid(std::vector<Rational>& xs) {
    if (xs.empty()) return;
    std::int64_t lcm = 1;
    for (const auto& v : xs) lcm = std::lcm(lcm, v.den());
    std::vector<std::int64_t> ints;
    for (const auto& v : xs) ints.push_back((v * Rational(lcm)).num());
    const std::int64_t lo = *std::min_element(ints.begin(), ints.end());
    std::int64_t g = 0;
    for (auto& v : ints) {
        v -= lo;
        g = std::gcd(g, v);
    }
    if (g == 0) g = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = Rational(ints[i] / g);
}

bool has_inversion(const std::vector<std::pair<int, int>>& pairs) {
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < pairs.size(); ++j)
            if (pairs[i].first < pairs[j].first && pairs[i].second > pairs[j].second) return true;
    return false;
}

std::optional<std::vector<Rational>> realize_three(const Graph& g, const std::vector<VertexSeq>& rows,
                                                   const std::vector<int>& row, const std::vector<int>& pos) {
    const auto& top = rows[0];
    const auto& mid = rows[1];
    const auto& bot = rows[2];
    std::vector<std::pair<int, int>> tm, mb, tb;
    for (auto [u, v] : g.edges()) {
        int ru = row[static_cast<std::size_t>(u)], rv = row[static_cast<std::size_t>(v)];
        if (ru == rv) continue;
        if (ru > rv) std::swap(u, v), std::swap(ru, rv);
        const std::pair<int, int> p{pos[static_cast<std::size_t>(u)], pos[static_cast<std::size_t>(v)]};
        if (ru == 0 && rv == 1) tm.push_back(p);
        else if (ru == 1 && rv == 2) mb.push_back(p);
        else tb.push_back(p);
    }
    if (has_inversion(tm) || has_inversion(mb) || has_inversion(tb)) return std::nullopt;

    // Each long segment pierces the middle row in a gap between middle vertices.
    std::sort(tb.begin(), tb.end());
    const int m = static_cast<int>(mid.size());
    std::vector<int> lo(tb.size(), 0), hi(tb.size(), m);
    for (std::size_t l = 0; l < tb.size(); ++l) {
        const auto [t, b] = tb[l];
        for (auto [t2, i] : tm) {
            if (t2 < t) lo[l] = std::max(lo[l], i + 1);
            if (t2 > t) hi[l] = std::min(hi[l], i);
        }
        for (auto [i, b2] : mb) {
            if (b2 < b) lo[l] = std::max(lo[l], i + 1);
            if (b2 > b) hi[l] = std::min(hi[l], i);
        }
    }
    for (std::size_t l = 1; l < tb.size(); ++l) lo[l] = std::max(lo[l], lo[l - 1]);
    for (std::size_t l = 0; l < tb.size(); ++l)
        if (lo[l] > hi[l]) return std::nullopt;

    std::vector<Rational> x(static_cast<std::size_t>(g.order()));
    for (std::size_t j = 0; j < top.size(); ++j) x[static_cast<std::size_t>(top[j])] = Rational(2 * static_cast<std::int64_t>(j));
    for (std::size_t j = 0; j < bot.size(); ++j) x[static_cast<std::size_t>(bot[j])] = Rational(2 * static_cast<std::int64_t>(j));
    const bool lone_top = top.size() == 1;
    int lone_bottom_nb = -1;
    if (lone_top) {
        for (auto [t, b] : tb)
            if (lone_bottom_nb == -1 || b < lone_bottom_nb) lone_bottom_nb = b;
        if (lone_bottom_nb != -1) x[static_cast<std::size_t>(top[0])] = x[static_cast<std::size_t>(bot[static_cast<std::size_t>(lone_bottom_nb)])];
    }

    std::vector<Rational> pierce;
    for (auto [t, b] : tb)
        pierce.push_back((x[static_cast<std::size_t>(top[static_cast<std::size_t>(t)])] +
                          x[static_cast<std::size_t>(bot[static_cast<std::size_t>(b)])]) /
                         Rational(2));

    // Middle vertex i sits between the pierces with gap <= i and those with gap > i.
    int i = 0;
    while (i < m) {
        std::optional<Rational> left, right;
        for (std::size_t l = 0; l < tb.size(); ++l) {
            if (lo[l] <= i) left = left ? std::max(*left, pierce[l]) : pierce[l];
            else right = right ? std::min(*right, pierce[l]) : pierce[l];
        }
        int j = i;
        while (j + 1 < m) {
            bool split = false;
            for (std::size_t l = 0; l < tb.size(); ++l) split |= lo[l] == j + 1;
            if (split) break;
            ++j;
        }
        const int cnt = j - i + 1;
        for (int q = 0; q < cnt; ++q) {
            Rational v;
            if (left && right) v = *left + (*right - *left) * Rational(q + 1, cnt + 1);
            else if (left) v = *left + Rational(q + 1);
            else if (right) v = *right - Rational(cnt - q);
            else v = Rational(2 * static_cast<std::int64_t>(i + q));
            x[static_cast<std::size_t>(mid[static_cast<std::size_t>(i + q)])] = v;
        }
        i = j + 1;
    }

    if (lone_top && lone_bottom_nb == -1) {
        const int z = top[0];
        std::optional<Rational> lo_x, hi_x;
        for (int u : to_vector(g.neighbors(z))) {
            const Rational& v = x[static_cast<std::size_t>(u)];
            lo_x = lo_x ? std::min(*lo_x, v) : v;
            hi_x = hi_x ? std::max(*hi_x, v) : v;
        }
        x[static_cast<std::size_t>(z)] = lo_x ? (*lo_x + *hi_x) / Rational(2) : Rational(0);
    }
    return x;
}

}  // namespace

std::optional<StandardDrawing> realize_rows(const Graph& g, const std::vector<VertexSeq>& rows) {
    const int n = g.order();
    if (rows.size() > 3) throw UnsupportedInput("exact realization handles at most three rows");
    std::vector<int> row(static_cast<std::size_t>(n), -1), pos(static_cast<std::size_t>(n), -1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            const int v = rows[r][i];
            if (v < 0 || v >= n || row[static_cast<std::size_t>(v)] != -1)
                throw ContractError("rows must partition the vertex set");
            row[static_cast<std::size_t>(v)] = static_cast<int>(r);
            pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
    }
    if (std::count(row.begin(), row.end(), -1) > 0) throw ContractError("rows must partition the vertex set");
    for (const auto& seq : rows)
        if (!is_induced_path(g, seq)) return std::nullopt;

    StandardDrawing d{g, rows, std::vector<Rational>(static_cast<std::size_t>(n))};
    if (rows.size() <= 2) {
        if (rows.size() == 2) {
            std::vector<std::pair<int, int>> cross;
            for (auto [u, v] : g.edges())
                if (row[static_cast<std::size_t>(u)] != row[static_cast<std::size_t>(v)]) {
                    if (row[static_cast<std::size_t>(u)] == 1) std::swap(u, v);
                    cross.emplace_back(pos[static_cast<std::size_t>(u)], pos[static_cast<std::size_t>(v)]);
                }
            if (has_inversion(cross)) return std::nullopt;
        }
        for (int v = 0; v < n; ++v) d.x[static_cast<std::size_t>(v)] = Rational(pos[static_cast<std::size_t>(v)]);
    } else {
        auto x = realize_three(g, rows, row, pos);
        if (!x) return std::nullopt;
        rescale_to_grid(*x);
        d.x = std::move(*x);
    }
    const auto rep = verify_drawing(g, d);
    if (!rep.ok) throw InternalLogicError("realized rows fail verification: " + rep.violations.front());
    return d;
}

// ---------------------------------------------------------------------------
// Ladder

namespace {

// Rows of vertex-disjoint sequences: chain index and position per vertex.
struct PathIndex {
    std::vector<const VertexSeq*> paths;
    std::vector<int> which, pos;

    PathIndex(const Graph& g, std::vector<const VertexSeq*> ps) : paths(std::move(ps)) {
        which.assign(static_cast<std::size_t>(g.order()), -1);
        pos.assign(static_cast<std::size_t>(g.order()), -1);
        for (std::size_t p = 0; p < paths.size(); ++p) {
            for (std::size_t i = 0; i < paths[p]->size(); ++i) {
                const int v = (*paths[p])[i];
                if (v < 0 || v >= g.order()) throw DomainError("vertex " + std::to_string(v) + " out of range");
                if (which[static_cast<std::size_t>(v)] != -1)
                    throw ContractError("vertex " + std::to_string(v) + " lies on two paths");
                which[static_cast<std::size_t>(v)] = static_cast<int>(p);
                pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
            }
            if (!is_induced_path(g, *paths[p])) throw ContractError("path " + std::to_string(p) + " is not induced");
        }
    }
    int of(int v) const { return which[static_cast<std::size_t>(v)]; }
    int at(int v) const { return pos[static_cast<std::size_t>(v)]; }
    bool before(int u, int v) const { return of(u) == of(v) && of(u) != -1 && at(u) < at(v); }
};

}  // namespace

LadderDrawing ladder_drawing(const Graph& g, const VertexSeq& r1, const VertexSeq& r2) {
    const PathIndex idx(g, {&r1, &r2});
    std::vector<Edge> cross;  // (top, bottom)
    for (auto [u, v] : g.edges()) {
        if (idx.of(u) == -1 || idx.of(v) == -1 || idx.of(u) == idx.of(v)) continue;
        if (idx.of(u) == 1) std::swap(u, v);
        cross.emplace_back(u, v);
    }
    // Non-consecutive neighbours across.
    for (const VertexSeq* seq : {&r1, &r2}) {
        for (int v : *seq) {
            int lo = -1, hi = -1;
            for (int u : to_vector(g.neighbors(v))) {
                if (idx.of(u) == -1 || idx.of(u) == idx.of(v)) continue;
                if (lo == -1 || idx.at(u) < idx.at(lo)) lo = u;
                if (hi == -1 || idx.at(u) > idx.at(hi)) hi = u;
            }
            if (lo != -1 && idx.at(hi) - idx.at(lo) >= 2)
                throw NotLadderDrawable("vertex " + std::to_string(v) + " has non-consecutive neighbours " +
                                        std::to_string(lo) + " and " + std::to_string(hi));
        }
    }
    for (auto [a, b] : cross)
        for (auto [c, d] : cross)
            if (idx.at(a) < idx.at(c) && idx.at(b) > idx.at(d))
                throw NotLadderDrawable("edges " + edge_name(a, b) + " and " + edge_name(c, d) + " cross");

    LadderDrawing out;
    out.top = r1;
    out.bottom = r2;
    for (const VertexSeq* seq : {&r1, &r2}) {
        for (int u : *seq) {
            std::vector<int> across;
            for (int w : to_vector(g.neighbors(u)))
                if (idx.of(w) != -1 && idx.of(w) != idx.of(u)) across.push_back(w);
            if (across.size() < 2) continue;
            std::sort(across.begin(), across.end(), [&](int p, int q) { return idx.at(p) < idx.at(q); });
            const std::pair<int, int> pair{across[0], across[1]};
            if (std::find(out.thick_vertices.begin(), out.thick_vertices.end(), pair) == out.thick_vertices.end())
                out.thick_vertices.push_back(pair);
            out.thick_edges.push_back({u, pair});
        }
    }

    // Segments are the connected groups of cross edges, left to right.
    std::sort(cross.begin(), cross.end(), [&](const Edge& p, const Edge& q) {
        return std::pair{idx.at(p.first), idx.at(p.second)} < std::pair{idx.at(q.first), idx.at(q.second)};
    });
    for (auto [a, b] : cross) {
        if (!out.segments.empty()) {
            auto& last = out.segments.back();
            const bool joins = std::find(last.top.begin(), last.top.end(), a) != last.top.end() ||
                               std::find(last.bottom.begin(), last.bottom.end(), b) != last.bottom.end();
            if (joins) {
                if (std::find(last.top.begin(), last.top.end(), a) == last.top.end()) last.top.push_back(a);
                if (std::find(last.bottom.begin(), last.bottom.end(), b) == last.bottom.end()) last.bottom.push_back(b);
                continue;
            }
        }
        out.segments.push_back({{a}, {b}});
    }

    const int m = static_cast<int>(out.segments.size());
    auto first_top = [&](int i) { return idx.at(out.segments[static_cast<std::size_t>(i)].top.front()); };
    auto last_top = [&](int i) { return idx.at(out.segments[static_cast<std::size_t>(i)].top.back()); };
    auto first_bot = [&](int i) { return idx.at(out.segments[static_cast<std::size_t>(i)].bottom.front()); };
    auto last_bot = [&](int i) { return idx.at(out.segments[static_cast<std::size_t>(i)].bottom.back()); };
    auto collect = [&](int tlo, int thi, int blo, int bhi) {
        std::vector<int> mem;
        for (int v : r1)
            if (idx.at(v) >= tlo && idx.at(v) <= thi) mem.push_back(v);
        for (int v : r2)
            if (idx.at(v) >= blo && idx.at(v) <= bhi) mem.push_back(v);
        std::sort(mem.begin(), mem.end());
        return mem;
    };
    const int big = g.order();
    if (m == 0) {
        out.sections.push_back({0, -1, -1, -1, -1, collect(0, big, 0, big)});
    } else {
        const auto& s0 = out.segments.front();
        if (first_top(0) > 0 || first_bot(0) > 0)
            out.sections.push_back({0, -1, -1, s0.top.front(), s0.bottom.front(), collect(0, last_top(0), 0, last_bot(0))});
        for (int i = 0; i + 1 < m; ++i) {
            const auto& l = out.segments[static_cast<std::size_t>(i)];
            const auto& r = out.segments[static_cast<std::size_t>(i + 1)];
            out.sections.push_back({i + 1, l.top.front(), l.bottom.front(), r.top.front(), r.bottom.front(),
                                    collect(first_top(i), last_top(i + 1), first_bot(i), last_bot(i + 1))});
        }
        const auto& sm = out.segments.back();
        if (last_top(m - 1) + 1 < static_cast<int>(r1.size()) || last_bot(m - 1) + 1 < static_cast<int>(r2.size()))
            out.sections.push_back({m, sm.top.front(), sm.bottom.front(), -1, -1,
                                    collect(first_top(m - 1), big, first_bot(m - 1), big)});
    }

    // Column sweep: every segment group gets its own column, a thick pair
    // takes the column and the half step after it.
    StandardDrawing& d = out.drawing;
    d.host = g;
    d.rows = {r1, r2};
    d.x.assign(static_cast<std::size_t>(g.order()), Rational(0));
    Rational col(-1);
    std::size_t ti = 0, bi = 0;
    auto place_run = [&](const VertexSeq& seq, std::size_t& cur, int stop, const Rational& base) {
        Rational at = base;
        while (static_cast<int>(cur) < stop) {
            at += Rational(1);
            d.x[static_cast<std::size_t>(seq[cur++])] = at;
        }
    };
    for (const auto& seg : out.segments) {
        const int tstop = idx.at(seg.top.front()), bstop = idx.at(seg.bottom.front());
        const int gap = std::max(tstop - static_cast<int>(ti), bstop - static_cast<int>(bi));
        place_run(r1, ti, tstop, col);
        place_run(r2, bi, bstop, col);
        col += Rational(gap + 1);
        for (std::size_t k = 0; k < seg.top.size(); ++k) d.x[static_cast<std::size_t>(seg.top[k])] = col + Rational(static_cast<std::int64_t>(k), 2);
        for (std::size_t k = 0; k < seg.bottom.size(); ++k) d.x[static_cast<std::size_t>(seg.bottom[k])] = col + Rational(static_cast<std::int64_t>(k), 2);
        ti = static_cast<std::size_t>(idx.at(seg.top.back())) + 1;
        bi = static_cast<std::size_t>(idx.at(seg.bottom.back())) + 1;
        if (seg.thick()) col += Rational(1, 2);
    }
    place_run(r1, ti, static_cast<int>(r1.size()), col);
    place_run(r2, bi, static_cast<int>(r2.size()), col);
    return out;
}

// ---------------------------------------------------------------------------
// Properties 1..6

std::vector<std::string> check_parallel_properties(const Graph& g, const VertexSeq& p1, const VertexSeq& p2,
                                                   const VertexSeq& p3) {
    std::vector<std::string> bad;
    const PathIndex idx(g, {&p1, &p2, &p3});
    if (p1.size() < 2 || p2.size() < 2) bad.push_back("property 1: the ladder paths need two vertices each");
    if (p3.size() == 1 && g.degree(p3[0]) > 2) bad.push_back("property 2: singleton third path has degree above two");

    std::vector<Edge> arcs;
    for (auto [u, v] : g.edges()) {
        if (idx.of(u) == -1 || idx.of(v) == -1 || idx.of(u) == idx.of(v)) continue;
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    for (auto [x, y] : arcs)
        for (auto [x2, y2] : arcs)
            if (idx.before(x, x2) && idx.before(y2, y)) {
                bad.push_back("property 3: edges " + edge_name(x, y) + " and " + edge_name(x2, y2));
                goto done3;
            }
done3:
    for (auto [a, b] : arcs)
        for (auto [c, d] : arcs) {
            if (idx.of(c) != idx.of(b) || idx.of(d) == idx.of(a) || idx.of(d) == idx.of(b) || !idx.before(c, b)) continue;
            for (auto [x, y] : arcs)
                if (idx.before(a, x) && idx.before(y, d)) {
                    bad.push_back("property 4: " + edge_name(a, b) + ", " + edge_name(c, d) + " with " + edge_name(x, y));
                    goto done4;
                }
        }
done4:
    for (int v = 0; v < g.order(); ++v) {
        if (idx.of(v) == -1) continue;
        for (int p = 0; p < 3; ++p) {
            if (p == idx.of(v)) continue;
            int lo = -1, hi = -1;
            for (int u : to_vector(g.neighbors(v))) {
                if (idx.of(u) != p) continue;
                if (lo == -1 || idx.at(u) < idx.at(lo)) lo = u;
                if (hi == -1 || idx.at(u) > idx.at(hi)) hi = u;
            }
            if (lo != -1 && idx.at(hi) - idx.at(lo) >= 2)
                bad.push_back("property 5: vertex " + std::to_string(v) + " has non-consecutive neighbours");
        }
    }
    for (auto [x, a] : arcs)
        for (auto [x2, b] : arcs) {
            if (x2 != x || idx.of(a) == idx.of(b)) continue;
            for (auto [c, d] : arcs)
                if (idx.before(a, c) && idx.before(d, b)) {
                    bad.push_back("property 6: vertex " + std::to_string(x) + " with " + edge_name(c, d));
                    goto done6;
                }
        }
done6:
    return bad;
}

// ---------------------------------------------------------------------------
// Third row

namespace {

// Induced subgraph on `keep` (in the given order) with rows mapped along.
struct Restriction {
    Graph graph;
    std::vector<int> local;  // host id -> local id or -1
};

Restriction restrict_to(const Graph& g, const std::vector<int>& keep) {
    Restriction r{Graph(static_cast<int>(keep.size())), std::vector<int>(static_cast<std::size_t>(g.order()), -1)};
    for (std::size_t i = 0; i < keep.size(); ++i) r.local[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
    for (auto [u, v] : g.edges()) {
        const int a = r.local[static_cast<std::size_t>(u)], b = r.local[static_cast<std::size_t>(v)];
        if (a != -1 && b != -1) r.graph.add_edge(a, b);
    }
    return r;
}

VertexSeq map_seq(const Restriction& r, const VertexSeq& s) {
    VertexSeq out;
    for (int v : s)
        if (r.local[static_cast<std::size_t>(v)] != -1) out.push_back(r.local[static_cast<std::size_t>(v)]);
    return out;
}

// Lowest section index containing v, or -1.
int first_section_of(const LadderDrawing& ladder, int v) {
    for (const auto& s : ladder.sections)
        if (std::binary_search(s.members.begin(), s.members.end(), v)) return s.index;
    return -1;
}

}  // namespace

StandardDrawing place_third(const Graph& g, const LadderDrawing& ladder, const VertexSeq& r3) {
    const PathIndex idx(g, {&ladder.top, &ladder.bottom, &r3});
    if (std::count(idx.which.begin(), idx.which.end(), -1) > 0)
        throw ContractError("the three paths must cover every vertex");
    if (r3.empty()) throw ContractError("third path is empty");
    if (r3.size() == 1) {
        if (g.degree(r3[0]) > 3) throw ContractError("singleton third path has degree above three");
    } else {
        const auto bad = check_parallel_properties(g, ladder.top, ladder.bottom, r3);
        if (!bad.empty()) throw ContractError(bad.front());
    }

    // Neighbours of later third-row vertices never sit strictly right of the
    // section that holds the newest vertex's neighbours.
    for (std::size_t j = 1; j < r3.size(); ++j) {
        int k = -1;
        for (int u : to_vector(g.neighbors(r3[j])))
            if (idx.of(u) != 2) k = std::max(k, first_section_of(ladder, u));
        if (k == -1) continue;
        for (std::size_t i = 0; i < j; ++i)
            for (int u : to_vector(g.neighbors(r3[i])))
                if (idx.of(u) != 2 && first_section_of(ladder, u) > k)
                    throw ConstructionFailed("earlier third-row vertex reaches past the current section", r3[i]);
    }

    const std::vector<VertexSeq> rows{r3, ladder.top, ladder.bottom};
    if (auto d = realize_rows(g, rows)) return *d;

    // Report the first third-row vertex whose insertion has no placement.
    for (std::size_t j = 1; j <= r3.size(); ++j) {
        std::vector<int> keep(r3.begin(), r3.begin() + static_cast<std::ptrdiff_t>(j));
        keep.insert(keep.end(), ladder.top.begin(), ladder.top.end());
        keep.insert(keep.end(), ladder.bottom.begin(), ladder.bottom.end());
        const Restriction r = restrict_to(g, keep);
        if (!realize_rows(r.graph, {map_seq(r, r3), map_seq(r, ladder.top), map_seq(r, ladder.bottom)}))
            throw ConstructionFailed("no crossing-free placement for the third row", r3[j - 1]);
    }
    throw ConstructionFailed("no crossing-free placement for the third row", r3.back());
}

// ---------------------------------------------------------------------------
// Pipelines

namespace {

int cross_edges(const Graph& g, const VertexSeq& a, const VertexSeq& b) {
    const VertexMask mb = to_mask(b);
    int count = 0;
    for (int v : a) count += popcount(g.neighbors(v) & mb);
    return count;
}

StandardDrawing checked(const Graph& g, StandardDrawing d) {
    const auto rep = verify_drawing(g, d);
    if (!rep.ok) throw InternalLogicError("constructed drawing fails verification: " + rep.violations.front());
    return d;
}

}  // namespace

StandardDrawing build_standard_drawing(const Graph& g) {
    if (g.max_degree() > 3) throw UnsupportedInput("standard drawing construction needs max degree <= 3");
    const auto fn = forcing_number(g);
    if (fn.k != 3) throw UnsupportedInput("standard drawing construction needs forcing number 3");

    const ChainSet s = eliminate_unfavorite(eliminate_bad(extract_chains(g, closure(g, fn.witness))));
    std::vector<const Chain*> wide, lone;
    for (const auto& c : s.chains()) (c.trivial() ? lone : wide).push_back(&c);
    auto by_head = [](const Chain* a, const Chain* b) { return a->head() < b->head(); };
    std::sort(wide.begin(), wide.end(), by_head);
    std::sort(lone.begin(), lone.end(), by_head);

    try {
        if (wide.size() == 3) {
            // Ladder pair: most cross edges, ties to the pair with the smallest heads.
            int bi = 0, bj = 1, best = -1;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    const int c = cross_edges(g, wide[static_cast<std::size_t>(i)]->seq, wide[static_cast<std::size_t>(j)]->seq);
                    if (c > best) best = c, bi = i, bj = j;
                }
            const int third = 3 - bi - bj;
            const auto ladder = ladder_drawing(g, wide[static_cast<std::size_t>(bi)]->seq, wide[static_cast<std::size_t>(bj)]->seq);
            return checked(g, place_third(g, ladder, wide[static_cast<std::size_t>(third)]->seq));
        }
        if (wide.size() == 2) {
            const int z = lone[0]->head();
            const VertexMask nz = g.neighbors(z);
            const VertexSeq* top = &wide[0]->seq;
            const VertexSeq* bottom = &wide[1]->seq;
            if (popcount(nz & to_mask(*bottom)) > popcount(nz & to_mask(*top))) std::swap(top, bottom);
            return checked(g, place_third(g, ladder_drawing(g, *top, *bottom), {z}));
        }
        if (wide.size() == 1) {
            const VertexSeq& mid = wide[0]->seq;
            const int z1 = lone[0]->head(), z2 = lone[1]->head();
            if (auto d = realize_rows(g, {{z1}, mid, {z2}})) return checked(g, *d);
            if (auto d = realize_rows(g, {{z2}, mid, {z1}})) return checked(g, *d);
            throw InternalLogicError("one wide chain with two lone vertices does not realize");
        }
        std::vector<VertexSeq> rows;
        for (const auto& c : s.chains()) rows.push_back(c.seq);
        if (auto d = realize_rows(g, rows)) return checked(g, *d);
        throw InternalLogicError("trivial chains do not realize");
    } catch (const InternalLogicError&) {
        throw;
    } catch (const Error& e) {
        throw InternalLogicError(std::string("standard drawing construction failed: ") + e.what());
    }
}

StandardDrawing drawing_from_chains(const Graph& g) {
    const auto fn = forcing_number(g);
    if (fn.k > 2) throw UnsupportedInput("chain drawing is for forcing number at most 2");
    const ChainSet s = extract_chains(g, closure(g, fn.witness));
    std::vector<VertexSeq> rows;
    for (const auto& c : s.chains()) rows.push_back(c.seq);
    if (auto d = realize_rows(g, rows)) return checked(g, *d);
    throw InternalLogicError("chains of a forcing set of size <= 2 do not realize");
}

// ---------------------------------------------------------------------------
// Search

namespace {

// Vertex order along G[s] if it is an induced path, starting at the smaller end.
std::optional<VertexSeq> path_order(const Graph& g, VertexMask s) {
    const int k = popcount(s);
    int edges = 0, start = -1;
    for (VertexMask rest = s; rest; rest &= rest - 1) {
        const int v = lowest(rest);
        const int d = popcount(g.neighbors(v) & s);
        if (d > 2) return std::nullopt;
        edges += d;
        if (d <= 1 && start == -1) start = v;
    }
    if (edges / 2 != k - 1 || start == -1) return std::nullopt;
    VertexSeq seq{start};
    VertexMask seen = bit(start);
    while (static_cast<int>(seq.size()) < k) {
        const VertexMask nxt = g.neighbors(seq.back()) & s & ~seen;
        if (!nxt) return std::nullopt;  // disconnected
        seq.push_back(lowest(nxt));
        seen |= nxt;
    }
    return seq;
}

void partitions(const Graph& g, VertexMask rest, int blocks, std::vector<VertexSeq>& cur,
                std::vector<std::vector<VertexSeq>>& out) {
    if (!rest) {
        if (blocks == 0) out.push_back(cur);
        return;
    }
    if (blocks == 0 || popcount(rest) < blocks) return;
    const int v = lowest(rest);
    const VertexMask others = rest & ~bit(v);
    // Every subset of `others`, joined with v.
    for (VertexMask sub = others;; sub = (sub - 1) & others) {
        if (auto seq = path_order(g, sub | bit(v))) {
            cur.push_back(*seq);
            partitions(g, others & ~sub, blocks - 1, cur, out);
            cur.pop_back();
        }
        if (sub == 0) break;
    }
}

// Every row order and orientation, up to the two global mirror symmetries.
template <typename Visit>
bool for_each_arrangement(const std::vector<VertexSeq>& blocks, Visit&& visit) {
    const int r = static_cast<int>(blocks.size());
    std::vector<int> perm(static_cast<std::size_t>(r));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (r >= 2 && perm.front() > perm.back()) continue;
        for (unsigned flips = 0; flips < (1U << r); ++flips) {
            if ((flips & 1U) && blocks[static_cast<std::size_t>(perm[0])].size() > 1) continue;
            bool redundant = false;
            std::vector<VertexSeq> rows;
            for (int i = 0; i < r; ++i) {
                VertexSeq seq = blocks[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
                if ((flips >> i) & 1U) {
                    if (seq.size() == 1) redundant = true;
                    std::reverse(seq.begin(), seq.end());
                }
                rows.push_back(std::move(seq));
            }
            if (redundant) continue;
            if (visit(rows)) return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Randomized grid placement with local repair for four or more rows.
std::optional<StandardDrawing> grid_search(const Graph& g, const std::vector<VertexSeq>& rows, std::uint64_t tries,
                                           std::mt19937_64& rng) {
    const int n = g.order();
    StandardDrawing d{g, rows, std::vector<Rational>(static_cast<std::size_t>(n))};
    const std::int64_t width = 2 * n;
    auto sample_row = [&](const VertexSeq& seq, std::int64_t res) {
        std::vector<std::int64_t> slots(static_cast<std::size_t>(width * res + 1));
        std::iota(slots.begin(), slots.end(), 0);
        std::shuffle(slots.begin(), slots.end(), rng);
        slots.resize(seq.size());
        std::sort(slots.begin(), slots.end());
        for (std::size_t i = 0; i < seq.size(); ++i) d.x[static_cast<std::size_t>(seq[i])] = Rational(slots[i], res);
    };
    std::uniform_int_distribution<std::size_t> pick_row(0, rows.size() - 1);
    std::size_t best = SIZE_MAX;
    for (std::uint64_t t = 0; t < tries; ++t) {
        const std::int64_t res = t < tries / 3 ? 1 : t < 2 * tries / 3 ? 2 : 4;
        const auto saved = d.x;
        if (t % 50 == 0 || best == SIZE_MAX) {
            for (const auto& seq : rows) sample_row(seq, res);
        } else {
            sample_row(rows[pick_row(rng)], res);
        }
        const auto rep = verify_drawing(g, d);
        if (rep.ok) {
            rescale_to_grid(d.x);
            return d;
        }
        if (rep.violations.size() <= best || t % 50 == 0) best = rep.violations.size();
        else d.x = saved;
    }
    return std::nullopt;
}

}  // namespace

std::optional<StandardDrawing> search_drawing(const Graph& g, int k, const SearchOptions& opt) {
    const int n = g.order();
    if (n > 8) throw UnsupportedSize("drawing search supports n <= 8");
    if (k < 1) throw DomainError("row count must be positive");
    if (n == 0) return StandardDrawing{g, {}, {}};

    std::uint64_t spent = 0;
    std::mt19937_64 rng(opt.seed);
    for (int r = 1; r <= std::min(k, n); ++r) {
        std::vector<std::vector<VertexSeq>> parts;
        std::vector<VertexSeq> cur;
        partitions(g, g.all(), r, cur, parts);
        if (r <= 3) {
            std::optional<StandardDrawing> found;
            for (const auto& blocks : parts) {
                const bool hit = for_each_arrangement(blocks, [&](const std::vector<VertexSeq>& rows) {
                    found = realize_rows(g, rows);
                    return found.has_value();
                });
                if (hit) return found;
            }
            continue;
        }
        std::vector<std::vector<VertexSeq>> arrangements;
        for (const auto& blocks : parts)
            for_each_arrangement(blocks, [&](const std::vector<VertexSeq>& rows) {
                arrangements.push_back(rows);
                return false;
            });
        if (arrangements.empty()) continue;
        const std::uint64_t left = opt.budget > spent ? opt.budget - spent : 0;
        const std::uint64_t each = std::max<std::uint64_t>(1, left / arrangements.size());
        for (const auto& rows : arrangements) {
            if (spent >= opt.budget) return std::nullopt;
            const std::uint64_t tries = std::min(each, opt.budget - spent);
            spent += tries;
            if (auto d = grid_search(g, rows, tries, rng)) return d;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render(const StandardDrawing& d, RenderFormat format) {
    const auto rep = verify_drawing(d.host, d);
    if (!rep.ok) throw ContractError("refusing to render an unverified drawing: " + rep.violations.front());
    const auto row = d.row_of();
    std::ostringstream os;

    if (format == RenderFormat::Json) {
        nlohmann::ordered_json j;
        j["rows"] = d.rows;
        nlohmann::ordered_json xs = nlohmann::ordered_json::object();
        for (int v = 0; v < d.host.order(); ++v) xs[std::to_string(v)] = d.x[static_cast<std::size_t>(v)].str();
        j["x"] = xs;
        j["k"] = d.k();
        nlohmann::ordered_json edges = nlohmann::ordered_json::array();
        for (auto [u, v] : d.host.edges()) edges.push_back({u, v});
        j["edges"] = edges;
        return j.dump();
    }

    // Pixel positions: integer grid units, 40 px apart.
    std::vector<Rational> grid = d.x;
    rescale_to_grid(grid);
    auto px = [&](int v) { return 40 + 40 * grid[static_cast<std::size_t>(v)].num(); };
    auto py = [&](int v) { return 50 + 100 * static_cast<std::int64_t>(row[static_cast<std::size_t>(v)]); };

    if (format == RenderFormat::Dot) {
        os << "graph drawing {\n  node [shape=circle];\n";
        for (int v = 0; v < d.host.order(); ++v)
            os << "  " << v << " [pos=\"" << px(v) << "," << -py(v) << "!\"];\n";
        for (auto [u, v] : d.host.edges()) os << "  " << u << " -- " << v << ";\n";
        os << "}\n";
        return os.str();
    }

    std::int64_t w = 80, h = 100 * static_cast<std::int64_t>(d.rows.size());
    for (int v = 0; v < d.host.order(); ++v) w = std::max(w, px(v) + 40);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h << "\">\n";
    for (auto [u, v] : d.host.edges())
        os << "  <line x1=\"" << px(u) << "\" y1=\"" << py(u) << "\" x2=\"" << px(v) << "\" y2=\"" << py(v)
           << "\" stroke=\"black\"/>\n";
    for (int v = 0; v < d.host.order(); ++v) {
        os << "  <circle cx=\"" << px(v) << "\" cy=\"" << py(v) << "\" r=\"6\" fill=\"black\"/>\n";
        os << "  <text x=\"" << px(v) + 8 << "\" y=\"" << py(v) - 8 << "\" font-size=\"12\">" << v << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

StandardDrawing drawing_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        StandardDrawing d;
        d.rows = j.at("rows").get<std::vector<VertexSeq>>();
        const auto& xs = j.at("x");
        const int n = static_cast<int>(xs.size());
        d.host = Graph(n);
        for (const auto& e : j.at("edges")) d.host.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
        d.x.assign(static_cast<std::size_t>(n), Rational(0));
        for (auto it = xs.begin(); it != xs.end(); ++it) {
            const int v = std::stoi(it.key());
            if (v < 0 || v >= n) throw DomainError("x key " + it.key() + " out of range");
            d.x[static_cast<std::size_t>(v)] = Rational::parse(it.value().get<std::string>());
        }
        if (j.contains("k") && j.at("k").get<int>() != d.k()) throw ContractError("k does not match the row count");
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed drawing json: ") + e.what(), 0);
    }
}

}  // namespace zf
