#include "zf/chains.hpp"

#include <algorithm>
#include <sstream>

#include "zf/errors.hpp"

namespace zf {

ChainSet::ChainSet(Graph host, std::vector<Chain> chains) : host_(std::move(host)), chains_(std::move(chains)) {
    const int n = host_.order();
    chain_of_.assign(static_cast<std::size_t>(n), -1);
    position_.assign(static_cast<std::size_t>(n), -1);
    time_.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < chains_.size(); ++c) {
        const auto& seq = chains_[c].seq;
        if (seq.empty()) throw ContractError("empty chain");
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const int v = seq[i];
            if (v < 0 || v >= n) throw DomainError("vertex " + std::to_string(v) + " out of range");
            if (chain_of_[static_cast<std::size_t>(v)] != -1)
                throw ContractError("vertex " + std::to_string(v) + " appears in two chains");
            chain_of_[static_cast<std::size_t>(v)] = static_cast<int>(c);
            position_[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
        if (!is_induced_path(host_, seq)) throw ContractError("chain is not an induced path");
    }
    for (int v = 0; v < n; ++v)
        if (chain_of_[static_cast<std::size_t>(v)] == -1)
            throw ContractError("vertex " + std::to_string(v) + " is not covered by the chains");

    // Fire only the chain forces, all eligible ones per round.
    VertexMask colored = 0;
    std::vector<std::size_t> reached(chains_.size(), 0);
    for (const auto& ch : chains_) {
        colored |= bit(ch.head());
        time_[static_cast<std::size_t>(ch.head())] = 0;
    }
    for (int round = 1; colored != host_.all(); ++round) {
        std::vector<std::size_t> firing;
        for (std::size_t c = 0; c < chains_.size(); ++c) {
            const auto& seq = chains_[c].seq;
            if (reached[c] + 1 >= seq.size()) continue;
            const int t = seq[reached[c]];
            if ((host_.neighbors(t) & ~colored) == bit(seq[reached[c] + 1])) firing.push_back(c);
        }
        if (firing.empty()) throw ContractError("chain forces stall before coloring every vertex");
        for (std::size_t c : firing) {
            const int w = chains_[c].seq[++reached[c]];
            colored |= bit(w);
            time_[static_cast<std::size_t>(w)] = round;
        }
    }
    run_ = closure(host_, origin()).run;
}

std::vector<int> ChainSet::origin() const {
    std::vector<int> heads;
    for (const auto& c : chains_) heads.push_back(c.head());
    std::sort(heads.begin(), heads.end());
    return heads;
}

int ChainSet::trivial_count() const {
    return static_cast<int>(std::count_if(chains_.begin(), chains_.end(), [](const Chain& c) { return c.trivial(); }));
}

std::optional<int> ChainSet::next(int v) const {
    const auto& seq = chain(chain_of(v)).seq;
    const auto p = static_cast<std::size_t>(position(v));
    if (p + 1 >= seq.size()) return std::nullopt;
    return seq[p + 1];
}

std::optional<int> ChainSet::prev(int v) const {
    const int p = position(v);
    if (p == 0) return std::nullopt;
    return chain(chain_of(v)).seq[static_cast<std::size_t>(p - 1)];
}

bool ChainSet::matches_run() const {
    for (const auto& ch : chains_) {
        for (std::size_t j = 1; j < ch.seq.size(); ++j) {
            const ForceEvent want{ch.seq[j - 1], ch.seq[j], run_.step_of[static_cast<std::size_t>(ch.seq[j])]};
            if (std::find(run_.events.begin(), run_.events.end(), want) == run_.events.end()) return false;
        }
    }
    return true;
}

ChainSet extract_chains(const Graph& g, const ForcingOutcome& outcome) {
    if (!outcome.complete) throw NotForcingSet("initial set does not force the whole graph");
    const int n = g.order();
    std::vector<int> forcer(static_cast<std::size_t>(n), -1);
    for (const auto& e : outcome.run.events) {
        auto& slot = forcer[static_cast<std::size_t>(e.forced)];
        if (slot == -1 || e.forcer < slot) slot = e.forcer;
    }
    std::vector<int> successor(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        const int u = forcer[static_cast<std::size_t>(v)];
        if (u == -1) continue;
        if (successor[static_cast<std::size_t>(u)] != -1)
            throw InternalLogicError("vertex " + std::to_string(u) + " forces twice");
        successor[static_cast<std::size_t>(u)] = v;
    }
    std::vector<Chain> chains;
    for (int head : outcome.run.initial) {
        Chain c;
        for (int v = head; v != -1; v = successor[static_cast<std::size_t>(v)]) c.seq.push_back(v);
        chains.push_back(std::move(c));
    }
    return ChainSet(g, std::move(chains));
}

namespace {

// Earliest and latest neighbour of v in chain `c`, when they are non-consecutive.
std::optional<std::pair<int, int>> spread_neighbors(const ChainSet& s, int v, int c) {
    int lo = -1, hi = -1;
    for (int u : to_vector(s.host().neighbors(v))) {
        if (s.chain_of(u) != c) continue;
        if (lo == -1 || s.position(u) < s.position(lo)) lo = u;
        if (hi == -1 || s.position(u) > s.position(hi)) hi = u;
    }
    if (lo == -1 || s.position(hi) - s.position(lo) < 2) return std::nullopt;
    return std::make_pair(lo, hi);
}

struct BadWitness {
    int chain;
    int a, b;  // a <_chain b, non-consecutive
};

std::optional<BadWitness> bad_witness(const ChainSet& s, int v) {
    const int own = s.chain_of(v);
    if (s.chain(own).trivial()) return std::nullopt;
    for (int c = 0; c < static_cast<int>(s.chains().size()); ++c) {
        if (c == own || s.chain(c).trivial()) continue;
        if (auto p = spread_neighbors(s, v, c)) return BadWitness{c, p->first, p->second};
    }
    return std::nullopt;
}

bool lemma_assertions_apply(const ChainSet& s) { return s.host().max_degree() <= 3 && s.matches_run(); }

}  // namespace

std::vector<int> bad_vertices(const ChainSet& s) {
    std::vector<int> out;
    for (int v = 0; v < s.host().order(); ++v)
        if (bad_witness(s, v)) out.push_back(v);
    if (lemma_assertions_apply(s)) {
        for (int v : out)
            if (s.position(v) != 0)
                throw InternalLogicError("bad vertex " + std::to_string(v) + " is not the head of its chain");
    }
    return out;
}

std::optional<UnfavoriteWitness> unfavorite_witness(const ChainSet& s, int x) {
    const Graph& g = s.host();
    const int own = s.chain_of(x);
    if (s.chain(own).trivial()) return std::nullopt;
    const auto nbrs = to_vector(g.neighbors(x));
    const auto edges = g.edges();
    for (int a : nbrs) {
        const int ca = s.chain_of(a);
        if (ca == own || s.chain(ca).trivial()) continue;
        for (int b : nbrs) {
            const int cb = s.chain_of(b);
            if (cb == own || cb == ca || s.chain(cb).trivial()) continue;
            for (auto [u, v] : edges) {
                for (auto [c, d] : {std::pair{u, v}, std::pair{v, u}}) {
                    if (s.chain_of(c) == ca && s.chain_of(d) == cb && s.precedes(a, c) && s.precedes(d, b))
                        return UnfavoriteWitness{x, a, b, c, d};
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<int> unfavorite_vertices(const ChainSet& s) {
    std::vector<int> out;
    for (int v = 0; v < s.host().order(); ++v)
        if (unfavorite_witness(s, v)) out.push_back(v);
    if (lemma_assertions_apply(s)) {
        for (int v : out)
            if (s.position(v) != 0)
                throw InternalLogicError("unfavorite vertex " + std::to_string(v) + " is not the head of its chain");
    }
    return out;
}

ChainSet exchange_chains(const ChainSet& s, int x, int a) {
    const int ca = s.chain_of(x);
    const int cb = s.chain_of(a);
    if (s.position(x) != 0) throw InternalLogicError("exchange needs a chain head, got " + std::to_string(x));
    if (ca == cb) throw InternalLogicError("exchange needs two distinct chains");
    if (!s.host().has_edge(x, a)) throw InternalLogicError("exchange needs an edge x-a");
    if (!s.next(a)) throw InternalLogicError("exchange needs a successor of " + std::to_string(a));

    const auto& seq_a = s.chain(ca).seq;
    const auto& seq_b = s.chain(cb).seq;
    const auto cut = seq_b.begin() + s.position(a) + 1;
    std::vector<Chain> chains = s.chains();
    chains[static_cast<std::size_t>(ca)].seq.assign(cut, seq_b.end());
    auto& joined = chains[static_cast<std::size_t>(cb)].seq;
    joined.assign(seq_b.begin(), cut);
    joined.insert(joined.end(), seq_a.begin(), seq_a.end());
    try {
        return ChainSet(s.host(), std::move(chains));
    } catch (const ContractError& e) {
        throw InternalLogicError(std::string("exchange produced an invalid chain set: ") + e.what());
    }
}

namespace {

void require_repair_input(const ChainSet& s) {
    if (s.chains().size() != 3) throw UnsupportedInput("repair is defined for exactly three chains");
    if (s.host().max_degree() > 3) throw UnsupportedInput("repair needs max degree <= 3");
}

}  // namespace

ChainSet eliminate_bad(const ChainSet& input) {
    require_repair_input(input);
    ChainSet s = input;
    for (auto bad = bad_vertices(s); !bad.empty(); bad = bad_vertices(s)) {
        const int x = bad.front();
        const auto w = bad_witness(s, x);
        const int untouched = 3 - s.chain_of(x) - w->chain;
        const int z = s.chain(untouched).head();

        ChainSet first = exchange_chains(s, x, w->a);
        const auto bad_first = bad_vertices(first);
        if (bad_first.size() < bad.size()) {
            s = std::move(first);
            continue;
        }
        // Second stage: the third head became bad against the joined chain.
        const auto wz = bad_witness(first, z);
        if (!wz) throw InternalLogicError("bad count did not drop and the third head is not bad");
        ChainSet second = exchange_chains(first, z, wz->a);
        if (bad_vertices(second).size() >= bad.size())
            throw InternalLogicError("bad-vertex count did not decrease after the two-stage exchange");
        s = std::move(second);
    }
    return s;
}

ChainSet eliminate_unfavorite(const ChainSet& input) {
    require_repair_input(input);
    if (!bad_vertices(input).empty()) throw ContractError("eliminate_unfavorite needs a chain set without bad vertices");
    ChainSet s = input;
    for (auto unf = unfavorite_vertices(s); !unf.empty(); unf = unfavorite_vertices(s)) {
        const auto w = unfavorite_witness(s, unf.front());
        ChainSet next = exchange_chains(s, w->x, w->a);
        const auto bad = bad_vertices(next);
        if (!bad.empty())
            throw InternalLogicError("unfavorite exchange introduced bad vertex " + std::to_string(bad.front()));
        if (unfavorite_vertices(next).size() >= unf.size())
            throw InternalLogicError("unfavorite count did not decrease");
        s = std::move(next);
    }
    return s;
}

OrderLemmaReport check_order_lemmas(const ChainSet& s) {
    OrderLemmaReport rep;
    const Graph& g = s.host();
    const int n = g.order();
    const auto edges = g.edges();
    auto note = [&](bool& flag, const std::string& what) {
        flag = false;
        rep.violations.push_back(what);
    };

    for (int x = 0; x < n; ++x) {
        for (int z : to_vector(g.neighbors(x))) {
            if (s.chain_of(z) == s.chain_of(x)) continue;
            for (int y : s.chain(s.chain_of(x)).seq) {
                if (s.precedes(x, y) && !(s.time(z) < s.time(y))) {
                    std::ostringstream os;
                    os << "cross1: x=" << x << " y=" << y << " z=" << z;
                    note(rep.cross1, os.str());
                }
            }
        }
    }

    std::vector<std::pair<int, int>> arcs;
    for (auto [u, v] : edges) {
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    for (auto [x, y] : arcs) {
        if (s.chain_of(x) == s.chain_of(y)) continue;
        for (auto [x2, y2] : arcs) {
            if (s.precedes(x, x2) && s.precedes(y2, y)) {
                std::ostringstream os;
                os << "cross: " << x << "-" << y << " and " << x2 << "-" << y2;
                note(rep.cross, os.str());
            }
        }
    }

    for (auto [a, b] : arcs) {
        const int r1 = s.chain_of(a), r2 = s.chain_of(b);
        if (r1 == r2) continue;
        for (auto [c, d] : arcs) {
            const int r3 = s.chain_of(d);
            if (s.chain_of(c) != r2 || r3 == r1 || r3 == r2 || !s.precedes(c, b)) continue;
            for (auto [x, y] : arcs) {
                if (s.precedes(a, x) && s.precedes(y, d)) {
                    std::ostringstream os;
                    os << "crosss: " << a << "-" << b << ", " << c << "-" << d << " excludes " << x << "-" << y;
                    note(rep.crosss, os.str());
                }
            }
        }
    }
    return rep;
}

}  // namespace zf
