#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zf/forcing.hpp"
#include "zf/graph.hpp"

namespace zf {

// Forcing chain v_0 -> v_1 -> ... -> v_k; v_0 is in the forcing set.
struct Chain {
    VertexSeq seq;

    int head() const { return seq.front(); }
    int tail() const { return seq.back(); }
    std::size_t size() const { return seq.size(); }
    bool trivial() const { return seq.size() == 1; }
    bool operator==(const Chain&) const = default;
};

// Ordered partition of the host's vertices into forcing chains.
//
// `time` is the round in which each vertex is colored when only the chain
// forces are fired, synchronously. For chains extracted from a synchronous
// run it coincides with `run.step_of`; for rewritten chain sets it is the
// clock under which the order lemmas hold.
class ChainSet {
public:
    // Validates the partition, the induced-path property and that firing the
    // chain forces colors every vertex. Throws ContractError otherwise.
    ChainSet(Graph host, std::vector<Chain> chains);

    const Graph& host() const { return host_; }
    const std::vector<Chain>& chains() const { return chains_; }
    std::vector<int> origin() const;  // sorted chain heads
    const ForcingRun& run() const { return run_; }

    int chain_of(int v) const { return chain_of_[static_cast<std::size_t>(v)]; }
    int position(int v) const { return position_[static_cast<std::size_t>(v)]; }
    int time(int v) const { return time_[static_cast<std::size_t>(v)]; }
    const Chain& chain(int index) const { return chains_[static_cast<std::size_t>(index)]; }
    int trivial_count() const;

    // u <_R v: same chain, u strictly earlier.
    bool precedes(int u, int v) const { return chain_of(u) == chain_of(v) && position(u) < position(v); }
    std::optional<int> next(int v) const;
    std::optional<int> prev(int v) const;

    // True iff every chain step is an event of the synchronous run of origin().
    bool matches_run() const;

    bool operator==(const ChainSet& other) const { return chains_ == other.chains_ && host_ == other.host_; }

private:
    Graph host_;
    std::vector<Chain> chains_;
    ForcingRun run_;
    std::vector<int> chain_of_;
    std::vector<int> position_;
    std::vector<int> time_;
};

// Chains from a complete synchronous run; ties between candidate forcers go
// to the lowest vertex id. Throws NotForcingSet if the outcome is incomplete.
ChainSet extract_chains(const Graph& g, const ForcingOutcome& outcome);

// Vertices of a non-trivial chain with two non-consecutive neighbours in
// another non-trivial chain.
std::vector<int> bad_vertices(const ChainSet& s);

// Vertices x in a non-trivial chain R1 adjacent to a in R2 and b in R3 (three
// distinct non-trivial chains) with an edge cd, a <_{R2} c and d <_{R3} b.
std::vector<int> unfavorite_vertices(const ChainSet& s);

// Witness for an unfavorite vertex: the neighbour a (whose chain is rewritten)
// and the neighbour b, plus the segment cd.
struct UnfavoriteWitness {
    int x, a, b, c, d;
};
std::optional<UnfavoriteWitness> unfavorite_witness(const ChainSet& s, int x);

// The exchange used by both repair procedures: x heads chain A and is adjacent
// to a in chain B with nex_B(a) defined. Chain A becomes nex_B(a)..end(B),
// chain B becomes head(B)..a followed by A.
ChainSet exchange_chains(const ChainSet& s, int x, int a);

// Repeats the bad-vertex exchange (with the two-stage fallback) until no bad
// vertex remains. Requires max degree <= 3 and three chains.
ChainSet eliminate_bad(const ChainSet& s);

// Repeats the unfavorite exchange until none remain. Requires no bad vertex.
ChainSet eliminate_unfavorite(const ChainSet& s);

struct OrderLemmaReport {
    bool cross1 = true;  // k(z) < k(y) for z in N(x) \ R, x <_R y
    bool cross = true;   // no crossing pair of edges between two chains
    bool crosss = true;  // three-chain exclusion
    std::vector<std::string> violations;
    bool ok() const { return cross1 && cross && crosss; }
};

OrderLemmaReport check_order_lemmas(const ChainSet& s);

}  // namespace zf
