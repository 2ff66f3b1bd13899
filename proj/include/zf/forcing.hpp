#pragma once

#include <optional>
#include <vector>

#include "zf/graph.hpp"

namespace zf {

struct ForceEvent {
    int forcer;
    int forced;
    int step;
    bool operator==(const ForceEvent&) const = default;
};

// Transcript of the synchronous forcing process started from `initial`.
struct ForcingRun {
    std::vector<int> initial;               // sorted
    std::vector<std::vector<int>> layers;   // layers[0] == initial; every later layer non-empty
    std::vector<int> step_of;               // step index per vertex, -1 if never colored
    std::vector<ForceEvent> events;         // every candidate forcer of every forced vertex
};

struct ForcingOutcome {
    ForcingRun run;
    std::vector<int> derived;  // sorted union of layers
    bool complete = false;
};

// Synchronous closure: each round, every colored vertex with exactly one
// non-colored neighbour forces it, all at once.
ForcingOutcome closure(const Graph& g, const std::vector<int>& initial);

// Derived set only, as a mask.
VertexMask derived_mask(const Graph& g, VertexMask initial);

bool is_forcing_set(const Graph& g, const std::vector<int>& f);

struct ForcingNumber {
    int k = 0;
    std::vector<int> witness;  // lexicographically smallest minimum set
};

// Exact minimum forcing set by subset search (sizes ascending, lexicographic subsets).
ForcingNumber forcing_number(const Graph& g);

// Minimum forcing set whose induced subgraph has no isolated vertex.
// Throws UnsupportedInput if `g` has an isolated vertex.
ForcingNumber total_forcing_number(const Graph& g);

// Calls `visit(mask)` for every k-subset of 0..n-1 in lexicographic order
// (as sorted vectors) until it returns true. Returns the accepted mask.
template <typename Visit>
std::optional<VertexMask> first_subset_of_size(int n, int k, Visit&& visit) {
    if (k < 0 || k > n) return std::nullopt;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        VertexMask m = 0;
        for (int v : idx) m |= bit(v);
        if (visit(m)) return m;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return std::nullopt;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace zf
