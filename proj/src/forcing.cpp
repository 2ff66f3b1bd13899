#include "zf/forcing.hpp"

#include <algorithm>

#include "zf/errors.hpp"

namespace zf {

namespace {

VertexMask checked_mask(const Graph& g, const std::vector<int>& vs) {
    for (int v : vs)
        if (v < 0 || v >= g.order()) throw DomainError("vertex " + std::to_string(v) + " out of range");
    return to_mask(vs);
}

}  // namespace

ForcingOutcome closure(const Graph& g, const std::vector<int>& initial) {
    const VertexMask start = checked_mask(g, initial);
    ForcingOutcome out;
    ForcingRun& run = out.run;
    run.initial = to_vector(start);
    run.layers.push_back(run.initial);
    run.step_of.assign(static_cast<std::size_t>(g.order()), -1);
    for (int v : run.initial) run.step_of[static_cast<std::size_t>(v)] = 0;

    VertexMask colored = start;
    for (int step = 1;; ++step) {
        VertexMask fresh = 0;
        for (int u : to_vector(colored)) {
            const VertexMask open = g.neighbors(u) & ~colored;
            if (popcount(open) != 1) continue;
            const int v = lowest(open);
            run.events.push_back({u, v, step});
            fresh |= open;
        }
        if (!fresh) break;
        run.layers.push_back(to_vector(fresh));
        for (int v : run.layers.back()) run.step_of[static_cast<std::size_t>(v)] = step;
        colored |= fresh;
    }
    // Events are grouped by step; within a step order by forced vertex, then forcer.
    std::stable_sort(run.events.begin(), run.events.end(), [](const ForceEvent& a, const ForceEvent& b) {
        if (a.step != b.step) return a.step < b.step;
        if (a.forced != b.forced) return a.forced < b.forced;
        return a.forcer < b.forcer;
    });
    out.derived = to_vector(colored);
    out.complete = colored == g.all();
    return out;
}

VertexMask derived_mask(const Graph& g, VertexMask colored) {
    while (true) {
        VertexMask fresh = 0;
        for (VertexMask rest = colored; rest; rest &= rest - 1) {
            const VertexMask open = g.neighbors(lowest(rest)) & ~colored;
            if (open && !(open & (open - 1))) fresh |= open;
        }
        if (!fresh) return colored;
        colored |= fresh;
    }
}

bool is_forcing_set(const Graph& g, const std::vector<int>& f) {
    return derived_mask(g, checked_mask(g, f)) == g.all();
}

ForcingNumber forcing_number(const Graph& g) {
    const int n = g.order();
    if (n < 1) throw DomainError("forcing number needs at least one vertex");
    const VertexMask all = g.all();
    for (int k = 1; k <= n; ++k) {
        auto hit = first_subset_of_size(n, k, [&](VertexMask m) { return derived_mask(g, m) == all; });
        if (hit) return {k, to_vector(*hit)};
    }
    throw InternalLogicError("the full vertex set must force");
}

ForcingNumber total_forcing_number(const Graph& g) {
    const int n = g.order();
    if (n < 1) throw DomainError("total forcing number needs at least one vertex");
    if (g.has_isolated_vertex())
        throw UnsupportedInput("total forcing number is defined only for graphs without isolated vertices");
    const VertexMask all = g.all();
    auto total = [&](VertexMask m) {
        for (VertexMask rest = m; rest; rest &= rest - 1)
            if (!(g.neighbors(lowest(rest)) & m)) return false;
        return true;
    };
    for (int k = 2; k <= n; ++k) {
        auto hit = first_subset_of_size(n, k, [&](VertexMask m) { return total(m) && derived_mask(g, m) == all; });
        if (hit) return {k, to_vector(*hit)};
    }
    throw InternalLogicError("the full vertex set must be a total forcing set");
}

}  // namespace zf
