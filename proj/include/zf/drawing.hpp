#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zf/chains.hpp"
#include "zf/graph.hpp"
#include "zf/rational.hpp"

namespace zf {

// Rows of parallel paths, top to bottom (row index is the y coordinate),
// with one exact x coordinate per vertex.
struct StandardDrawing {
    Graph host;
    std::vector<VertexSeq> rows;
    std::vector<Rational> x;  // indexed by vertex id

    int k() const { return static_cast<int>(rows.size()); }
    std::vector<int> row_of() const;  // -1 for vertices not in any row
    bool operator==(const StandardDrawing&) const = default;
};

struct DrawingReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Exact check of every drawing invariant: partition, induced rows, row edges
// consecutive, x increasing along rows, no two segments meeting outside a
// shared endpoint, no segment through a third vertex.
DrawingReport verify_drawing(const Graph& g, const StandardDrawing& d);

// Minimum-x vertex of every row, sorted.
std::vector<int> leftmost_set(const StandardDrawing& d);

// Exact x realization for fixed rows when there are at most three of them:
// returns a drawing iff one exists with these rows in this order and
// orientation. x lands on the smallest integer grid. With one top vertex, it
// sits straight above its bottom-row neighbour if it has one, else centred
// over its neighbours.
std::optional<StandardDrawing> realize_rows(const Graph& g, const std::vector<VertexSeq>& rows);

// A two-row segment of the ladder; a thick side lists its two merged vertices.
struct LadderSegment {
    std::vector<int> top;
    std::vector<int> bottom;
    bool thick() const { return top.size() == 2 || bottom.size() == 2; }
    bool operator==(const LadderSegment&) const = default;
};

struct Section {
    int index = 0;
    // a_i, b_i, a_{i+1}, b_{i+1}; -1 where the section is open on that side.
    int a_left = -1, b_left = -1, a_right = -1, b_right = -1;
    std::vector<int> members;  // sorted
    bool operator==(const Section&) const = default;
};

struct LadderDrawing {
    VertexSeq top;
    VertexSeq bottom;
    std::vector<std::pair<int, int>> thick_vertices;          // merged consecutive pairs
    std::vector<std::pair<int, std::pair<int, int>>> thick_edges;  // (u, merged pair)
    std::vector<LadderSegment> segments;                      // a_i b_i, left to right
    std::vector<Section> sections;
    StandardDrawing drawing;  // two-row drawing, vertical segments, thick pairs split
};

// Ladder of two chains; throws NotLadderDrawable naming the offending edges
// when the pair has a crossing or a vertex with non-consecutive neighbours.
LadderDrawing ladder_drawing(const Graph& g, const VertexSeq& r1, const VertexSeq& r2);

// Violated parallel-path properties (1..6) for P1, P2, P3; empty when all hold.
std::vector<std::string> check_parallel_properties(const Graph& g, const VertexSeq& p1, const VertexSeq& p2,
                                                   const VertexSeq& p3);

// Adds r3 as the top row above the ladder. A trivial r3 may have up to three
// neighbours in the ladder; a non-trivial one needs properties 1..6.
StandardDrawing place_third(const Graph& g, const LadderDrawing& ladder, const VertexSeq& r3);

// Three-row drawing for max degree <= 3 and forcing number 3, built from
// repaired chains.
StandardDrawing build_standard_drawing(const Graph& g);

// Drawing whose rows are the chains of the lexicographically first minimum
// forcing set, for forcing number <= 2. Throws UnsupportedInput otherwise,
// InternalLogicError if the rows do not realize.
StandardDrawing drawing_from_chains(const Graph& g);

struct SearchOptions {
    std::uint64_t budget = 20000;  // placements tried for four or more rows
    std::uint64_t seed = 1;
};

// First drawing with at most k rows (fewest rows first). Exhaustive and exact
// up to three rows; for four or more rows, randomized grid placement bounded
// by the budget, so not-found is only advisory there. n <= 8.
std::optional<StandardDrawing> search_drawing(const Graph& g, int k, const SearchOptions& opt = {});

enum class RenderFormat { Svg, Dot, Json };

// Requires a verified drawing (ContractError otherwise).
std::string render(const StandardDrawing& d, RenderFormat format);

// Inverse of the JSON rendering.
StandardDrawing drawing_from_json(const std::string& text);

}  // namespace zf
