#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zf/graph.hpp"

namespace zf {

// Input token: builtin name first (K4, P7, C5, K3,3, E2, fig8:1,1,1,1,1),
// then graph6. UsageError if neither reads.
Graph resolve_graph(const std::string& token);

// Whole command line minus the program name. JSON goes to `out`, the human
// summary and errors to `err`. Exit codes: 0 success, 1 failing result
// (violations, target not reached, nothing found), 2 usage or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zf
