// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zf/chains.hpp"
#include "zf/drawing.hpp"
#include "zf/forcing.hpp"
#include "zf/harness.hpp"
#include "zf/nullity.hpp"

using namespace zf;

namespace {

struct Outcome {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 20) failures.push_back(what);
        if (!ok && failures.size() == 20) failures.push_back("(further failures omitted)");
    }
};

std::vector<Graph> corpus8() {
    std::vector<Graph> all;
    for (int n = 1; n <= 8; ++n)
        for (auto& g : enumerate_connected_subcubic(n)) all.push_back(g);
    return all;
}

// F = 3 drawings from criterion 3, reused by criterion 5.
std::vector<StandardDrawing> three_row_drawings;

Outcome forcing_numbers() {
    Outcome o;
    for (int n = 1; n <= 10; ++n) o.expect(forcing_number(path_graph(n)).k == 1, "F(P" + std::to_string(n) + ") != 1");
    o.expect(forcing_number(complete_graph(4)).k == 3, "F(K4) != 3");
    o.expect(forcing_number(complete_bipartite(3, 3)).k == 4, "F(K3,3) != 4");
    return o;
}

Outcome bounds() {
    Outcome o;
    int checked = 0;
    for (const auto& g : corpus8()) {
        const int f = forcing_number(g).k;
        if (!g.has_isolated_vertex()) {
            const int ft = total_forcing_number(g).k;
            o.expect(f <= ft && ft <= 2 * f, encode_graph6(g) + ": F <= F_t <= 2F fails");
        }
        o.expect(2 * f <= g.order() + 2, encode_graph6(g) + ": F > n/2 + 1");
        ++checked;
    }
    o.notes.push_back(std::to_string(checked) + " graphs");
    return o;
}

Outcome three_parallel() {
    Outcome o;
    int f3 = 0;
    for (const auto& g : corpus8()) {
        const auto key = encode_graph6(g);
        const int f = forcing_number(g).k;
        if (f == 3) {
            ++f3;
            try {
                const auto d = build_standard_drawing(g);
                const auto rep = verify_drawing(g, d);
                o.expect(rep.ok && d.k() == 3, key + ": construction does not verify with 3 rows");
                const auto left = leftmost_set(d);
                o.expect(left.size() == 3 && is_forcing_set(g, left), key + ": left-most set does not force");
                if (rep.ok) three_row_drawings.push_back(d);
            } catch (const Error& e) {
                o.expect(false, key + ": " + e.what());
            }
        } else {
            bool refused = false;
            try {
                build_standard_drawing(g);
            } catch (const UnsupportedInput&) {
                refused = true;
            }
            o.expect(refused, key + ": 3-row construction accepted F=" + std::to_string(f));
            const auto found = search_drawing(g, 3);
            o.expect(f > 3 ? !found : found && found->k() == f, key + ": exact search finds a drawing with F != rows");
        }
    }
    o.notes.push_back(std::to_string(f3) + " graphs with F=3");
    return o;
}

Outcome classification() {
    Outcome o;
    NullityOptions budget;  // 50 restarts x 2000 iterations
    int counts[4] = {0, 0, 0, 0};
    for (const auto& g : corpus8()) {
        const auto key = encode_graph6(g);
        const auto c = classify(g);
        if (!c.m) continue;
        switch (c.tag) {
            case ClassTag::Path_FM1:
                o.expect(g.max_degree() <= 2 && g.size() == g.order() - 1, key + ": F=1 but not a path");
                ++counts[0];
                break;
            case ClassTag::TwoParallel_FM2: {
                const auto d = drawing_from_chains(g);
                o.expect(d.k() == 2 && verify_drawing(g, d).ok, key + ": no verified 2-row drawing");
                ++counts[1];
                break;
            }
            case ClassTag::Figure8_F3M2: ++counts[2]; break;
            default: ++counts[3]; break;
        }
        o.expect(maximize_nullity(g, *c.m, budget).achieved(), key + ": nullity " + std::to_string(*c.m) + " not certified");
    }

    const std::vector<std::vector<int>> family = {{1, 1, 1, 1, 1}, {2, 1, 1, 1, 1}, {2, 2, 1, 1, 1}, {2, 1, 2, 1, 1}, {3, 1, 1, 1, 1}};
    NullityOptions tenfold = budget;
    tenfold.restarts *= 10;
    int advisory_hits = 0;
    for (const auto& lengths : family) {
        const Graph g = figure8_graph(lengths);
        const auto c = classify(g);
        std::string name = "fig8:";
        for (int l : lengths) name += std::to_string(l) + (&l == &lengths.back() ? "" : ",");
        o.expect(c.tag == ClassTag::Figure8_F3M2 && c.f == 3 && c.m == 2, name + ": not classified Figure8_F3M2");
        o.expect(maximize_nullity(g, 2, budget).achieved(), name + ": nullity 2 not certified");
        if (maximize_nullity(g, 3, tenfold).achieved()) ++advisory_hits;
    }
    std::ostringstream s;
    s << "paths " << counts[0] << ", F=2 " << counts[1] << ", F=3 " << counts[3] << ", figure-8 instances "
      << family.size() << "; advisory (never nullity 3 at 10x budget): "
      << (advisory_hits == 0 ? "held" : std::to_string(advisory_hits) + " WARNINGS");
    o.notes.push_back(s.str());
    return o;
}

Outcome total_forcing() {
    Outcome o;
    Graph g = path_graph(2);
    for (int j = 1; j <= 4; ++j, g = disjoint_union(g, path_graph(2)))
        o.expect(total_forcing_number(g).k == 2 * j, std::to_string(j) + "P2: F_t != " + std::to_string(2 * j));
    for (const auto& d : three_row_drawings) {
        if (d.host.has_isolated_vertex()) continue;
        o.expect(total_forcing_number(d.host).k <= 2 * d.k(), encode_graph6(d.host) + ": F_t > 2k");
    }
    o.notes.push_back(std::to_string(three_row_drawings.size()) + " drawings");
    return o;
}

Outcome properties() {
    Outcome o;
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 500; ++i) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const Graph g = oracle::random_graph(rng, n, 0.35);
        std::vector<int> f;
        for (int v = 0; v < n; ++v)
            if (rng() % 3 == 0) f.push_back(v);
        o.expect(closure(g, f).derived == oracle::sequential_derived(g, f), "closure disagrees with sequential forcing");
    }

    int points = 0;
    while (points < 100) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Graph g = oracle::random_graph(rng, n, 0.5);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        Eigen::VectorXd d(g.order()), w(g.size());
        for (auto& x : d) x = u(rng);
        for (auto& x : w) x = u(rng) < 0 ? -1 - std::abs(u(rng)) : 1 + std::abs(u(rng));
        const PatternMatrix<double> a(g, d, w);
        const auto eig = jacobi_eigen(a.dense());
        const auto i = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
        double sep = INFINITY;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) sep = std::min(sep, std::abs(eig.values(j) - eig.values(i)));
        if (sep < 1e-2) continue;
        ++points;
        const Eigen::VectorXd grad = eigenvalue_gradient(g, eig.vectors.col(i));
        const Eigen::VectorXd theta = a.theta();
        Eigen::VectorXd fd(theta.size());
        for (Eigen::Index p = 0; p < theta.size(); ++p) {
            Eigen::VectorXd up = theta, down = theta;
            up(p) += 1e-5;
            down(p) -= 1e-5;
            fd(p) = (jacobi_eigen(PatternMatrix<double>::from_theta(g, up).dense()).values(i) -
                     jacobi_eigen(PatternMatrix<double>::from_theta(g, down).dense()).values(i)) / 2e-5;
        }
        o.expect((fd - grad).norm() <= 1e-5 * std::max(1.0, grad.norm()), "gradient disagrees with finite differences");
    }

    int corpus = 0;
    for (const auto& g : corpus8()) {
        ++corpus;
        const auto key = encode_graph6(g);
        o.expect(parse_graph6(key) == g, key + ": graph6 round trip");
        const auto fn = forcing_number(g);
        const ChainSet s = extract_chains(g, closure(g, fn.witness));
        std::vector<int> seen;
        for (const auto& ch : s.chains()) {
            o.expect(is_induced_path(g, ch.seq), key + ": chain is not an induced path");
            seen.insert(seen.end(), ch.seq.begin(), ch.seq.end());
        }
        std::sort(seen.begin(), seen.end());
        std::vector<int> all(static_cast<std::size_t>(g.order()));
        std::iota(all.begin(), all.end(), 0);
        o.expect(seen == all, key + ": chains do not partition V");
        o.expect(static_cast<int>(s.chains().size()) == fn.k, key + ": chain count != F");
        o.expect(s.trivial_count() <= fn.k, key + ": trivial chain bound");
        const auto rep = check_order_lemmas(s);
        o.expect(rep.ok(), key + ": order lemma scan " + (rep.violations.empty() ? "" : rep.violations.front()));
        if (fn.k == 3) {
            const auto repaired = eliminate_unfavorite(eliminate_bad(s));
            o.expect(check_order_lemmas(repaired).ok(), key + ": order lemmas fail after repair");
        }
    }
    o.notes.push_back("500 closures, 100 gradient points, " + std::to_string(corpus) + " corpus graphs");
    return o;
}

Outcome figures() {
    Outcome o;
    const StandardDrawing k5{complete_graph(5), {{0}, {1}, {2, 3}, {4}},
                             {Rational(3), Rational(4), Rational(2), Rational(6), Rational(1)}};
    o.expect(verify_drawing(k5.host, k5).ok, "K5 figure does not verify");
    const auto left = leftmost_set(k5);
    o.expect(left.size() == 4 && is_forcing_set(k5.host, left), "K5 left-most set does not force");

    enum : int { X, A6, A7, A10, A9, A16, A13, Y, A12, V1, V2, A5, A11, Z };
    const Graph g(14, {{X, A6}, {A6, A7}, {A7, A10}, {A10, A9}, {A9, A16}, {A16, A13}, {Y, A12}, {A12, V1}, {V1, V2},
                       {V2, A5}, {A5, A11}, {X, V1}, {X, V2}, {A11, A9}, {A11, A16}, {Z, A12}, {Z, A7}, {Z, A10}, {A5, A6}});
    try {
        const auto ladder = ladder_drawing(g, {X, A6, A7, A10, A9, A16, A13}, {Y, A12, V1, V2, A5, A11});
        o.expect(ladder.thick_vertices == std::vector<std::pair<int, int>>{{V1, V2}, {A9, A16}}, "thick pairs differ");
        const auto d = place_third(g, ladder, {Z});
        o.expect(verify_drawing(g, d).ok && d.k() == 3, "thick-split construction does not verify");
        o.expect(d.x[Z] == d.x[A12], "z is not placed above its ladder neighbour");
        const auto built = build_standard_drawing(g);
        o.expect(verify_drawing(g, built).ok && built.k() == 3, "pipeline drawing does not verify");
    } catch (const Error& e) {
        o.expect(false, e.what());
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "forcing numbers of P_n, K4, K3,3", 1, forcing_numbers},
        {2, "F <= F_t <= 2F and F <= n/2 + 1 on n <= 8", 120, bounds},
        {3, "F = 3 iff verified 3-row drawing; left-most sets force", 300, three_parallel},
        {4, "classification and certified nullity", 600, classification},
        {5, "F_t = 2j for jP2; F_t <= 2k on drawings", 30, total_forcing},
        {6, "property suite", 120, properties},
        {7, "figure fidelity (K5, thick split)", 1, figures},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s > c.limit_s) o.failures.push_back("over the time limit of " + std::to_string(c.limit_s) + " s");
        const bool pass = o.failures.empty();
        failed += !pass;
        std::printf("criterion %d %s: %s (%.2f s)", c.id, pass ? "PASS" : "FAIL", c.name, s);
        for (const auto& n : o.notes) std::printf("; %s", n.c_str());
        std::printf("\n");
        for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
