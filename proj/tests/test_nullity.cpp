#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "zf/errors.hpp"
#include "zf/forcing.hpp"
#include "zf/nullity.hpp"

using namespace zf;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace {

PatternMatrix<double> random_pattern(std::mt19937_64& rng, const Graph& g) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    Vec d(g.order()), w(g.size());
    for (auto& x : d) x = u(rng);
    for (auto& x : w) x = u(rng) < 0 ? u(rng) - 1.6 : u(rng) + 1.6;
    return PatternMatrix<double>(g, d, w);
}

double min_separation(const Vec& values, Eigen::Index i) {
    double s = INFINITY;
    for (Eigen::Index j = 0; j < values.size(); ++j)
        if (j != i) s = std::min(s, std::abs(values(j) - values(i)));
    return s;
}

}  // namespace

TEST_SUITE("test_nullity") {

TEST_CASE("spectrum of P3, C4 and a diagonal matrix") {
    const Vec p3 = spectrum(PatternMatrix<double>::adjacency(path_graph(3)));
    REQUIRE(p3.size() == 3);
    CHECK(p3(0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-10));
    CHECK(std::abs(p3(1)) < 1e-10);
    CHECK(p3(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

    const Vec c4 = spectrum(PatternMatrix<double>::adjacency(cycle_graph(4)));
    const Vec want = (Vec(4) << -2, 0, 0, 2).finished();
    CHECK((c4 - want).cwiseAbs().maxCoeff() < 1e-10);

    PatternMatrix<double> diag(empty_graph(3), Vec((Vec(3) << 2.5, -1, 0.25).finished()), Vec(0));
    CHECK(spectrum(diag) == (Vec(3) << -1, 0.25, 2.5).finished());
}

TEST_CASE("nullity_of counts relative zeros") {
    CHECK(nullity_of(PatternMatrix<double>::adjacency(path_graph(3)), 1e-8) == 1);
    CHECK(nullity_of(PatternMatrix<double>::adjacency(cycle_graph(4)), 1e-8) == 2);
    CHECK(nullity_of(PatternMatrix<double>::adjacency(empty_graph(3), 1.0), 1e-8) == 0);
    CHECK_THROWS_AS(nullity_of(PatternMatrix<double>::adjacency(path_graph(3)), 0.0), DomainError);
}

TEST_CASE("pattern matrix layout") {
    const Graph g = path_graph(3);
    PatternMatrix<double> a(g, Vec((Vec(3) << 1, 2, 3).finished()), Vec((Vec(2) << -4, 5).finished()));
    const Mat want = (Mat(3, 3) << 1, -4, 0, -4, 2, 5, 0, 5, 3).finished();
    CHECK(a.dense() == want);
    CHECK(PatternMatrix<double>::from_theta(g, a.theta()).dense() == want);
    CHECK(a.min_abs_weight() == 4);
    CHECK_THROWS_AS(PatternMatrix<double>(g, Vec(2), Vec(2)), DomainError);
}

TEST_CASE("Jacobi agrees with the library eigensolver") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 14;
        Mat a(n, n);
        for (auto& x : a.reshaped()) x = nd(rng);
        a = (a + a.transpose()).eval();
        if (trial % 5 == 0) a.row(0).setZero(), a.col(0).setZero();  // forced zero eigenvalue
        const auto mine = jacobi_eigen(a);
        const Eigen::SelfAdjointEigenSolver<Mat> ref(a);
        const double scale = std::max(1.0, a.norm());
        CHECK((mine.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10 * scale);
        CHECK((a * mine.vectors - mine.vectors * mine.values.asDiagonal()).norm() < 1e-9 * scale);
        CHECK((mine.vectors.transpose() * mine.vectors - Mat::Identity(n, n)).norm() < 1e-10);
    }
}

TEST_CASE("Jacobi is generic in the scalar type") {
    using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const MatL a = PatternMatrix<long double>::adjacency(cycle_graph(5)).dense();
    const auto eig = jacobi_eigen(a);
    CHECK(std::abs(static_cast<double>(eig.values(4)) - 2.0) < 1e-15);
    const auto f = jacobi_eigen(PatternMatrix<float>::adjacency(path_graph(3)).dense());
    CHECK(std::abs(f.values(1)) < 1e-6f);
    CHECK_THROWS_AS(jacobi_eigen(Mat(2, 3)), DomainError);
}

TEST_CASE("eigenvalue gradient matches central differences at 100 points") {
    std::mt19937_64 rng(11);
    const double h = 1e-5;
    int points = 0;
    while (points < 100) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Graph g = oracle::random_graph(rng, n, 0.5);
        const auto a = random_pattern(rng, g);
        const auto eig = jacobi_eigen(a.dense());
        const auto i = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
        if (min_separation(eig.values, i) < 1e-2) continue;  // only non-degenerate points
        ++points;
        const Vec analytic = eigenvalue_gradient(g, eig.vectors.col(i));
        const Vec theta = a.theta();
        Vec fd(theta.size());
        for (Eigen::Index p = 0; p < theta.size(); ++p) {
            Vec up = theta, down = theta;
            up(p) += h;
            down(p) -= h;
            fd(p) = (jacobi_eigen(PatternMatrix<double>::from_theta(g, up).dense()).values(i) -
                     jacobi_eigen(PatternMatrix<double>::from_theta(g, down).dense()).values(i)) /
                    (2 * h);
        }
        CHECK((fd - analytic).norm() <= 1e-5 * std::max(1.0, analytic.norm()));
    }
}

TEST_CASE("objective gradient matches central differences, penalty included") {
    std::mt19937_64 rng(12);
    const double h = 1e-6;
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = oracle::random_graph(rng, 6, 0.5);
        auto a = random_pattern(rng, g);
        if (g.size() > 0) a.weights(0) = 4e-4;  // inside the penalty zone
        SpectralObjective<double> obj;
        obj.target = 1 + trial % 3;
        const auto values = jacobi_eigen(a.dense()).values;
        bool separated = true;
        for (Eigen::Index i = 0; i < values.size(); ++i)
            separated = separated && min_separation(values, i) > 1e-2 && std::abs(values(i)) > 1e-2;
        if (!separated) continue;
        const Vec analytic = spectral_gradient(a, obj);
        const Vec theta = a.theta();
        Vec fd(theta.size());
        for (Eigen::Index p = 0; p < theta.size(); ++p) {
            Vec up = theta, down = theta;
            up(p) += h;
            down(p) -= h;
            fd(p) = (spectral_objective(PatternMatrix<double>::from_theta(g, up), obj) -
                     spectral_objective(PatternMatrix<double>::from_theta(g, down), obj)) /
                    (2 * h);
        }
        CHECK((fd - analytic).norm() <= 1e-5 * std::max(1.0, analytic.norm()));
    }
}

TEST_CASE("cluster-averaged gradient does not depend on the eigenbasis") {
    // C4 adjacency: the zero eigenvalue is double, so any basis of it is valid.
    const auto a = PatternMatrix<double>::adjacency(cycle_graph(4), 0.0);
    PatternMatrix<double> shifted = a;
    shifted.diag.setConstant(0.5);
    SpectralObjective<double> obj;
    obj.target = 1;
    const Vec g1 = spectral_gradient(shifted, obj);
    // Selected eigenvalue 0.5 is double. Its projector has diagonal 1/2 and
    // zero entries on the cycle edges, so the average over the pair is 1/4.
    Vec want = Vec::Zero(8);
    want.head(4).setConstant(2 * 0.5 * 0.25);
    CHECK((g1 - want).norm() < 1e-12);
}

TEST_CASE("certificates for the standard witnesses") {
    for (int n = 1; n <= 9; ++n) {
        const auto r = maximize_nullity(path_graph(n), 1);
        REQUIRE(r.achieved());
        CHECK(r.certificate->k == 1);
        CHECK(certificate_holds(r.certificate->matrix, 1, 1e-8));
    }
    const auto c4 = maximize_nullity(cycle_graph(4), 2);
    REQUIRE(c4.achieved());
    CHECK(c4.certificate->gap >= 10 * 1e-8);
    const auto k4 = maximize_nullity(complete_graph(4), 3);
    REQUIRE(k4.achieved());

    // Hand-built witnesses: C4 adjacency and the all-ones K4 matrix.
    CHECK(make_certificate(PatternMatrix<double>::adjacency(cycle_graph(4)), 2).has_value());
    CHECK(make_certificate(PatternMatrix<double>::adjacency(complete_graph(4), 1.0), 3).has_value());
    CHECK_FALSE(make_certificate(PatternMatrix<double>::adjacency(complete_graph(4), 1.0), 2).has_value());
}

TEST_CASE("certificate contract rejects weak separation and tiny weights") {
    // Eigenvalue 5e-8 sits between tol and 10 tol.
    PatternMatrix<double> a(empty_graph(2), Vec((Vec(2) << 0, 5e-8).finished()), Vec(0));
    CHECK_FALSE(certificate_holds(a, 1, 1e-8));
    a.diag(1) = 1;
    CHECK(certificate_holds(a, 1, 1e-8));
    PatternMatrix<double> small(path_graph(2), Vec::Zero(2), Vec::Constant(1, 1e-4));
    CHECK_FALSE(certificate_holds(small, 0, 1e-8));
}

TEST_CASE("maximize_nullity is reproducible and worker independent") {
    const Graph g = figure8_graph({1, 1, 1, 1, 1});
    NullityOptions one, three;
    three.workers = 3;
    const auto a = maximize_nullity(g, 2, one), b = maximize_nullity(g, 2, three);
    REQUIRE(a.achieved());
    REQUIRE(b.achieved());
    CHECK(a.restart == b.restart);
    CHECK(a.iterations == b.iterations);
    CHECK(a.certificate->matrix.theta() == b.certificate->matrix.theta());
}

TEST_CASE("impossible targets come back not achieved") {
    NullityOptions opt;
    opt.restarts = 3;
    opt.iterations = 300;
    const auto p = maximize_nullity(path_graph(5), 2, opt);
    CHECK_FALSE(p.achieved());
    CHECK(p.restart == -1);
    CHECK(p.iterations == 900);
    CHECK_FALSE(maximize_nullity(figure8_graph({1, 1, 1, 1, 1}), 3, opt).achieved());
}

TEST_CASE("maximize_nullity input errors") {
    CHECK_THROWS_AS(maximize_nullity(path_graph(3), 0), DomainError);
    CHECK_THROWS_AS(maximize_nullity(path_graph(3), 4), DomainError);
    CHECK_THROWS_AS(maximize_nullity(path_graph(33), 1), UnsupportedSize);
}

TEST_CASE("certificate JSON round trip and tamper detection") {
    const auto r = maximize_nullity(cycle_graph(5), 2);
    REQUIRE(r.achieved());
    const std::string text = certificate_to_json(*r.certificate);
    const auto back = certificate_from_json(text);
    CHECK(back.k == 2);
    CHECK(back.matrix.host == cycle_graph(5));
    CHECK(back.matrix.theta() == r.certificate->matrix.theta());

    auto j = nlohmann::json::parse(text);
    CHECK(j.at("weights").contains("0-1"));
    j["diag"][0] = j["diag"][0].get<double>() + 0.5;
    CHECK_THROWS_AS(certificate_from_json(j.dump()), ContractError);
    CHECK_THROWS_AS(certificate_from_json("{\"n\": 3}"), ContractError);
}

TEST_CASE("figure-8 detector") {
    const auto minimal = is_figure8(figure8_graph({1, 1, 1, 1, 1}));
    REQUIRE(minimal.has_value());
    CHECK(minimal->cycle.size() == 5);
    for (const auto& p : minimal->pendants) CHECK(p.size() == 1);

    const auto longer = is_figure8(figure8_graph({1, 2, 1, 3, 1}));
    REQUIRE(longer.has_value());
    std::vector<std::size_t> lengths;
    for (const auto& p : longer->pendants) lengths.push_back(p.size());
    CHECK(lengths == std::vector<std::size_t>{1, 2, 1, 3, 1});

    CHECK_FALSE(is_figure8(cycle_graph(5)));
    // A missing pendant or a pendant tree instead of a path.
    Graph four = cycle_graph(5);
    four = disjoint_union(four, empty_graph(4));
    for (int i = 0; i < 4; ++i) four.add_edge(i, 5 + i);
    CHECK_FALSE(is_figure8(four));
    Graph forked = figure8_graph({2, 1, 1, 1, 1});
    forked = disjoint_union(forked, empty_graph(1));
    forked.add_edge(5, forked.order() - 1);
    CHECK_FALSE(is_figure8(forked));

    // Labels do not matter.
    std::vector<int> perm(10);
    for (int i = 0; i < 10; ++i) perm[static_cast<std::size_t>(i)] = (i * 7 + 3) % 10;
    CHECK(is_figure8(relabel(figure8_graph({1, 1, 1, 1, 1}), perm)).has_value());
}

TEST_CASE("classify examples") {
    const auto p9 = classify(path_graph(9));
    CHECK(p9.tag == ClassTag::Path_FM1);
    CHECK(p9.f == 1);
    CHECK(p9.m == 1);
    const auto f8 = classify(figure8_graph({1, 1, 1, 1, 1}));
    CHECK(f8.tag == ClassTag::Figure8_F3M2);
    CHECK(f8.f == 3);
    CHECK(f8.m == 2);
    const auto k33 = classify(complete_bipartite(3, 3));
    CHECK(k33.tag == ClassTag::Beyond);
    CHECK(k33.f == 4);
    CHECK_FALSE(k33.m.has_value());
    CHECK(classify(complete_graph(4)).tag == ClassTag::ThreeParallel_FM3);
    CHECK(classify(cycle_graph(6)).tag == ClassTag::TwoParallel_FM2);
    CHECK(classify(complete_bipartite(1, 4)).tag == ClassTag::Beyond);  // degree 4
    CHECK(to_string(ClassTag::Figure8_F3M2) == "Figure8_F3M2");
}

TEST_CASE("corpus n <= 7: optimizer reaches the classified nullity, never above F") {
    for (int n = 1; n <= 7; ++n)
        for (const auto& g : enumerate_connected_subcubic(n)) {
            const auto c = classify(g);
            if (!c.m) {
                CHECK(c.f >= 4);
                continue;
            }
            CHECK(*c.m <= c.f);
            const auto r = maximize_nullity(g, *c.m);
            CHECK_MESSAGE(r.achieved(), encode_graph6(g));
            if (r.achieved()) CHECK(r.certificate->k <= c.f);
        }
}

TEST_CASE("trees and cycles have F = M") {
    for (int n = 3; n <= 8; ++n) {
        const auto r = maximize_nullity(cycle_graph(n), 2);
        CHECK(r.achieved());
        CHECK(forcing_number(cycle_graph(n)).k == 2);
    }
    for (int n = 1; n <= 8; ++n)
        for (const auto& g : enumerate_connected_subcubic(n)) {
            if (g.size() != n - 1) continue;
            const int f = forcing_number(g).k;
            CHECK(maximize_nullity(g, f).achieved());
        }
}

}  // TEST_SUITE
