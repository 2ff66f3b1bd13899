#pragma once

#include <Eigen/Dense>
#include <Eigen/Jacobi>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "zf/errors.hpp"
#include "zf/graph.hpp"

namespace zf {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Symmetric matrix with the zero pattern of `host`: free diagonal, one weight
// per edge (in host.edges() order), zeros elsewhere.
// theta = [diag; weights] is the optimizer's coordinate vector.
template <typename Scalar = double>
struct PatternMatrix {
    Graph host;
    VectorX<Scalar> diag;
    VectorX<Scalar> weights;

    PatternMatrix() = default;
    PatternMatrix(Graph g, VectorX<Scalar> d, VectorX<Scalar> w) : host(std::move(g)), diag(std::move(d)), weights(std::move(w)) {
        if (diag.size() != host.order() || weights.size() != host.size())
            throw DomainError("pattern matrix needs n diagonal entries and one weight per edge");
    }

    // Unit weights with the given diagonal value.
    static PatternMatrix adjacency(const Graph& g, Scalar d = Scalar(0)) {
        return PatternMatrix(g, VectorX<Scalar>::Constant(g.order(), d), VectorX<Scalar>::Ones(g.size()));
    }

    static PatternMatrix from_theta(const Graph& g, const VectorX<Scalar>& theta) {
        return PatternMatrix(g, theta.head(g.order()), theta.tail(g.size()));
    }

    VectorX<Scalar> theta() const {
        VectorX<Scalar> t(diag.size() + weights.size());
        t << diag, weights;
        return t;
    }

    MatrixX<Scalar> dense() const {
        MatrixX<Scalar> a = diag.asDiagonal();
        const auto edges = host.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            a(edges[e].first, edges[e].second) = weights(static_cast<Eigen::Index>(e));
            a(edges[e].second, edges[e].first) = weights(static_cast<Eigen::Index>(e));
        }
        return a;
    }

    Scalar min_abs_weight() const { return weights.size() ? weights.cwiseAbs().minCoeff() : Scalar(INFINITY); }
};

template <typename Scalar>
struct SymmetricEigen {
    VectorX<Scalar> values;   // ascending
    MatrixX<Scalar> vectors;  // columns match values
    int sweeps = 0;
};

// Cyclic Jacobi rotations until the off-diagonal norm drops below
// 1e-12 * ||A||_F. Throws NumericalFailure after `max_sweeps`.
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input, int max_sweeps = 100) {
    using Scalar = typename Derived::Scalar;
    using std::sqrt;
    if (input.rows() != input.cols()) throw DomainError("jacobi_eigen needs a square matrix");
    const Eigen::Index n = input.rows();
    MatrixX<Scalar> a = (input + input.transpose()) / Scalar(2);
    MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);
    const Scalar threshold = Scalar(1e-12) * a.norm();
    // Summed directly: ||A||^2 - ||diag||^2 cancels far above the threshold.
    auto off_norm = [&] {
        Scalar s(0);
        for (Eigen::Index q = 0; q < n; ++q)
            for (Eigen::Index p = 0; p < q; ++p) s += a(p, q) * a(p, q);
        return sqrt(Scalar(2) * s);
    };

    SymmetricEigen<Scalar> out;
    bool converged = off_norm() <= threshold;
    for (; !converged && out.sweeps < max_sweeps; ++out.sweeps) {
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == Scalar(0)) continue;
                Eigen::JacobiRotation<Scalar> rot;
                rot.makeJacobi(a, p, q);
                a.applyOnTheLeft(p, q, rot.adjoint());
                a.applyOnTheRight(p, q, rot);
                v.applyOnTheRight(p, q, rot);
            }
        converged = off_norm() <= threshold;
    }
    if (!converged) throw NumericalFailure("Jacobi iteration did not converge");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
        out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

template <typename Scalar>
VectorX<Scalar> spectrum(const PatternMatrix<Scalar>& a) {
    if (a.host.order() > 64) throw UnsupportedSize("spectrum supports n <= 64");
    return jacobi_eigen(a.dense()).values;
}

// Number of eigenvalues with |lambda| < tol_zero * max(1, ||A||_F).
template <typename Scalar>
int nullity_of(const PatternMatrix<Scalar>& a, Scalar tol_zero) {
    if (!(tol_zero > Scalar(0))) throw DomainError("tolerance must be positive");
    using std::abs;
    const MatrixX<Scalar> m = a.dense();
    const Scalar cut = tol_zero * std::max(Scalar(1), m.norm());
    const auto values = jacobi_eigen(m).values;
    return static_cast<int>((values.array().abs() < cut).count());
}

// d(lambda)/d(theta) for a simple eigenvalue with unit eigenvector v:
// v_u^2 on the diagonal coordinates, 2 v_u v_w on the edge coordinates.
template <typename Derived>
VectorX<typename Derived::Scalar> eigenvalue_gradient(const Graph& g, const Eigen::MatrixBase<Derived>& v) {
    using Scalar = typename Derived::Scalar;
    const auto edges = g.edges();
    VectorX<Scalar> grad(g.order() + g.size());
    grad.head(g.order()) = v.cwiseAbs2();
    for (std::size_t e = 0; e < edges.size(); ++e)
        grad(g.order() + static_cast<Eigen::Index>(e)) = Scalar(2) * v(edges[e].first) * v(edges[e].second);
    return grad;
}

// Indices of the k eigenvalues smallest in absolute value (ties by index).
template <typename Derived>
std::vector<Eigen::Index> smallest_abs(const Eigen::MatrixBase<Derived>& values, int k) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(values.size()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::stable_sort(idx.begin(), idx.end(), [&](auto i, auto j) {
        using std::abs;
        return abs(values(i)) < abs(values(j));
    });
    idx.resize(static_cast<std::size_t>(std::min<Eigen::Index>(k, values.size())));
    return idx;
}

template <typename Scalar>
struct SpectralObjective {
    int target = 1;
    Scalar delta = Scalar(1e-3);  // minimum |weight|
    Scalar rho = Scalar(10);      // penalty weight
    Scalar cluster_tol = Scalar(1e-9);
};

template <typename Scalar>
Scalar weight_penalty(const VectorX<Scalar>& weights, const SpectralObjective<Scalar>& obj) {
    return obj.rho * (obj.delta - weights.array().abs()).max(Scalar(0)).square().sum();
}

// f(theta) = sum of squares of the `target` eigenvalues smallest in |lambda|,
// plus rho * sum max(0, delta - |w|)^2.
template <typename Scalar>
Scalar spectral_objective(const PatternMatrix<Scalar>& a, const SpectralObjective<Scalar>& obj) {
    const auto values = jacobi_eigen(a.dense()).values;
    Scalar f = weight_penalty(a.weights, obj);
    for (auto i : smallest_abs(values, obj.target)) f += values(i) * values(i);
    return f;
}

// Gradient of spectral_objective. Eigenvalues closer than cluster_tol form a
// cluster; a selected member of a cluster takes the cluster-averaged
// eigenvalue gradient, which is basis independent.
template <typename Scalar>
VectorX<Scalar> spectral_gradient(const PatternMatrix<Scalar>& a, const SpectralObjective<Scalar>& obj) {
    using std::abs;
    const Graph& g = a.host;
    const auto eig = jacobi_eigen(a.dense());
    const Scalar scale = std::max(Scalar(1), eig.values.cwiseAbs().maxCoeff());
    VectorX<Scalar> grad = VectorX<Scalar>::Zero(g.order() + g.size());
    for (auto i : smallest_abs(eig.values, obj.target)) {
        VectorX<Scalar> gi = VectorX<Scalar>::Zero(grad.size());
        int members = 0;
        for (Eigen::Index j = 0; j < eig.values.size(); ++j)
            if (abs(eig.values(j) - eig.values(i)) <= obj.cluster_tol * scale) {
                gi += eigenvalue_gradient(g, eig.vectors.col(j));
                ++members;
            }
        grad += Scalar(2) * eig.values(i) * gi / Scalar(members);
    }
    const auto w = a.weights.array();
    const auto short_by = (obj.delta - w.abs()).max(Scalar(0));
    grad.tail(g.size()) += (-Scalar(2) * obj.rho * short_by * w.sign()).matrix();
    return grad;
}

// ---------------------------------------------------------------------------
// Maximum-nullity search (double precision)

struct NullityCertificate {
    PatternMatrix<double> matrix;
    int k = 0;
    VectorX<double> eigenvalues;  // sorted by absolute value
    double tol_zero = 1e-8;
    double gap = 0;               // (k+1)-th smallest |lambda|, infinity when k = n
};

// Rechecks the separation contract: the k smallest |lambda| are below
// tol_zero * max(1, ||A||_F) and the next one is at least 10 times that,
// and every weight is nonzero.
bool certificate_holds(const PatternMatrix<double>& a, int k, double tol_zero);

// Builds a certificate for `a` claiming nullity k if the contract holds.
std::optional<NullityCertificate> make_certificate(const PatternMatrix<double>& a, int k, double tol_zero = 1e-8);

struct NullityOptions {
    int restarts = 50;
    int iterations = 2000;
    std::uint64_t seed = 1;
    int workers = 1;
    double delta = 1e-3;
    double tol_zero = 1e-8;
    int stall_limit = 30;  // steps without 0.1% progress before a kick
    double kick = 1.0;     // std-dev of the perturbation applied on a stall
};

struct NullityResult {
    std::optional<NullityCertificate> certificate;
    int best_k = 0;               // largest nullity certified along the way
    double best_objective = INFINITY;  // smallest squared residual of A X = 0 seen
    int restart = -1;             // restart that produced the certificate
    int iterations = 0;           // total iterations spent
    bool achieved() const { return certificate.has_value(); }
};

// Randomized search for a pattern matrix of nullity `target`. Restart r uses
// seed + r; the certificate of the lowest successful restart index is
// returned, so results do not depend on `workers`. n <= 32.
NullityResult maximize_nullity(const Graph& g, int target, const NullityOptions& opt = {});

std::string certificate_to_json(const NullityCertificate& c);
// Loads a certificate and re-verifies it; throws ContractError if it fails.
NullityCertificate certificate_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// Classification for max degree <= 3

struct Figure8Decomposition {
    std::vector<int> cycle;                // c_1..c_5 in cyclic order, starting at the smallest id
    std::vector<VertexSeq> pendants;       // pendants[i] starts at the neighbour of cycle[i]
};

// A 5-cycle of degree-3 vertices, each carrying one pendant path, nothing else.
std::optional<Figure8Decomposition> is_figure8(const Graph& g);

enum class ClassTag { Path_FM1, TwoParallel_FM2, Figure8_F3M2, ThreeParallel_FM3, Beyond };

std::string to_string(ClassTag tag);

struct Classification {
    ClassTag tag = ClassTag::Beyond;
    int f = 0;
    std::optional<int> m;  // exact maximum nullity, unset for Beyond
};

Classification classify(const Graph& g);

}  // namespace zf
