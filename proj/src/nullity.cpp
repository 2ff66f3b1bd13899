#include "zf/nullity.hpp"

#include <atomic>
#include <random>
#include <thread>

#include "json.hpp"
#include "zf/forcing.hpp"

namespace zf {

namespace {

using Vec = VectorX<double>;
using Mat = MatrixX<double>;

constexpr double kDelta = 1e-3;

double cut_of(const Mat& a, double tol_zero) { return tol_zero * std::max(1.0, a.norm()); }

// Nullity the separation contract certifies for these eigenvalues, or -1.
int certified_count(const Vec& values, double cut) {
    const Vec mags = values.cwiseAbs();
    const int k = static_cast<int>((mags.array() < cut).count());
    for (Eigen::Index i = 0; i < mags.size(); ++i)
        if (mags(i) >= cut && mags(i) < 10 * cut) return -1;
    return k;
}

struct Restart {
    std::optional<PatternMatrix<double>> witness;
    int best_k = 0;
    double best_objective = INFINITY;
    int iterations = 0;
};

// Gauss-Newton on the bilinear system A(theta) X = 0, X^T X = I,
// ||A||_F^2 = n, started from the eigenvectors of the `target` eigenvalues
// smallest in magnitude. A failed line search or a stall perturbs theta and
// continues within the same restart.
class Search {
public:
    Search(const Graph& g, int target, const NullityOptions& opt)
        : g_(g), n_(g.order()), m_(g.size()), k_(target), opt_(opt), edges_(g.edges()) {}

    Restart run(std::uint64_t seed) const {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> diag(-1.0, 1.0), mag(0.5, 1.5);
        std::bernoulli_distribution coin(0.5);
        std::normal_distribution<double> noise(0.0, 1.0);
        Vec theta(n_ + m_);
        for (int v = 0; v < n_; ++v) theta(v) = diag(rng);
        for (int e = 0; e < m_; ++e) theta(n_ + e) = coin(rng) ? mag(rng) : -mag(rng);
        theta = normalize(theta);

        Restart out;
        Mat x = restart_basis(theta, out);
        double f = residual(theta, x).squaredNorm();
        double stall_ref = f;
        int stall = 0;
        for (int it = 0; it < opt_.iterations; ++it) {
            out.iterations = it + 1;
            out.best_objective = std::min(out.best_objective, f);
            if (f < 1e-18 * n_) {
                const auto a = PatternMatrix<double>::from_theta(g_, theta);
                const Mat dense = a.dense();
                const int k = certified_count(jacobi_eigen(dense).values, cut_of(dense, opt_.tol_zero));
                out.best_k = std::max(out.best_k, std::min(k, k_));
                if (k == k_ && a.min_abs_weight() >= opt_.delta) {
                    out.witness = a;
                    return out;
                }
            }
            bool moved = step(theta, x, f);
            if (moved && f < stall_ref * (1 - 1e-3)) stall_ref = f, stall = 0;
            else if (moved) ++stall;
            if (!moved || stall >= opt_.stall_limit) {
                for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) += opt_.kick * noise(rng);
                theta = normalize(theta);
                x = restart_basis(theta, out);
                f = stall_ref = residual(theta, x).squaredNorm();
                stall = 0;
            }
        }
        return out;
    }

private:
    // Frobenius norm sqrt(n), then |w| >= delta.
    Vec normalize(Vec theta) const {
        if (m_ > 0) {
            const double norm = std::sqrt(theta.head(n_).squaredNorm() + 2 * theta.tail(m_).squaredNorm());
            if (norm > 0) theta *= std::sqrt(static_cast<double>(n_)) / norm;
        }
        for (int e = 0; e < m_; ++e) {
            double& w = theta(n_ + e);
            if (std::abs(w) < opt_.delta) w = w < 0 ? -opt_.delta : opt_.delta;
        }
        return theta;
    }

    Mat restart_basis(const Vec& theta, Restart& out) const {
        const Mat dense = PatternMatrix<double>::from_theta(g_, theta).dense();
        const auto eig = jacobi_eigen(dense);
        out.best_k = std::max(out.best_k, std::min(certified_count(eig.values, cut_of(dense, opt_.tol_zero)), k_));
        const auto sel = smallest_abs(eig.values, k_);
        Mat x(n_, k_);
        for (int i = 0; i < k_; ++i) x.col(i) = eig.vectors.col(sel[static_cast<std::size_t>(i)]);
        return x;
    }

    // Edges in the edgeless case contribute nothing to the norm equation.
    int rows() const { return n_ * k_ + k_ * (k_ + 1) / 2 + (m_ > 0 ? 1 : 0); }

    Vec residual(const Vec& theta, const Mat& x) const {
        const Mat ax = PatternMatrix<double>::from_theta(g_, theta).dense() * x;
        Vec r(rows());
        r.head(n_ * k_) = Eigen::Map<const Vec>(ax.data(), n_ * k_);
        const Mat gram = x.transpose() * x;
        int i = n_ * k_;
        for (int a = 0; a < k_; ++a)
            for (int b = a; b < k_; ++b) r(i++) = gram(a, b) - (a == b ? 1.0 : 0.0);
        if (m_ > 0) r(i) = (theta.head(n_).squaredNorm() + 2 * theta.tail(m_).squaredNorm()) / n_ - 1;
        return r;
    }

    Mat jacobian(const Vec& theta, const Mat& x) const {
        const Mat a = PatternMatrix<double>::from_theta(g_, theta).dense();
        const int xs = n_ + m_;  // first column of the X block
        Mat jac = Mat::Zero(rows(), xs + n_ * k_);
        for (int c = 0; c < k_; ++c) {
            for (int v = 0; v < n_; ++v) jac(c * n_ + v, v) = x(v, c);
            for (int e = 0; e < m_; ++e) {
                const auto [p, q] = edges_[static_cast<std::size_t>(e)];
                jac(c * n_ + p, n_ + e) += x(q, c);
                jac(c * n_ + q, n_ + e) += x(p, c);
            }
            jac.block(c * n_, xs + c * n_, n_, n_) = a;
        }
        int row = n_ * k_;
        for (int p = 0; p < k_; ++p)
            for (int q = p; q < k_; ++q, ++row) {
                jac.block(row, xs + p * n_, 1, n_) += x.col(q).transpose();
                jac.block(row, xs + q * n_, 1, n_) += x.col(p).transpose();
            }
        if (m_ > 0) {
            jac.block(row, 0, 1, n_) = 2 * theta.head(n_).transpose() / n_;
            jac.block(row, n_, 1, m_) = 4 * theta.tail(m_).transpose() / n_;
        }
        return jac;
    }

    // Minimum-norm Gauss-Newton step with halving; weights may not cross below delta.
    bool step(Vec& theta, Mat& x, double& f) const {
        const Vec r = residual(theta, x);
        const Vec d = jacobian(theta, x).completeOrthogonalDecomposition().solve(-r);
        if (!d.allFinite()) return false;
        double alpha = 1;
        for (int i = 0; i < 30; ++i, alpha /= 2) {
            const Vec t = theta + alpha * d.head(n_ + m_);
            if (m_ > 0 && t.tail(m_).cwiseAbs().minCoeff() < opt_.delta) continue;
            const Mat y = x + alpha * Eigen::Map<const Mat>(d.data() + n_ + m_, n_, k_);
            const double ft = residual(t, y).squaredNorm();
            if (ft < f) {
                theta = t;
                x = y;
                f = ft;
                return true;
            }
        }
        return false;
    }

    const Graph& g_;
    int n_, m_, k_;
    NullityOptions opt_;
    std::vector<Edge> edges_;
};

}  // namespace

bool certificate_holds(const PatternMatrix<double>& a, int k, double tol_zero) {
    if (!(tol_zero > 0) || k < 0 || k > a.host.order()) return false;
    if (a.host.size() > 0 && a.min_abs_weight() < kDelta) return false;
    const Mat dense = a.dense();
    return certified_count(jacobi_eigen(dense).values, cut_of(dense, tol_zero)) == k;
}

std::optional<NullityCertificate> make_certificate(const PatternMatrix<double>& a, int k, double tol_zero) {
    if (!certificate_holds(a, k, tol_zero)) return std::nullopt;
    NullityCertificate c;
    c.matrix = a;
    c.k = k;
    c.tol_zero = tol_zero;
    const Vec values = spectrum(a);
    const auto order = smallest_abs(values, a.host.order());
    c.eigenvalues.resize(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) c.eigenvalues(static_cast<Eigen::Index>(i)) = values(order[i]);
    c.gap = k < a.host.order() ? std::abs(c.eigenvalues(k)) : INFINITY;
    return c;
}

NullityResult maximize_nullity(const Graph& g, int target, const NullityOptions& opt) {
    if (g.order() > 32) throw UnsupportedSize("maximize_nullity supports n <= 32");
    if (target < 1 || target > g.order()) throw DomainError("target must lie in 1..n");
    if (opt.restarts < 1 || opt.iterations < 1) throw DomainError("budget must be positive");

    const Search search(g, target, opt);
    std::vector<Restart> results(static_cast<std::size_t>(opt.restarts));
    std::atomic<int> next{0}, first_success{opt.restarts};
    auto worker = [&] {
        for (int r; (r = next.fetch_add(1)) < opt.restarts;) {
            if (r > first_success.load()) continue;
            results[static_cast<std::size_t>(r)] = search.run(opt.seed + static_cast<std::uint64_t>(r));
            if (results[static_cast<std::size_t>(r)].witness) {
                int cur = first_success.load();
                while (r < cur && !first_success.compare_exchange_weak(cur, r)) {
                }
            }
        }
    };
    const int workers = std::clamp(opt.workers, 1, opt.restarts);
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Fold only restarts up to the winner so the result is independent of scheduling.
    NullityResult out;
    const int last = std::min(first_success.load(), opt.restarts - 1);
    for (int r = 0; r <= last; ++r) {
        const auto& res = results[static_cast<std::size_t>(r)];
        out.best_k = std::max(out.best_k, res.best_k);
        out.best_objective = std::min(out.best_objective, res.best_objective);
        out.iterations += res.iterations;
    }
    if (first_success.load() < opt.restarts) {
        out.restart = first_success.load();
        out.certificate = make_certificate(*results[static_cast<std::size_t>(out.restart)].witness, target, opt.tol_zero);
        if (!out.certificate) throw InternalLogicError("optimizer witness failed certificate re-check");
        out.best_k = target;
    }
    return out;
}

std::string certificate_to_json(const NullityCertificate& c) {
    nlohmann::ordered_json j;
    const auto& a = c.matrix;
    j["n"] = a.host.order();
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    nlohmann::ordered_json weights = nlohmann::ordered_json::object();
    const auto es = a.host.edges();
    for (std::size_t e = 0; e < es.size(); ++e) {
        edges.push_back({es[e].first, es[e].second});
        weights[std::to_string(es[e].first) + "-" + std::to_string(es[e].second)] = a.weights(static_cast<Eigen::Index>(e));
    }
    j["edges"] = edges;
    j["diag"] = std::vector<double>(a.diag.data(), a.diag.data() + a.diag.size());
    j["weights"] = weights;
    j["eigenvalues"] = std::vector<double>(c.eigenvalues.data(), c.eigenvalues.data() + c.eigenvalues.size());
    j["k"] = c.k;
    j["tol_zero"] = c.tol_zero;
    return j.dump();
}

NullityCertificate certificate_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        const int n = j.at("n").get<int>();
        Graph g(n);
        for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
        const auto diag = j.at("diag").get<std::vector<double>>();
        if (static_cast<int>(diag.size()) != n) throw ContractError("certificate diagonal has wrong length");
        Vec d = Eigen::Map<const Vec>(diag.data(), n);
        Vec w(g.size());
        const auto es = g.edges();
        for (std::size_t e = 0; e < es.size(); ++e)
            w(static_cast<Eigen::Index>(e)) =
                j.at("weights").at(std::to_string(es[e].first) + "-" + std::to_string(es[e].second)).get<double>();
        PatternMatrix<double> a(g, d, w);
        auto c = make_certificate(a, j.at("k").get<int>(), j.at("tol_zero").get<double>());
        if (!c) throw ContractError("certificate does not re-verify");
        return *c;
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(std::string("malformed certificate: ") + e.what());
    }
}

std::optional<Figure8Decomposition> is_figure8(const Graph& g) {
    const int n = g.order();
    if (n < 10 || g.size() != n || !g.is_connected() || g.max_degree() > 3) return std::nullopt;
    VertexMask cyc = 0;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 3) cyc |= bit(v);
    if (popcount(cyc) != 5) return std::nullopt;
    for (int v : to_vector(cyc))
        if (popcount(g.neighbors(v) & cyc) != 2) return std::nullopt;

    // Connected and unicyclic, so the five degree-3 vertices with two cycle
    // neighbours each form the cycle and everything else hangs off as paths.
    Figure8Decomposition d;
    int prev = -1, cur = lowest(cyc);
    for (int i = 0; i < 5; ++i) {
        d.cycle.push_back(cur);
        const int next = lowest(g.neighbors(cur) & cyc & ~(prev >= 0 ? bit(prev) : 0));
        prev = cur;
        cur = next;
    }
    if (cur != d.cycle.front()) return std::nullopt;
    for (int c : d.cycle) {
        VertexSeq path;
        int from = c, at = lowest(g.neighbors(c) & ~cyc);
        while (true) {
            path.push_back(at);
            const VertexMask rest = g.neighbors(at) & ~bit(from);
            if (!rest) break;
            if (popcount(rest) != 1 || (rest & cyc)) return std::nullopt;
            from = at;
            at = lowest(rest);
        }
        d.pendants.push_back(path);
    }
    return d;
}

std::string to_string(ClassTag tag) {
    switch (tag) {
        case ClassTag::Path_FM1: return "Path_FM1";
        case ClassTag::TwoParallel_FM2: return "TwoParallel_FM2";
        case ClassTag::Figure8_F3M2: return "Figure8_F3M2";
        case ClassTag::ThreeParallel_FM3: return "ThreeParallel_FM3";
        case ClassTag::Beyond: return "Beyond";
    }
    return "Beyond";
}

Classification classify(const Graph& g) {
    Classification c;
    c.f = forcing_number(g).k;
    if (g.max_degree() > 3 || c.f >= 4) return c;
    switch (c.f) {
        case 1: c.tag = ClassTag::Path_FM1; c.m = 1; break;
        case 2: c.tag = ClassTag::TwoParallel_FM2; c.m = 2; break;
        case 3:
            if (is_figure8(g)) c.tag = ClassTag::Figure8_F3M2, c.m = 2;
            else c.tag = ClassTag::ThreeParallel_FM3, c.m = 3;
            break;
        default: break;  // n = 0
    }
    return c;
}

}  // namespace zf
