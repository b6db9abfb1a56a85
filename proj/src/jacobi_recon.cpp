#include "lintrees/jacobi_recon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lintrees {

Eigen::MatrixXd JacobiMatrix::dense() const {
    int n = size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = offdiag[i];
    return m;
}

void SpectralPair::validate() const {
    if (omega.empty()) throw std::invalid_argument("omega must be nonempty");
    if (mu.size() + 1 != omega.size())
        throw std::invalid_argument("mu must have one fewer entry than omega");
    for (size_t i = 0; i < mu.size(); ++i) {
        if (!(omega[i] < mu[i]))
            throw std::invalid_argument("interlacing violated at omega/mu index " +
                                        std::to_string(i));
        if (!(mu[i] < omega[i + 1]))
            throw std::invalid_argument("interlacing violated at mu/omega index " +
                                        std::to_string(i));
    }
}

JacobiMatrix jacobi_from_measure(const std::vector<double>& support,
                                 const std::vector<double>& weights) {
    const int n = static_cast<int>(support.size());
    if (n == 0 || weights.size() != support.size())
        throw std::invalid_argument("measure needs matching nonempty support and weights");
    double total = 0;
    for (double w : weights) {
        if (!(w > 0)) throw std::invalid_argument("measure weights must be positive");
        total += w;
    }

    // Stieltjes three-term recurrence in the eigenbasis of diag(support),
    // with full reorthogonalization; exact at these sizes.
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(support.data(), n);
    Eigen::MatrixXd q(n, n);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = std::sqrt(weights[i] / total);
    q.col(0) = v;

    JacobiMatrix jm;
    jm.diag.resize(n);
    jm.offdiag.resize(n - 1);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd w = x.cwiseProduct(q.col(k));
        jm.diag[k] = q.col(k).dot(w);
        if (k + 1 == n) break;
        w -= jm.diag[k] * q.col(k);
        if (k > 0) w -= jm.offdiag[k - 1] * q.col(k - 1);
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j <= k; ++j) w -= q.col(j).dot(w) * q.col(j);
        double beta = w.norm();
        if (!(beta > 0))
            throw internal_error("Lanczos breakdown: support values not distinct enough");
        jm.offdiag[k] = beta;
        q.col(k + 1) = w / beta;
    }
    return jm;
}

JacobiMatrix reconstruct(const SpectralPair& sp, DeletedEnd deleted) {
    sp.validate();
    const int n = static_cast<int>(sp.omega.size());
    if (n == 1) return {{sp.omega[0]}, {}};

    // Spectral weights of the boundary coordinate, in log magnitude to keep
    // large n stable: w_i = prod_j (omega_i - mu_j) / prod_{j != i} (omega_i - omega_j).
    std::vector<double> logw(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0;
        int sign = 1;
        for (int j = 0; j < n - 1; ++j) {
            double d = sp.omega[i] - sp.mu[j];
            acc += std::log(std::abs(d));
            if (d < 0) sign = -sign;
        }
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double d = sp.omega[i] - sp.omega[j];
            acc -= std::log(std::abs(d));
            if (d < 0) sign = -sign;
        }
        if (sign < 0)
            throw internal_error("negative reconstruction weight; interlacing input error");
        logw[i] = acc;
    }
    double peak = *std::max_element(logw.begin(), logw.end());
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = std::exp(logw[i] - peak);

    JacobiMatrix jm = jacobi_from_measure(sp.omega, w);
    if (deleted == DeletedEnd::Last) {
        std::reverse(jm.diag.begin(), jm.diag.end());
        std::reverse(jm.offdiag.begin(), jm.offdiag.end());
    }
    return jm;
}

bool check_interlacing(const std::vector<double>& evals_a, const std::vector<double>& evals_b,
                       double tol) {
    if (evals_b.size() + 1 != evals_a.size())
        throw std::invalid_argument("interlacing check needs sizes n and n-1");
    for (size_t i = 0; i < evals_b.size(); ++i) {
        if (evals_a[i] > evals_b[i] + tol) return false;
        if (evals_b[i] > evals_a[i + 1] + tol) return false;
    }
    return true;
}

namespace {

// Truncated Taylor expansion in (t - t0).
struct Jet {
    std::vector<double> c;

    static Jet constant(double v, int order) {
        Jet j;
        j.c.assign(order + 1, 0.0);
        j.c[0] = v;
        return j;
    }
    static Jet linear(double v0, int order) {  // (t - a) at t0: [t0 - a, 1, 0, ...]
        Jet j = constant(v0, order);
        if (order >= 1) j.c[1] = 1.0;
        return j;
    }
    Jet operator*(const Jet& o) const {
        Jet r;
        r.c.assign(c.size(), 0.0);
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; i + j < c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        return r;
    }
    Jet& operator-=(const Jet& o) {
        for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    Jet scaled(double s) const {
        Jet r = *this;
        for (double& v : r.c) v *= s;
        return r;
    }
};

template <class S>
struct CharPolyOps;

template <>
struct CharPolyOps<double> {
    double t;
    double one() const { return 1.0; }
    double shifted(double a_vv) const { return t - a_vv; }
    double mul(double a, double b) const { return a * b; }
    void sub_scaled(double& target, double coeff, double value) const { target -= coeff * value; }
};

template <>
struct CharPolyOps<Jet> {
    double t0;
    int order;
    Jet one() const { return Jet::constant(1.0, order); }
    Jet shifted(double a_vv) const { return Jet::linear(t0 - a_vv, order); }
    Jet mul(const Jet& a, const Jet& b) const { return a * b; }
    void sub_scaled(Jet& target, double coeff, const Jet& value) const {
        target -= value.scaled(coeff);
    }
};

// Returns (P, Q) for the subtree rooted at v away from parent: P is its
// characteristic polynomial, Q the product over its children's subtrees
// (i.e. the subtree with v itself removed).
template <class S, class Ops>
std::pair<S, S> subtree_poly(const Eigen::MatrixXd& a, const std::vector<std::vector<int>>& adj,
                             const std::vector<char>& removed, int v, int parent, const Ops& ops) {
    std::vector<int> children;
    std::vector<S> child_p, child_q;
    for (int u : adj[v]) {
        if (u == parent || removed[u]) continue;
        auto [p_child, q_child] = subtree_poly<S>(a, adj, removed, u, v, ops);
        children.push_back(u);
        child_p.push_back(std::move(p_child));
        child_q.push_back(std::move(q_child));
    }
    const int k = static_cast<int>(children.size());
    std::vector<S> pre(k + 1, ops.one()), suf(k + 1, ops.one());
    for (int i = 0; i < k; ++i) pre[i + 1] = ops.mul(pre[i], child_p[i]);
    for (int i = k - 1; i >= 0; --i) suf[i] = ops.mul(child_p[i], suf[i + 1]);

    S q = pre[k];
    S p = ops.mul(ops.shifted(a(v, v)), q);
    for (int i = 0; i < k; ++i) {
        S term = ops.mul(ops.mul(pre[i], suf[i + 1]), child_q[i]);
        double w = a(v, children[i]);
        ops.sub_scaled(p, w * w, term);
    }
    return {p, q};
}

void check_pattern(const Eigen::MatrixXd& a, const TreeGraph& tree) {
    if (a.rows() != tree.n || a.cols() != tree.n)
        throw std::invalid_argument("matrix size does not match tree");
    std::vector<std::vector<char>> is_edge(tree.n, std::vector<char>(tree.n, 0));
    for (auto [x, y] : tree.edges) is_edge[x][y] = is_edge[y][x] = 1;
    for (int i = 0; i < tree.n; ++i)
        for (int j = i + 1; j < tree.n; ++j) {
            if (std::abs(a(i, j) - a(j, i)) > 1e-12 * (1 + std::abs(a(i, j))))
                throw std::invalid_argument("matrix is not symmetric");
            if (!is_edge[i][j] && a(i, j) != 0.0)
                throw std::invalid_argument("nonzero entry off the tree pattern at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
}

}  // namespace

double char_poly_neighbors(const Eigen::MatrixXd& a, const TreeGraph& tree, int v, double t) {
    check_pattern(a, tree);
    if (v < 0 || v >= tree.n) throw std::invalid_argument("vertex out of range");
    auto adj = tree.adjacency();
    CharPolyOps<double> ops{t};
    std::vector<char> removed(tree.n, 0);
    return subtree_poly<double>(a, adj, removed, v, -1, ops).first;
}

std::vector<double> char_poly_jet(const Eigen::MatrixXd& a, const TreeGraph& tree, double t0,
                                  int order, const std::vector<char>& removed) {
    auto adj = tree.adjacency();
    CharPolyOps<Jet> ops{t0, order};
    std::vector<char> mask = removed;
    mask.resize(tree.n, 0);
    Jet acc = ops.one();
    std::vector<char> seen(tree.n, 0);
    for (int v = 0; v < tree.n; ++v) {
        if (mask[v] || seen[v]) continue;
        // mark component
        std::vector<int> stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int u : adj[x])
                if (!mask[u] && !seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
        acc = acc * subtree_poly<Jet>(a, adj, mask, v, -1, ops).first;
    }
    return acc.c;
}

}  // namespace lintrees
