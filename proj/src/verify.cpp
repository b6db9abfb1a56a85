#include "lintrees/verify.hpp"

#include <algorithm>
#include <cmath>

namespace lintrees {

namespace {

constexpr double kEdgeFloor = 1e-10;

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

Eigen::MatrixXd delete_vertex(const Eigen::MatrixXd& m, int v) {
    int n = static_cast<int>(m.rows());
    Eigen::MatrixXd out(n - 1, n - 1);
    for (int i = 0, ii = 0; i < n; ++i) {
        if (i == v) continue;
        for (int j = 0, jj = 0; j < n; ++j) {
            if (j == v) continue;
            out(ii, jj++) = m(i, j);
        }
        ++ii;
    }
    return out;
}

}  // namespace

MultiplicityReport cluster_eigenvalues(const std::vector<double>& eigenvalues, double tol) {
    MultiplicityReport report;
    report.tol = tol;
    if (eigenvalues.empty()) return report;
    std::vector<double> ev = eigenvalues;
    std::sort(ev.begin(), ev.end());
    double span = ev.back() - ev.front();
    double gap = tol * (span + 1.0);

    size_t start = 0;
    for (size_t i = 1; i <= ev.size(); ++i) {
        if (i == ev.size() || ev[i] - ev[i - 1] > gap) {
            MultiplicityCluster c;
            c.multiplicity = static_cast<int>(i - start);
            double sum = 0;
            for (size_t t = start; t < i; ++t) sum += ev[t];
            c.value = sum / c.multiplicity;
            for (size_t t = start; t < i; ++t) c.spread = std::max(c.spread, std::abs(ev[t] - c.value));
            report.clusters.push_back(c);
            start = i;
        }
    }
    report.well_separated = true;
    for (size_t i = 1; i < report.clusters.size(); ++i)
        if (report.clusters[i].value - report.clusters[i - 1].value <= 10 * gap)
            report.well_separated = false;
    return report;
}

VerifyResult verify_realization(const Eigen::MatrixXd& matrix, const TreeGraph& tree,
                                const SpectrumTarget& target, double tol) {
    VerifyResult out;
    if (matrix.rows() != tree.n || matrix.cols() != tree.n) {
        out.reason = "matrix size does not match the tree";
        return out;
    }
    for (int i = 0; i < tree.n; ++i)
        for (int j = i + 1; j < tree.n; ++j)
            if (std::abs(matrix(i, j) - matrix(j, i)) > 1e-12 * (1 + std::abs(matrix(i, j)))) {
                out.reason = "matrix is not symmetric";
                return out;
            }

    std::vector<std::vector<char>> is_edge(tree.n, std::vector<char>(tree.n, 0));
    for (auto [a, b] : tree.edges) is_edge[a][b] = is_edge[b][a] = 1;
    out.min_edge = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tree.n; ++i)
        for (int j = i + 1; j < tree.n; ++j) {
            if (is_edge[i][j]) {
                out.min_edge = std::min(out.min_edge, std::abs(matrix(i, j)));
                if (std::abs(matrix(i, j)) < kEdgeFloor) {
                    out.reason = "tree edge (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") fell below the magnitude floor";
                    return out;
                }
            } else if (matrix(i, j) != 0.0) {
                out.reason = "nonzero entry off the tree at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")";
                return out;
            }
        }

    std::vector<double> ev = sorted_eigenvalues(matrix);
    std::vector<double> want = target.full_spectrum();
    if (ev.size() != want.size()) {
        out.reason = "spectrum size mismatch";
        return out;
    }
    for (size_t i = 0; i < ev.size(); ++i)
        out.max_eig_error = std::max(out.max_eig_error, std::abs(ev[i] - want[i]));

    out.report = cluster_eigenvalues(ev, tol);
    std::vector<int> mults;
    for (const auto& c : out.report.clusters) mults.push_back(c.multiplicity);
    if (mults != target.multiplicities) {
        out.reason = "clustered multiplicities do not match the target";
        return out;
    }
    if (out.max_eig_error > tol * (std::abs(want.back() - want.front()) + 1.0)) {
        out.reason = "eigenvalue error " + std::to_string(out.max_eig_error) + " exceeds tolerance";
        return out;
    }
    out.pass = true;
    return out;
}

ParterWitness parter_witness(const Eigen::MatrixXd& matrix, const TreeGraph& tree, double lambda,
                             double tol) {
    tree.validate();
    std::vector<double> ev = sorted_eigenvalues(matrix);
    double span = ev.back() - ev.front();
    double close = tol * (span + 1.0);
    auto count_close = [&](const std::vector<double>& values) {
        int c = 0;
        for (double v : values)
            if (std::abs(v - lambda) <= close) ++c;
        return c;
    };

    int m_a = count_close(ev);
    if (m_a < 2)
        throw std::invalid_argument("parter_witness needs an eigenvalue of multiplicity >= 2");

    TreeStats st = stats(tree);
    auto adj = tree.adjacency();
    for (int u = 0; u < tree.n; ++u) {
        std::vector<double> ev_del = sorted_eigenvalues(delete_vertex(matrix, u));
        if (count_close(ev_del) != m_a + 1) continue;
        if (st.degrees[u] < 3) continue;

        // components of T - u that carry lambda
        std::vector<int> carried;
        std::vector<char> seen(tree.n, 0);
        seen[u] = 1;
        for (int root : adj[u]) {
            if (seen[root]) continue;
            std::vector<int> comp;
            std::vector<int> stack{root};
            seen[root] = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                comp.push_back(x);
                for (int y : adj[x])
                    if (!seen[y] && y != u) {
                        seen[y] = 1;
                        stack.push_back(y);
                    }
            }
            Eigen::MatrixXd sub(comp.size(), comp.size());
            for (size_t a = 0; a < comp.size(); ++a)
                for (size_t b = 0; b < comp.size(); ++b) sub(a, b) = matrix(comp[a], comp[b]);
            if (count_close(sorted_eigenvalues(sub)) >= 1) carried.push_back(root);
        }
        if (static_cast<int>(carried.size()) < 3) continue;

        ParterWitness w;
        w.vertex = u;
        w.mult_before = m_a;
        w.mult_after = m_a + 1;
        w.degree = st.degrees[u];
        w.components_with_lambda = carried;
        return w;
    }
    throw internal_error("no Parter witness found for a multiple eigenvalue");
}

InterlacingAudit interlacing_audit(const Eigen::MatrixXd& matrix, double tol) {
    InterlacingAudit audit;
    std::vector<double> ev = sorted_eigenvalues(matrix);
    for (int v = 0; v < matrix.rows(); ++v) {
        std::vector<double> sub = sorted_eigenvalues(delete_vertex(matrix, v));
        if (!check_interlacing(ev, sub, tol)) {
            audit.failed_vertex = v;
            return audit;
        }
    }
    audit.pass = true;
    return audit;
}

}  // namespace lintrees
