#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lintrees/common.hpp"
#include "lintrees/tree_model.hpp"

namespace lintrees {

// Symmetric tridiagonal with strictly positive off-diagonal entries.
struct JacobiMatrix {
    std::vector<double> diag;
    std::vector<double> offdiag;

    int size() const { return static_cast<int>(diag.size()); }
    Eigen::MatrixXd dense() const;
};

// omega strictly increasing (size n), mu strictly increasing (size n-1),
// strictly interlacing: omega_1 < mu_1 < omega_2 < ... < mu_{n-1} < omega_n.
struct SpectralPair {
    std::vector<double> omega;
    std::vector<double> mu;

    void validate() const;  // throws naming the violating index
};

enum class DeletedEnd { Last, First };

// The unique Jacobi matrix with spectrum omega whose principal submatrix
// (deleting the row/column at `deleted`) has spectrum mu.
JacobiMatrix reconstruct(const SpectralPair& sp, DeletedEnd deleted = DeletedEnd::Last);

// Jacobi matrix of the discrete measure sum_i w_i delta_{x_i}: tridiagonal
// whose spectral weights at the FIRST coordinate are w (w > 0, sum 1,
// x distinct). Support need not be sorted.
JacobiMatrix jacobi_from_measure(const std::vector<double>& support,
                                 const std::vector<double>& weights);

// Weak interlacing a_1 <= b_1 <= a_2 <= ... <= b_{n-1} <= a_n with slack.
bool check_interlacing(const std::vector<double>& evals_a, const std::vector<double>& evals_b,
                       double tol = 1e-9);

// det(tI - A) for a matrix with tree pattern, evaluated by the recursive
// expansion around v. Throws if A is not symmetric with the tree's pattern.
double char_poly_neighbors(const Eigen::MatrixXd& a, const TreeGraph& tree, int v, double t);

// Taylor coefficients [p(t0), p'(t0), p''(t0)/2!, ...] of det(tI - A) at t0,
// up to `order` (inclusive), over the forest left after deleting the masked
// vertices. Same recursion, run in truncated-jet arithmetic.
std::vector<double> char_poly_jet(const Eigen::MatrixXd& a, const TreeGraph& tree, double t0,
                                  int order, const std::vector<char>& removed = {});

}  // namespace lintrees
