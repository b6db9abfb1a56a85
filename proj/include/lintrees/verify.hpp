#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lintrees/common.hpp"
#include "lintrees/realizer.hpp"
#include "lintrees/tree_model.hpp"

namespace lintrees {

struct MultiplicityCluster {
    double value = 0;      // representative (mean)
    int multiplicity = 0;
    double spread = 0;     // max intra-cluster gap to the representative
};

struct MultiplicityReport {
    std::vector<MultiplicityCluster> clusters;
    double tol = 0;
    bool well_separated = false;  // clusters more than 10x tol apart
};

// Single-linkage clustering of sorted eigenvalues with gap threshold
// tol * (span + 1).
MultiplicityReport cluster_eigenvalues(const std::vector<double>& eigenvalues, double tol);

struct VerifyResult {
    bool pass = false;
    std::string reason;
    MultiplicityReport report;
    double max_eig_error = 0;
    double min_edge = 0;
};

// Symmetry, exact sparsity pattern (tree edges at least 1e-10 in magnitude,
// non-edges exactly zero), eigenvalue clusters matching the target values
// and multiplicities within tol.
VerifyResult verify_realization(const Eigen::MatrixXd& matrix, const TreeGraph& tree,
                                const SpectrumTarget& target, double tol = 1e-6);

struct ParterWitness {
    int vertex = -1;
    int mult_before = 0;
    int mult_after = 0;
    int degree = 0;
    std::vector<int> components_with_lambda;  // component roots carrying lambda
};

// A vertex whose deletion raises the multiplicity of lambda by one; for
// multiplicity >= 2 it has degree >= 3 and at least three branches carry
// lambda. Throws internal_error when no witness exists.
ParterWitness parter_witness(const Eigen::MatrixXd& matrix, const TreeGraph& tree, double lambda,
                             double tol = 1e-6);

struct InterlacingAudit {
    bool pass = false;
    int failed_vertex = -1;
};

// Interlacing of eigenvalues of A and A(v) for every vertex v.
InterlacingAudit interlacing_audit(const Eigen::MatrixXd& matrix, double tol = 1e-9);

}  // namespace lintrees
