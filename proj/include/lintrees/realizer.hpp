#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "lintrees/common.hpp"
#include "lintrees/gstar_lists.hpp"
#include "lintrees/jacobi_recon.hpp"
#include "lintrees/lsp_engine.hpp"
#include "lintrees/tree_model.hpp"

namespace lintrees {

struct SpectrumTarget {
    std::vector<double> eigenvalues;  // one per nonzero table column, increasing
    OrderedMultList multiplicities;
    LspTable table;

    void validate() const;
    std::vector<double> full_spectrum() const;  // values repeated by multiplicity
};

struct RealizationResult {
    Eigen::MatrixXd matrix;
    double residual = 0.0;  // max |achieved - target| over the sorted spectra
    double min_edge = 0.0;  // smallest |entry| over tree edges
    int iterations = 0;     // Newton steps across the continuation

    // Diagnostics for the per-star Jacobian witnesses at the initial matrix.
    double min_jacobian_sv = std::numeric_limits<double>::infinity();
    double max_jacobian_fd_error = 0.0;
};

// Assignment of each upward eigenvalue to multiplicity+1 distinct arms.
// Greedy by multiplicity into the arms with most remaining room, with an
// exact backtracking fallback.
struct UpwardAssignment {
    std::vector<std::vector<int>> arms_for_slot;  // per upward slot, arm ids
};
UpwardAssignment assign_upwards(const UpwardList& row, const GeneralizedStarSpec& arms);

// A single generalized star realized for the given hatted row and numeric
// values (one per row entry, strictly increasing).
struct StarRealization {
    Eigen::MatrixXd matrix;              // local star numbering: center 0, arms root-to-tip
    double residual = 0.0;
    int iterations = 0;
    double jacobian_min_sv = 0.0;        // renormalized Jacobian at the initial matrix
    double jacobian_fd_error = 0.0;      // hybrid vs full finite differences
    // change-of-variables state used at tree level
    std::vector<std::vector<double>> arm_gamma;  // fixed arm spectra
    std::vector<std::vector<double>> arm_eta;    // arm submatrix spectra (first deleted)
    double a0 = 0.0;
    std::vector<double> center_edges;
    std::vector<double> cond_values;     // the non-upward eigenvalues
    std::vector<int> cond_arm;           // per condition: arm id or -1 for a0
};
StarRealization realize_gstar(const GeneralizedStarSpec& arms, const UpwardList& row,
                              const std::vector<double>& values, std::uint64_t seed = 0);

// Renormalized star-level Jacobian of the determinant conditions with respect
// to (a0, selected center edges, selected arm submatrix eigenvalues);
// analytic in a0 and the edges, finite differences through the spectral
// change of variables for the eta columns.
Eigen::MatrixXd build_jacobian(const StarRealization& star);
// Same matrix entirely from central finite differences (cross-check).
Eigen::MatrixXd build_jacobian_fd(const StarRealization& star);

// Full inverse eigenvalue solve: direct sum of star blocks and path
// diagonals, connecting edges switched on at epsilon, Newton correction of
// the implicit variables, epsilon halving on failure.
RealizationResult realize(const LinearTreeSpec& tree, const SpectrumTarget& target,
                          std::uint64_t seed = 0);

// Decide + realize convenience: eigenvalues default to 1..len(list).
RealizationResult realize_list(const LinearTreeSpec& tree, const OrderedMultList& list,
                               const std::vector<double>* eigenvalues = nullptr,
                               std::uint64_t seed = 0);

}  // namespace lintrees
