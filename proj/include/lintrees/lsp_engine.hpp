#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lintrees/common.hpp"
#include "lintrees/gstar_lists.hpp"
#include "lintrees/tree_model.hpp"

namespace lintrees {

struct TableCell {
    int value = 0;
    bool upward = false;
    bool from_list = false;  // false: inserted non-upward 0, printed "."

    bool operator==(const TableCell&) const = default;
};

// Tabular superposition: one augmented row per star (b_i+) and per path
// (c_j+), interleaved b_1, c_1, b_2, ..., b_k. Star rows are hatted lists
// with non-upward zeros inserted; path rows hold s_j non-upward ones.
struct LspTable {
    LinearTreeSpec tree;
    int columns = 0;
    std::vector<std::vector<TableCell>> rows;

    int star_row(int i) const { return 2 * i; }
    int path_row(int j) const { return 2 * j + 1; }
    int row_count() const { return static_cast<int>(rows.size()); }

    std::vector<int> sums() const;
    std::vector<int> nonzero_sums() const;  // the exported ordered list
    UpwardList star_list(int i) const;      // row i with inserted zeros dropped

    bool operator==(const LspTable&) const = default;
};

// One row per line in table row order, cells space separated: plain digits
// for non-upward entries, ^digits for upward ones, "." for inserted zeros.
// Final line "= a1 a2 ..." carries the column sums.
std::string format_table(const LspTable& t);
LspTable parse_table(const std::string& text, const LinearTreeSpec& tree);

// Checks the completed table: star rows valid for their stars, path rows
// with exactly s_j ones, no all-non-upward-zero column, at least one upward
// entry between any two non-upward ones read down each column, and positive
// sums in the first and last columns.
ValidationResult validate_table(const LspTable& t);

using OrderedMultList = std::vector<int>;

struct DecideResult {
    bool achievable = false;
    std::optional<LspTable> certificate;
};

// Exact search for a valid table with the given nonzero column sums
// (zero-sum columns may appear between them). Memoized column DP.
DecideResult decide_ordered(const LinearTreeSpec& tree, const OrderedMultList& list);

// Independent search used to cross-check decide_ordered: memoless DFS whose
// complete tables are re-checked through validate_table.
DecideResult decide_ordered_brute(const LinearTreeSpec& tree, const OrderedMultList& list);

// Some ordering of the multiset achieves the list; extreme eigenvalues are
// simple, so only orderings with first == last == 1 are tried.
DecideResult decide_unordered(const LinearTreeSpec& tree, std::vector<int> multiset);

// Exact ordered catalog L0(T), duplicate free, lexicographic.
std::vector<OrderedMultList> enumerate_ordered(const LinearTreeSpec& tree, int cap = 12);
std::vector<OrderedMultList> enumerate_ordered_brute(const LinearTreeSpec& tree, int cap = 12);

// Valid hatted lists per star, memoized by arm shape.
std::vector<std::vector<UpwardList>> star_list_catalog(const LinearTreeSpec& tree);

struct DegreeListResult {
    std::vector<int> multiplicities;  // descending
    DecideResult certificate;
};
// (d_1 - 1, ..., d_k - 1, 1, ..., 1) over the HDV degrees, padded to total n.
// Achievability is asserted; failure throws internal_error.
DegreeListResult degree_list(const LinearTreeSpec& tree);

// Given an achievable unordered list and m_j >= 2, the split list
// (m_1, ..., m_j - 1, ..., m_k, 1) is achievable; asserted and returned
// descending together with its certificate.
struct SubdivideResult {
    std::vector<int> multiplicities;
    DecideResult certificate;
};
SubdivideResult subdivide_list(const LinearTreeSpec& tree, const std::vector<int>& unordered,
                               int j);

struct AugmentationReport {
    bool appended_included = false;    // L0^1(T) subset of L0(T')
    bool grown_bounded = false;        // L0(T') subset of L0^+(T)
    std::vector<OrderedMultList> missing_appended;
    std::vector<OrderedMultList> excess_grown;
    bool ok() const { return appended_included && grown_bounded; }
};
// tree' must be linear and obtained from tree by one pendant addition or one
// edge subdivision (verified up to isomorphism).
AugmentationReport augmentation_check(const LinearTreeSpec& tree, const TreeGraph& augmented);

// l + sum_i M(T_i) over the canonical decomposition, where l counts the
// nonempty connecting paths; cross-checked against enumeration when the tree
// is small enough to enumerate.
int max_multiplicity(const LinearTreeSpec& tree);

struct OnesBound {
    int upper = 0;       // 2 + D_2(T)
    int enumerated = 0;  // min number of 1 entries over L0(T)
};
OnesBound ones_bound(const LinearTreeSpec& tree);

// A validated table with exactly diameter(T) nonzero column sums, built from
// per-component optimal lists on the two-longest-arm reduction and lifted
// back by growing the upward entries.
LspTable diminimal_list(const LinearTreeSpec& tree);

}  // namespace lintrees
