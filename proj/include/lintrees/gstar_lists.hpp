#pragma once

#include <string>
#include <vector>

#include "lintrees/common.hpp"
#include "lintrees/tree_model.hpp"

namespace lintrees {

struct UpwardEntry {
    int multiplicity = 0;
    bool upward = false;

    bool operator==(const UpwardEntry&) const = default;
    // Ordering used for lexicographic list enumeration.
    auto operator<=>(const UpwardEntry&) const = default;
};

// Ordered multiplicity list with hats on the entries whose multiplicity
// increases when the central vertex is removed. Upward entries may be 0;
// stored non-upward entries are eigenvalues the star actually has.
struct UpwardList {
    std::vector<UpwardEntry> entries;

    int total() const;          // sum of multiplicities
    int upward_count() const;   // number of hatted entries

    bool operator==(const UpwardList&) const = default;
    auto operator<=>(const UpwardList&) const = default;
};

// Text grammar: whitespace-separated tokens, plain digits for non-upward
// entries, '^' + digits for upward ones, e.g. "1 ^2 1 ^0 1".
UpwardList parse_upward_list(const std::string& text);
std::string format_upward_list(const UpwardList& list);

// Membership test for the hatted lists achievable by a generalized star:
//   1. multiplicities sum to the vertex count; every non-upward entry is
//      exactly 1 (a repeated eigenvalue of a star is always upward);
//   2. upward entries are strictly interior and never adjacent to another
//      upward entry;
//   3. the sorted (upward multiplicity + 1) values are majorized by the dual
//      of the arm-length partition.
// Structurally malformed lists (negative entries, empty) throw.
ValidationResult validate_gstar(const UpwardList& list, const GeneralizedStarSpec& arms);

// Complete duplicate-free enumeration of the valid lists with at most
// max_distinct entries, lexicographic by (multiplicity, upward) pairs.
// Stars above the size cap (16 vertices) throw.
std::vector<UpwardList> enumerate_gstar(const GeneralizedStarSpec& arms,
                                        int max_distinct = -1);

// Largest multiplicity achievable by the star: #arms - 1, and 1 for the
// pathlike single-arm star.
int max_multiplicity_gstar(const GeneralizedStarSpec& arms);

}  // namespace lintrees
