#pragma once

#include <vector>

#include "lintrees/common.hpp"

namespace lintrees {

// Weakly decreasing positive integers. The combinatorial substrate for the
// arm-length conditions on generalized stars.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);  // throws on invalid input

    const std::vector<int>& parts() const { return parts_; }
    int n() const { return n_; }
    bool operator==(const Partition&) const = default;

  private:
    std::vector<int> parts_;
    int n_ = 0;
};

// Conjugate partition: part j of the dual counts parts of p that are >= j.
Partition dual(const Partition& p);

// Prefix-sum dominance a ⪯ b on weakly decreasing lists. Inputs are padded
// with zeros to a common length; only the prefix inequalities are required,
// totals need not match. Trailing zeros are accepted here (unlike Partition).
// Throws if an input is not weakly decreasing or has a negative entry.
bool majorized_by(const std::vector<int>& a, const std::vector<int>& b);

// All partitions of n in descending lexicographic order.
std::vector<Partition> partitions_of(int n);

}  // namespace lintrees
