#include "lintrees/partitions.hpp"

#include <numeric>
#include <stdexcept>

namespace lintrees {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("partition must have at least one part");
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1)
            throw std::invalid_argument("partition part " + std::to_string(i) + " is not positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
    n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition dual(const Partition& p) {
    std::vector<int> out(p.parts().front());
    for (int j = 0; j < static_cast<int>(out.size()); ++j) {
        int count = 0;
        for (int part : p.parts())
            if (part >= j + 1) ++count;
        out[j] = count;
    }
    return Partition(out);
}

bool majorized_by(const std::vector<int>& a, const std::vector<int>& b) {
    auto check = [](const std::vector<int>& v, const char* name) {
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0)
                throw std::invalid_argument(std::string(name) + " has a negative entry");
            if (i > 0 && v[i] > v[i - 1])
                throw std::invalid_argument(std::string(name) + " is not weakly decreasing");
        }
    };
    check(a, "left list");
    check(b, "right list");

    size_t len = std::max(a.size(), b.size());
    long sa = 0, sb = 0;
    for (size_t i = 0; i < len; ++i) {
        sa += i < a.size() ? a[i] : 0;
        sb += i < b.size() ? b[i] : 0;
        if (sa > sb) return false;
    }
    return true;
}

namespace {

void gen(int remaining, int cap, std::vector<int>& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(remaining, cap); p >= 1; --p) {
        cur.push_back(p);
        gen(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
    if (n < 1) throw std::invalid_argument("partitions_of requires n >= 1");
    std::vector<Partition> out;
    std::vector<int> cur;
    gen(n, n, cur, out);
    return out;
}

}  // namespace lintrees
