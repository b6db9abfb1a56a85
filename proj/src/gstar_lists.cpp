#include "lintrees/gstar_lists.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "lintrees/partitions.hpp"

namespace lintrees {

int UpwardList::total() const {
    int t = 0;
    for (const auto& e : entries) t += e.multiplicity;
    return t;
}

int UpwardList::upward_count() const {
    int u = 0;
    for (const auto& e : entries) u += e.upward ? 1 : 0;
    return u;
}

UpwardList parse_upward_list(const std::string& text) {
    UpwardList list;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        UpwardEntry e;
        std::string digits = tok;
        if (tok[0] == '^') {
            e.upward = true;
            digits = tok.substr(1);
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad list token '" + tok + "'");
        e.multiplicity = std::stoi(digits);
        list.entries.push_back(e);
    }
    if (list.entries.empty()) throw std::invalid_argument("empty multiplicity list");
    return list;
}

std::string format_upward_list(const UpwardList& list) {
    std::string out;
    for (const auto& e : list.entries) {
        if (!out.empty()) out += ' ';
        if (e.upward) out += '^';
        out += std::to_string(e.multiplicity);
    }
    return out;
}

namespace {

std::vector<int> upward_plus_one_sorted(const UpwardList& list) {
    std::vector<int> vals;
    for (const auto& e : list.entries)
        if (e.upward) vals.push_back(e.multiplicity + 1);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return vals;
}

}  // namespace

ValidationResult validate_gstar(const UpwardList& list, const GeneralizedStarSpec& arms) {
    arms.validate();
    if (list.entries.empty()) throw std::invalid_argument("empty multiplicity list");
    for (size_t i = 0; i < list.entries.size(); ++i)
        if (list.entries[i].multiplicity < 0)
            throw std::invalid_argument("negative multiplicity at position " + std::to_string(i));

    const int n = arms.vertex_count();
    const int r = static_cast<int>(list.entries.size());

    for (int i = 0; i < r; ++i) {
        const auto& e = list.entries[i];
        if (!e.upward && e.multiplicity == 0)
            return ValidationResult::fail("non-upward 0 stored at position " + std::to_string(i + 1));
        if (!e.upward && e.multiplicity > 1)
            return ValidationResult::fail(
                "non-upward multiplicity " + std::to_string(e.multiplicity) + " at position " +
                std::to_string(i + 1) + "; repeated eigenvalues of a generalized star are upward");
        if (e.upward) {
            if (i == 0 || i == r - 1)
                return ValidationResult::fail("upward entry at boundary position " +
                                              std::to_string(i + 1));
            if (list.entries[i - 1].upward)
                return ValidationResult::fail("adjacent upward entries at positions " +
                                              std::to_string(i) + "," + std::to_string(i + 1));
        }
    }
    if (list.total() != n)
        return ValidationResult::fail("multiplicities sum to " + std::to_string(list.total()) +
                                      ", expected " + std::to_string(n));

    std::vector<int> ups = upward_plus_one_sorted(list);
    if (!ups.empty() && !majorized_by(ups, dual(Partition(arms.arms)).parts()))
        return ValidationResult::fail("upward multiplicities violate the arm majorization bound");
    return ValidationResult::pass();
}

namespace {

struct Enumerator {
    const GeneralizedStarSpec& arms;
    int n;
    int max_distinct;
    std::vector<int> dual_parts;
    std::vector<UpwardList> out;
    UpwardList cur;
    std::vector<int> ups;  // upward multiplicities so far (unsorted)

    bool upward_budget_ok() {
        std::vector<int> sorted;
        sorted.reserve(ups.size());
        for (int q : ups) sorted.push_back(q + 1);
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        return majorized_by(sorted, dual_parts);
    }

    void step(int sum, bool last_upward) {
        if (static_cast<int>(cur.entries.size()) > max_distinct) return;
        if (sum == n && !cur.entries.empty() && !last_upward) out.push_back(cur);
        if (static_cast<int>(cur.entries.size()) == max_distinct) return;

        // Upward entry: needs a non-upward predecessor and room for a
        // non-upward follower. Adding values never un-violates majorization,
        // so prune on it eagerly.
        if (!cur.entries.empty() && !last_upward && sum < n) {
            int cap = static_cast<int>(arms.arms.size()) - 1;
            for (int q = 0; q <= std::min(cap, n - sum - 1); ++q) {
                cur.entries.push_back({q, true});
                ups.push_back(q);
                if (upward_budget_ok()) step(sum + q, true);
                ups.pop_back();
                cur.entries.pop_back();
            }
        }
        if (sum < n) {
            cur.entries.push_back({1, false});
            step(sum + 1, false);
            cur.entries.pop_back();
        }
    }
};

}  // namespace

std::vector<UpwardList> enumerate_gstar(const GeneralizedStarSpec& arms, int max_distinct) {
    arms.validate();
    const int n = arms.vertex_count();
    if (n > 16) throw std::invalid_argument("enumerate_gstar capped at 16 vertices");
    Enumerator e{arms, n, max_distinct < 0 ? 2 * n - 1 : max_distinct,
                 dual(Partition(arms.arms)).parts()};
    e.step(0, false);
    std::sort(e.out.begin(), e.out.end());
    return e.out;
}

int max_multiplicity_gstar(const GeneralizedStarSpec& arms) {
    arms.validate();
    return std::max<int>(1, static_cast<int>(arms.arms.size()) - 1);
}

}  // namespace lintrees
