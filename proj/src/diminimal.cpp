#include <algorithm>
#include <map>
#include <numeric>

#include "lintrees/lsp_engine.hpp"
#include "lintrees/partitions.hpp"

// Diminimality construction: reduce every star to its two longest arms,
// superpose per-component optimal lists (the star list 1 ^1 1 ... 1 ^1 1 ^0 1
// ... ^0 1 and the alternating path block), align them so that exactly
// diameter(T) column sums are positive, then grow the upward entries back to
// account for the deleted arms.

namespace lintrees {

namespace {

UpwardList optimal_star_list(int l1, int l2) {
    UpwardList list;
    list.entries.push_back({1, false});
    for (int j = 1; j <= l1; ++j) {
        list.entries.push_back({j <= l2 ? 1 : 0, true});
        list.entries.push_back({1, false});
    }
    return list;
}

UpwardList mirrored(const UpwardList& list) {
    UpwardList out = list;
    std::reverse(out.entries.begin(), out.entries.end());
    return out;
}

LinearTreeSpec reduce_to_two_arms(const LinearTreeSpec& spec) {
    LinearTreeSpec out = spec;
    for (auto& star : out.stars)
        if (star.arms.size() > 2) star.arms.resize(2);
    return out;
}

LinearTreeSpec reversed_spec(const LinearTreeSpec& spec) {
    LinearTreeSpec out;
    out.stars.assign(spec.stars.rbegin(), spec.stars.rend());
    out.paths.assign(spec.paths.rbegin(), spec.paths.rend());
    return out;
}

LspTable mirror_table(const LspTable& t) {
    LspTable out;
    out.tree = reversed_spec(t.tree);
    out.columns = t.columns;
    out.rows.assign(t.rows.size(), {});
    for (size_t r = 0; r < t.rows.size(); ++r) {
        out.rows[t.rows.size() - 1 - r] = t.rows[r];
        std::reverse(out.rows[t.rows.size() - 1 - r].begin(),
                     out.rows[t.rows.size() - 1 - r].end());
    }
    return out;
}

struct RowPlacement {
    UpwardList list;        // star rows
    std::vector<int> ones;  // path rows: 0-based columns of the ones
    int offset = 0;
    bool mirrored_star = false;
};

// Builds a table for `spec` from per-row placements (index = table row).
LspTable build_from_placements(const LinearTreeSpec& spec,
                               const std::vector<RowPlacement>& place) {
    const int k = static_cast<int>(spec.stars.size());
    int columns = 1;
    for (int i = 0; i < k; ++i)
        columns = std::max(columns,
                           place[2 * i].offset + static_cast<int>(place[2 * i].list.entries.size()));
    for (int j = 0; j + 1 < k; ++j)
        for (int c : place[2 * j + 1].ones) columns = std::max(columns, c + 1);

    LspTable t;
    t.tree = spec;
    t.columns = columns;
    t.rows.assign(2 * k - 1, std::vector<TableCell>(columns, TableCell{}));
    for (int i = 0; i < k; ++i) {
        const auto& p = place[2 * i];
        for (size_t e = 0; e < p.list.entries.size(); ++e)
            t.rows[2 * i][p.offset + e] = {p.list.entries[e].multiplicity,
                                           p.list.entries[e].upward, true};
    }
    for (int j = 0; j + 1 < k; ++j)
        for (int c : place[2 * j + 1].ones) t.rows[2 * j + 1][c] = {1, false, true};
    return t;
}

int nonzero_count(const LspTable& t) {
    return static_cast<int>(t.nonzero_sums().size());
}

// Rows that place any cells, in table order: stars always, paths when s >= 1.
std::vector<int> effective_rows(const LinearTreeSpec& spec) {
    std::vector<int> rows;
    const int k = static_cast<int>(spec.stars.size());
    for (int r = 0; r < 2 * k - 1; ++r) {
        if (r % 2 == 0)
            rows.push_back(r);
        else if (spec.paths[r / 2] >= 1)
            rows.push_back(r);
    }
    return rows;
}

void place_star(std::vector<RowPlacement>& place, const LinearTreeSpec& spec, int row, int offset,
                bool mirror) {
    int l1 = spec.stars[row / 2].arms[0];
    int l2 = spec.stars[row / 2].arms.size() > 1 ? spec.stars[row / 2].arms[1] : 0;
    UpwardList list = optimal_star_list(l1, l2);
    if (mirror) list = mirrored(list);
    place[row] = {std::move(list), {}, offset, mirror};
}

void place_path_block(std::vector<RowPlacement>& place, const LinearTreeSpec& spec, int row,
                      int offset) {
    std::vector<int> ones;
    for (int i = 0; i < spec.paths[row / 2]; ++i) ones.push_back(offset + 2 * i);
    place[row] = {{}, std::move(ones), offset, false};
}

// Staggered wing: rows walk away from `anchor_row` (exclusive), each starting
// one column later than the previous effective row.
void place_wing(std::vector<RowPlacement>& place, const LinearTreeSpec& spec,
                const std::vector<int>& eff, int anchor_pos, int anchor_offset, int step) {
    int off = anchor_offset;
    for (int p = anchor_pos + step; p >= 0 && p < static_cast<int>(eff.size()); p += step) {
        ++off;
        int row = eff[p];
        if (row % 2 == 0)
            place_star(place, spec, row, off, false);
        else
            place_path_block(place, spec, row, off);
    }
}

std::optional<LspTable> case1_canonical(const LinearTreeSpec& spec, int d) {
    const int k = static_cast<int>(spec.stars.size());
    int blue = -1;
    for (int i = 0; i < k; ++i) {
        int l1 = spec.stars[i].arms[0];
        int l2 = spec.stars[i].arms.size() > 1 ? spec.stars[i].arms[1] : 0;
        if (l1 + l2 + 1 == d) {
            blue = i;
            break;
        }
    }
    if (blue < 0) return std::nullopt;

    std::vector<RowPlacement> place(2 * k - 1);
    auto eff = effective_rows(spec);
    int blue_pos = static_cast<int>(std::find(eff.begin(), eff.end(), 2 * blue) - eff.begin());
    place_star(place, spec, 2 * blue, 0, false);
    place_wing(place, spec, eff, blue_pos, 0, -1);
    place_wing(place, spec, eff, blue_pos, 0, +1);
    LspTable t = build_from_placements(spec, place);
    if (validate_table(t) && nonzero_count(t) == d) return t;
    return std::nullopt;
}

std::optional<LspTable> case2_canonical(const LinearTreeSpec& spec, int d) {
    const int k = static_cast<int>(spec.stars.size());
    // Adjacent diameter pair with the longer first arm on the left; mirror
    // the chain otherwise and flip back at the end.
    for (int a = 0; a + 1 < k; ++a) {
        int b = a + 1;
        int g = spec.paths[a];
        int l1a = spec.stars[a].arms[0];
        int l1b = spec.stars[b].arms[0];
        if (l1a + l1b + 2 + g != d) continue;
        if (l1a < l1b) {
            auto flipped = case2_canonical(reversed_spec(spec), d);
            if (flipped) {
                LspTable t = mirror_table(*flipped);
                if (validate_table(t) && nonzero_count(t) == d) return t;
            }
            return std::nullopt;
        }
        std::vector<RowPlacement> place(2 * k - 1);
        auto eff = effective_rows(spec);
        place_star(place, spec, 2 * a, g, false);
        place_star(place, spec, 2 * b, g + 1, false);
        if (g >= 1) {
            std::vector<int> ones(g);
            std::iota(ones.begin(), ones.end(), 0);
            place[2 * a + 1] = {{}, std::move(ones), 0, false};
        }
        int a_pos = static_cast<int>(std::find(eff.begin(), eff.end(), 2 * a) - eff.begin());
        int b_pos = static_cast<int>(std::find(eff.begin(), eff.end(), 2 * b) - eff.begin());
        place_wing(place, spec, eff, a_pos, g, -1);
        place_wing(place, spec, eff, b_pos, g + 1, +1);
        LspTable t = build_from_placements(spec, place);
        if (validate_table(t) && nonzero_count(t) == d) return t;
    }
    return std::nullopt;
}

// Exact search for a valid table with exactly d positive columns, star rows
// drawn from the given per-star candidate lists. Same column mechanics as
// the decision engine, with the list-position state tracked per candidate.
struct DiminimalSearch {
    const LinearTreeSpec& spec;
    const std::vector<std::vector<UpwardList>>& candidates;
    int d;
    int k;

    std::vector<const UpwardList*> chosen;
    std::vector<int> pos, used;
    std::map<std::vector<int>, bool> memo;
    std::vector<std::vector<TableCell>> columns_acc;  // per column, cells by row

    std::vector<int> key(int nonzero_left, bool started) {
        std::vector<int> out = pos;
        out.insert(out.end(), used.begin(), used.end());
        out.push_back(nonzero_left);
        out.push_back(started ? 1 : 0);
        return out;
    }

    bool complete() const {
        for (int i = 0; i < k; ++i)
            if (pos[i] < static_cast<int>(chosen[i]->entries.size())) return false;
        for (int j = 0; j + 1 < k; ++j)
            if (used[j] < spec.paths[j]) return false;
        return true;
    }

    int remaining_sum() const {
        int r = 0;
        for (int i = 0; i < k; ++i)
            for (size_t p = pos[i]; p < chosen[i]->entries.size(); ++p)
                r += chosen[i]->entries[p].multiplicity;
        for (int j = 0; j + 1 < k; ++j) r += spec.paths[j] - used[j];
        return r;
    }

    // One column: rows in order, star emit/skip, path one/zero. `record`
    // collects cells when building the final table.
    template <class Fn>
    void each_column(int target, Fn&& accept, std::vector<TableCell>* record) {
        std::vector<TableCell> cells(2 * k - 1, TableCell{});
        auto rec = [&](auto&& self, int row, int sum, bool pending, bool emitted) -> void {
            if (row == 2 * k - 1) {
                if (target >= 0 ? sum == target : emitted) {
                    if (record) *record = cells;
                    accept();
                }
                return;
            }
            if (row % 2 == 0) {
                int i = row / 2;
                if (pos[i] < static_cast<int>(chosen[i]->entries.size())) {
                    UpwardEntry e = chosen[i]->entries[pos[i]];
                    bool allowed = target >= 0 ? sum + e.multiplicity <= target
                                               : (e.upward && e.multiplicity == 0);
                    if (allowed && !e.upward && pending) allowed = false;
                    if (allowed) {
                        cells[row] = {e.multiplicity, e.upward, true};
                        ++pos[i];
                        self(self, row + 1, sum + e.multiplicity, !e.upward, true);
                        --pos[i];
                        cells[row] = {};
                    }
                }
                self(self, row + 1, sum, pending, emitted);
            } else {
                int j = row / 2;
                if (target >= 1 && used[j] < spec.paths[j] && sum + 1 <= target && !pending) {
                    cells[row] = {1, false, true};
                    ++used[j];
                    self(self, row + 1, sum + 1, true, true);
                    --used[j];
                    cells[row] = {};
                }
                self(self, row + 1, sum, pending, emitted);
            }
        };
        rec(rec, 0, 0, false, false);
    }

    bool solve(int nonzero_left, bool started) {
        if (nonzero_left == 0) return complete();
        auto k_ = key(nonzero_left, started);
        auto it = memo.find(k_);
        if (it != memo.end()) return it->second;
        bool ok = false;
        int cap = remaining_sum() - (nonzero_left - 1);  // leave >=1 per later column
        for (int target = 1; target <= cap && !ok; ++target) {
            each_column(
                target,
                [&] {
                    if (!ok && solve(nonzero_left - 1, true)) ok = true;
                },
                nullptr);
        }
        if (!ok && started) {
            each_column(
                -1, [&] { if (!ok && solve(nonzero_left, true)) ok = true; }, nullptr);
        }
        memo[k_] = ok;
        return ok;
    }

    bool rebuild(int nonzero_left, bool started) {
        if (nonzero_left == 0) return complete();
        bool done = false;
        int cap = remaining_sum() - (nonzero_left - 1);
        std::vector<TableCell> cells;
        for (int target = 1; target <= cap && !done; ++target) {
            each_column(
                target,
                [&] {
                    if (done) return;
                    if (solve(nonzero_left - 1, true)) {
                        columns_acc.push_back(cells);
                        if (rebuild(nonzero_left - 1, true))
                            done = true;
                        else
                            columns_acc.pop_back();
                    }
                },
                &cells);
        }
        if (!done && started) {
            each_column(
                -1,
                [&] {
                    if (done) return;
                    if (solve(nonzero_left, true)) {
                        columns_acc.push_back(cells);
                        if (rebuild(nonzero_left, true))
                            done = true;
                        else
                            columns_acc.pop_back();
                    }
                },
                &cells);
        }
        return done;
    }

    std::optional<LspTable> run() {
        chosen.assign(k, nullptr);
        pos.assign(k, 0);
        used.assign(k - 1, 0);
        std::optional<LspTable> found;
        auto tuples = [&](auto&& self, int i) -> bool {
            if (i == k) {
                memo.clear();
                columns_acc.clear();
                if (!solve(d, false)) return false;
                if (!rebuild(d, false)) throw internal_error("diminimal rebuild diverged");
                LspTable t;
                t.tree = spec;
                t.columns = static_cast<int>(columns_acc.size());
                t.rows.assign(2 * k - 1, std::vector<TableCell>(t.columns, TableCell{}));
                for (int c = 0; c < t.columns; ++c)
                    for (int r = 0; r < 2 * k - 1; ++r) t.rows[r][c] = columns_acc[c][r];
                found = std::move(t);
                return true;
            }
            for (const auto& list : candidates[i]) {
                chosen[i] = &list;
                if (self(self, i + 1)) return true;
            }
            return false;
        };
        tuples(tuples, 0);
        return found;
    }
};

// Grown arm values: hat slot j (head order) should carry one less than part j
// of the dual of the full arm partition, so the slots keep their zero or
// nonzero status and condition 3 stays tight.
void grow_star_row(LspTable& t, int star, const GeneralizedStarSpec& full) {
    auto& row = t.rows[t.star_row(star)];
    std::vector<int> hat_cols;
    for (int c = 0; c < t.columns; ++c)
        if (row[c].from_list && row[c].upward) hat_cols.push_back(c);
    if (hat_cols.empty()) return;

    std::vector<int> dual_parts = dual(Partition(full.arms)).parts();
    if (dual_parts.size() != hat_cols.size())
        throw internal_error("optimal row hat count does not match the longest arm");

    // Head side: the end whose first hat has value 1 (the l2 block); for a
    // single-arm star every hat is 0 and the orientation does not matter.
    bool head_left = row[hat_cols.front()].value >= row[hat_cols.back()].value;
    if (!head_left) std::reverse(hat_cols.begin(), hat_cols.end());
    for (size_t j = 0; j < hat_cols.size(); ++j) {
        int grown = dual_parts[j] - 1;
        if ((row[hat_cols[j]].value == 0) != (grown == 0))
            throw internal_error("arm growth would change a column's zero status");
        row[hat_cols[j]].value = grown;
    }
}

}  // namespace

LspTable diminimal_list(const LinearTreeSpec& tree) {
    tree.validate();
    LinearityResult lin = is_linear(expand(tree));
    if (!lin.linear || !lin.spec) throw internal_error("expanded spec is not linear");
    const LinearTreeSpec canon = *lin.spec;
    const LinearTreeSpec reduced = reduce_to_two_arms(canon);
    const int d = diameter(canon);
    if (diameter(reduced) != d) throw internal_error("arm reduction changed the diameter");

    std::optional<LspTable> table;
    bool needs_growing = true;
    table = case1_canonical(reduced, d);
    if (!table) table = case2_canonical(reduced, d);

    if (!table) {
        // Exact fallback: optimal rows in both orientations, searched.
        std::vector<std::vector<UpwardList>> candidates;
        for (const auto& star : reduced.stars) {
            int l1 = star.arms[0];
            int l2 = star.arms.size() > 1 ? star.arms[1] : 0;
            std::vector<UpwardList> lists{optimal_star_list(l1, l2)};
            UpwardList m = mirrored(lists[0]);
            if (m != lists[0]) lists.push_back(std::move(m));
            candidates.push_back(std::move(lists));
        }
        DiminimalSearch search{reduced, candidates, d, static_cast<int>(reduced.stars.size())};
        table = search.run();
    }
    if (!table) {
        // Last resort: any valid table with d positive columns, built over
        // the unreduced tree so no growing step is needed.
        auto catalog = star_list_catalog(canon);
        DiminimalSearch search{canon, catalog, d, static_cast<int>(canon.stars.size())};
        table = search.run();
        needs_growing = false;
    }
    if (!table) throw internal_error("no diminimal table found; this contradicts the theory");

    if (needs_growing)
        for (size_t i = 0; i < canon.stars.size(); ++i)
            grow_star_row(*table, static_cast<int>(i), canon.stars[i]);
    table->tree = canon;
    ValidationResult check = validate_table(*table);
    if (!check) throw internal_error("diminimal table failed validation: " + check.reason);
    if (nonzero_count(*table) != d)
        throw internal_error("diminimal table does not have diameter many positive columns");
    return *table;
}

}  // namespace lintrees
