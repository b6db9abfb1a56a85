#include "lintrees/census.hpp"

#include <algorithm>
#include <set>

#include "lintrees/realizer.hpp"
#include "lintrees/verify.hpp"

namespace lintrees {

namespace {

std::set<std::vector<int>> unordered_catalog(const std::vector<OrderedMultList>& l0) {
    std::set<std::vector<int>> out;
    for (auto l : l0) {
        std::sort(l.begin(), l.end(), std::greater<>());
        out.insert(l);
    }
    return out;
}

bool try_realize_table(const LinearTreeSpec& spec, const LspTable& table, std::string* error) {
    OrderedMultList mults = table.nonzero_sums();
    SpectrumTarget target;
    target.multiplicities = mults;
    target.table = table;
    target.eigenvalues.resize(mults.size());
    for (size_t i = 0; i < mults.size(); ++i) target.eigenvalues[i] = 1.0 + i;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        try {
            realize(spec, target, seed);
            return true;
        } catch (const std::exception& e) {
            *error = e.what();
        }
    }
    return false;
}

}  // namespace

TreeAudit audit_tree(const TreeGraph& g, bool with_realize) {
    TreeAudit audit;
    audit.n = g.n;
    audit.ahu = ahu_canonical(g);

    LinearityResult lin = is_linear(g);
    if (!lin.linear || !lin.spec) {
        audit.failures.push_back("tree is not linear");
        return audit;
    }
    audit.spec = *lin.spec;
    audit.diameter = diameter(audit.spec);
    TreeStats st = stats(expand(audit.spec));
    audit.d2 = st.d2;

    auto guard = [&](const std::string& what, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            audit.failures.push_back(what + ": " + e.what());
        }
    };

    guard("enumeration", [&] {
        audit.l0 = enumerate_ordered(audit.spec);
        for (const auto& l : audit.l0)
            if (l.front() != 1 || l.back() != 1)
                audit.failures.push_back("achievable list without simple extremes");
    });

    guard("degree list", [&] {
        DegreeListResult r = degree_list(audit.spec);
        audit.degree_list = r.multiplicities;
        audit.degree_achievable = r.certificate.achievable;
    });

    guard("ones bound", [&] {
        OnesBound b = ones_bound(audit.spec);
        audit.ones_upper = b.upper;
        audit.ones_enumerated = b.enumerated;
    });

    guard("max multiplicity", [&] { audit.max_multiplicity = max_multiplicity(audit.spec); });

    guard("subdivision", [&] {
        audit.subdivision_ok = true;
        for (const auto& mults : unordered_catalog(audit.l0)) {
            std::set<int> values(mults.begin(), mults.end());
            for (int v : values) {
                if (v < 2) continue;
                int idx = static_cast<int>(std::find(mults.begin(), mults.end(), v) - mults.begin());
                subdivide_list(audit.spec, mults, idx);  // throws on failure
            }
        }
    });

    guard("augmentation", [&] {
        audit.augmentation_ok = true;
        std::set<std::string> seen;
        std::vector<TreeGraph> augmented;
        for (int v = 0; v < g.n; ++v) {
            TreeGraph t = g;
            t.n = g.n + 1;
            t.edges.emplace_back(v, g.n);
            std::sort(t.edges.begin(), t.edges.end());
            if (seen.insert(ahu_canonical(t)).second) augmented.push_back(t);
        }
        for (size_t e = 0; e < g.edges.size(); ++e) {
            TreeGraph t = g;
            t.n = g.n + 1;
            t.edges.erase(t.edges.begin() + e);
            t.edges.emplace_back(g.edges[e].first, g.n);
            t.edges.emplace_back(g.edges[e].second, g.n);
            std::sort(t.edges.begin(), t.edges.end());
            if (seen.insert(ahu_canonical(t)).second) augmented.push_back(t);
        }
        for (const auto& t : augmented) {
            if (!is_linear(t).linear) continue;
            AugmentationReport r = augmentation_check(audit.spec, t);
            if (!r.ok()) {
                audit.augmentation_ok = false;
                audit.failures.push_back("augmentation inclusion violated");
            }
        }
    });

    guard("diminimal", [&] {
        LspTable table = diminimal_list(audit.spec);
        audit.diminimal_sums = table.sums();
        if (static_cast<int>(table.nonzero_sums().size()) != audit.diameter)
            audit.failures.push_back("diminimal table does not have diameter many eigenvalues");
        if (with_realize) {
            std::string err;
            audit.diminimal_realizes = try_realize_table(table.tree, table, &err);
            if (!audit.diminimal_realizes)
                audit.failures.push_back("diminimal table failed to realize: " + err);
        }
    });

    return audit;
}

CensusReport run_census(int max_n, bool with_realize) {
    CensusReport report;
    report.max_n = max_n;
    for (int n = 2; n <= max_n; ++n) {
        for (const auto& g : all_trees(n)) {
            if (!is_linear(g).linear) continue;
            report.trees.push_back(audit_tree(g, with_realize));
            report.failure_count += static_cast<int>(report.trees.back().failures.size());
        }
    }
    return report;
}

nlohmann::json census_to_json(const CensusReport& report) {
    nlohmann::json j;
    j["max_n"] = report.max_n;
    j["failure_count"] = report.failure_count;
    j["trees"] = nlohmann::json::array();
    for (const auto& t : report.trees) {
        nlohmann::json tj;
        tj["n"] = t.n;
        tj["ahu"] = t.ahu;
        tj["stars"] = nlohmann::json::array();
        for (const auto& s : t.spec.stars) tj["stars"].push_back(s.arms);
        tj["paths"] = t.spec.paths;
        tj["diameter"] = t.diameter;
        tj["d2"] = t.d2;
        tj["l0_count"] = t.l0.size();
        tj["l0"] = t.l0;
        tj["degree_list"] = t.degree_list;
        tj["degree_achievable"] = t.degree_achievable;
        tj["ones_upper"] = t.ones_upper;
        tj["ones_enumerated"] = t.ones_enumerated;
        tj["max_multiplicity"] = t.max_multiplicity;
        tj["diminimal_sums"] = t.diminimal_sums;
        tj["subdivision_ok"] = t.subdivision_ok;
        tj["augmentation_ok"] = t.augmentation_ok;
        tj["diminimal_realizes"] = t.diminimal_realizes;
        tj["failures"] = t.failures;
        j["trees"].push_back(tj);
    }
    return j;
}

}  // namespace lintrees
