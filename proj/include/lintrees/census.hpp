#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lintrees/lsp_engine.hpp"
#include "lintrees/tree_model.hpp"

namespace lintrees {

// Structural audit of one linear tree: the catalog plus every corollary
// check. Violations land in `failures` (expected empty).
struct TreeAudit {
    int n = 0;
    std::string ahu;
    LinearTreeSpec spec;
    int diameter = 0;
    int d2 = 0;
    std::vector<OrderedMultList> l0;
    std::vector<int> degree_list;
    bool degree_achievable = false;
    int ones_upper = 0;
    int ones_enumerated = 0;
    int max_multiplicity = 0;
    std::vector<int> diminimal_sums;
    bool subdivision_ok = false;
    bool augmentation_ok = false;
    bool diminimal_realizes = false;
    std::vector<std::string> failures;
};

TreeAudit audit_tree(const TreeGraph& g, bool with_realize);

struct CensusReport {
    int max_n = 0;
    std::vector<TreeAudit> trees;
    int failure_count = 0;
};

// Audits every linear tree with 2 <= n <= max_n.
CensusReport run_census(int max_n, bool with_realize);

nlohmann::json census_to_json(const CensusReport& report);

}  // namespace lintrees
