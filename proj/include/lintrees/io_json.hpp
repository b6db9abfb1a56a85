#pragma once

#include <Eigen/Dense>
#include <string>

#include "json.hpp"
#include "lintrees/lsp_engine.hpp"
#include "lintrees/tree_model.hpp"

namespace lintrees {

nlohmann::json spec_to_json(const LinearTreeSpec& spec);
LinearTreeSpec spec_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const TreeGraph& g);
TreeGraph graph_from_json(const nlohmann::json& j);

// {"n":..., "entries": [[i, j, value], ...]} lower triangle including the
// diagonal; only structural entries (diagonal and tree edges) are stored.
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m, const TreeGraph& tree);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

// Reads a file holding either a tree spec ("stars"/"paths") or an explicit
// graph ("n"/"edges"); graphs must be linear to yield a spec.
struct LoadedTree {
    LinearTreeSpec spec;
    TreeGraph graph;
};
LoadedTree load_tree_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lintrees
