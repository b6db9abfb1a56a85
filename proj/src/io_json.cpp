#include "lintrees/io_json.hpp"

#include <fstream>
#include <sstream>

namespace lintrees {

nlohmann::json spec_to_json(const LinearTreeSpec& spec) {
    nlohmann::json j;
    j["stars"] = nlohmann::json::array();
    for (const auto& s : spec.stars) j["stars"].push_back(s.arms);
    j["paths"] = spec.paths;
    return j;
}

LinearTreeSpec spec_from_json(const nlohmann::json& j) {
    LinearTreeSpec spec;
    for (const auto& arms : j.at("stars")) {
        GeneralizedStarSpec star;
        star.arms = arms.get<std::vector<int>>();
        star.normalize();
        spec.stars.push_back(std::move(star));
    }
    if (j.contains("paths")) spec.paths = j.at("paths").get<std::vector<int>>();
    spec.validate();
    return spec;
}

nlohmann::json graph_to_json(const TreeGraph& g) {
    nlohmann::json j;
    j["n"] = g.n;
    j["edges"] = nlohmann::json::array();
    for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
    return j;
}

TreeGraph graph_from_json(const nlohmann::json& j) {
    TreeGraph g;
    g.n = j.at("n").get<int>();
    for (const auto& e : j.at("edges")) {
        int a = e.at(0).get<int>(), b = e.at(1).get<int>();
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.validate();
    return g;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m, const TreeGraph& tree) {
    nlohmann::json j;
    j["n"] = tree.n;
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < tree.n; ++i) entries.push_back({i, i, m(i, i)});
    for (auto [a, b] : tree.edges) entries.push_back({std::max(a, b), std::min(a, b), m(a, b)});
    j["entries"] = entries;
    return j;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    int n = j.at("n").get<int>();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : j.at("entries")) {
        int a = e.at(0).get<int>(), b = e.at(1).get<int>();
        double v = e.at(2).get<double>();
        m(a, b) = m(b, a) = v;
    }
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

LoadedTree load_tree_file(const std::string& path) {
    nlohmann::json j = nlohmann::json::parse(read_file(path));
    LoadedTree out;
    if (j.contains("stars")) {
        out.spec = spec_from_json(j);
        out.graph = expand(out.spec);
    } else if (j.contains("edges")) {
        out.graph = graph_from_json(j);
        LinearityResult lin = is_linear(out.graph);
        if (!lin.linear || !lin.spec)
            throw std::invalid_argument("graph in " + path + " is not a linear tree");
        out.spec = *lin.spec;
        out.graph = expand(out.spec);  // canonical numbering
    } else {
        throw std::invalid_argument(path + " holds neither a tree spec nor a graph");
    }
    return out;
}

}  // namespace lintrees
