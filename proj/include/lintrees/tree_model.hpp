#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lintrees/common.hpp"

namespace lintrees {

// A tree with one central vertex and pendant paths (arms). Arm lengths are
// vertex counts and are kept weakly decreasing.
struct GeneralizedStarSpec {
    std::vector<int> arms;

    int vertex_count() const;
    void normalize();            // sort arms descending
    void validate() const;       // nonempty, every arm >= 1

    bool operator==(const GeneralizedStarSpec&) const = default;
};

// L(T_1, s_1, T_2, ..., s_{k-1}, T_k): star centers joined by paths with s_i
// interior vertices (s_i = 0 means adjacent centers).
struct LinearTreeSpec {
    std::vector<GeneralizedStarSpec> stars;
    std::vector<int> paths;

    int vertex_count() const;
    void validate() const;

    bool operator==(const LinearTreeSpec&) const = default;
};

struct TreeGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted

    std::vector<std::vector<int>> adjacency() const;
    void validate() const;  // connected and acyclic
};

// Positions of spec components inside expand()'s vertex numbering.
struct TreeLayout {
    std::vector<int> centers;                          // per star
    std::vector<std::vector<std::vector<int>>> arms;   // [star][arm][vertex], root to tip
    std::vector<std::vector<int>> path_vertices;       // [path][vertex], star i side first
};

// Deterministic numbering: star 1 center, star 1 arms in decreasing length
// (each root to tip), path 1 vertices in order, star 2 center, and so on.
TreeGraph expand(const LinearTreeSpec& spec);
TreeLayout layout(const LinearTreeSpec& spec);

// Diameter in vertices: the longest of the within-star paths (two longest
// arms plus the center) and the cross-star paths (longest arms of the two
// stars plus all centers and interior path vertices between them).
int diameter(const LinearTreeSpec& spec);

struct TreeStats {
    std::vector<int> degrees;  // by vertex
    int d2 = 0;                // vertices of degree exactly 2
    std::vector<int> hdvs;     // vertices of degree >= 3, ascending
};
TreeStats stats(const TreeGraph& g);

struct LinearityResult {
    bool linear = false;
    // Canonical decomposition: stars in HDV path order, pathlike trees as a
    // single star rooted at an end vertex. Absent for the one-vertex tree.
    std::optional<LinearTreeSpec> spec;
};
LinearityResult is_linear(const TreeGraph& g);

// AHU canonical form rooted at the centroid; equal strings <=> isomorphic.
std::string ahu_canonical(const TreeGraph& g);

// All trees on n vertices up to isomorphism.
std::vector<TreeGraph> all_trees(int n);

// Longest path in vertices by double BFS sweep (independent diameter oracle).
int longest_path_vertices(const TreeGraph& g);

// Every LinearTreeSpec with the given vertex count (test enumeration support;
// includes non-canonical decompositions).
std::vector<LinearTreeSpec> all_linear_specs(int n);

}  // namespace lintrees
