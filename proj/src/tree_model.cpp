#include "lintrees/tree_model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "lintrees/partitions.hpp"

namespace lintrees {

int GeneralizedStarSpec::vertex_count() const {
    return 1 + std::accumulate(arms.begin(), arms.end(), 0);
}

void GeneralizedStarSpec::normalize() {
    std::sort(arms.begin(), arms.end(), std::greater<>());
}

void GeneralizedStarSpec::validate() const {
    if (arms.empty()) throw std::invalid_argument("generalized star needs at least one arm");
    for (int a : arms)
        if (a < 1) throw std::invalid_argument("arm lengths must be >= 1");
    if (!std::is_sorted(arms.begin(), arms.end(), std::greater_equal<>()))
        throw std::invalid_argument("arms must be weakly decreasing; call normalize()");
}

int LinearTreeSpec::vertex_count() const {
    int n = std::accumulate(paths.begin(), paths.end(), 0);
    for (const auto& s : stars) n += s.vertex_count();
    return n;
}

void LinearTreeSpec::validate() const {
    if (stars.empty()) throw std::invalid_argument("linear tree needs at least one star");
    if (paths.size() + 1 != stars.size())
        throw std::invalid_argument("need exactly one path entry between consecutive stars");
    for (const auto& s : stars) s.validate();
    for (int p : paths)
        if (p < 0) throw std::invalid_argument("path interior vertex counts must be >= 0");
}

std::vector<std::vector<int>> TreeGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

void TreeGraph::validate() const {
    if (n < 1) throw std::invalid_argument("tree needs at least one vertex");
    if (static_cast<int>(edges.size()) != n - 1)
        throw std::invalid_argument("tree on n vertices needs n-1 edges");
    for (auto [a, b] : edges)
        if (a < 0 || b < 0 || a >= n || b >= n || a == b)
            throw std::invalid_argument("edge endpoint out of range");
    auto adj = adjacency();
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                q.push(u);
            }
    }
    if (count != n) throw std::invalid_argument("graph is not connected");
}

TreeGraph expand(const LinearTreeSpec& spec) {
    spec.validate();
    TreeLayout lay = layout(spec);
    TreeGraph g;
    g.n = spec.vertex_count();
    auto add_edge = [&](int a, int b) { g.edges.emplace_back(std::min(a, b), std::max(a, b)); };

    for (size_t i = 0; i < spec.stars.size(); ++i) {
        int c = lay.centers[i];
        for (const auto& arm : lay.arms[i]) {
            int prev = c;
            for (int v : arm) {
                add_edge(prev, v);
                prev = v;
            }
        }
        if (i + 1 < spec.stars.size()) {
            int prev = c;
            for (int v : lay.path_vertices[i]) {
                add_edge(prev, v);
                prev = v;
            }
            add_edge(prev, lay.centers[i + 1]);
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

TreeLayout layout(const LinearTreeSpec& spec) {
    spec.validate();
    TreeLayout lay;
    int next = 0;
    for (size_t i = 0; i < spec.stars.size(); ++i) {
        lay.centers.push_back(next++);
        std::vector<std::vector<int>> arms;
        for (int len : spec.stars[i].arms) {
            std::vector<int> arm(len);
            for (int& v : arm) v = next++;
            arms.push_back(std::move(arm));
        }
        lay.arms.push_back(std::move(arms));
        if (i + 1 < spec.stars.size()) {
            std::vector<int> pv(spec.paths[i]);
            for (int& v : pv) v = next++;
            lay.path_vertices.push_back(std::move(pv));
        }
    }
    return lay;
}

int diameter(const LinearTreeSpec& spec) {
    spec.validate();
    int k = static_cast<int>(spec.stars.size());
    int best = 0;
    for (int i = 0; i < k; ++i) {
        const auto& arms = spec.stars[i].arms;
        int within = arms[0] + (arms.size() > 1 ? arms[1] : 0) + 1;
        best = std::max(best, within);
    }
    for (int i = 0; i < k; ++i) {
        int between = 0;  // interior vertices plus intermediate centers
        for (int j = i + 1; j < k; ++j) {
            between += spec.paths[j - 1];
            int cross = spec.stars[i].arms[0] + spec.stars[j].arms[0] + (j - i + 1) + between;
            best = std::max(best, cross);
            between += 1;
        }
    }
    return best;
}

TreeStats stats(const TreeGraph& g) {
    g.validate();
    TreeStats st;
    st.degrees.assign(g.n, 0);
    for (auto [a, b] : g.edges) {
        ++st.degrees[a];
        ++st.degrees[b];
    }
    for (int v = 0; v < g.n; ++v) {
        if (st.degrees[v] == 2) ++st.d2;
        if (st.degrees[v] >= 3) st.hdvs.push_back(v);
    }
    return st;
}

namespace {

// Walks from `from` into `first` through degree-2 vertices; returns the
// pendant path length in vertices, or -1 on running into a vertex of
// degree >= 3.
int pendant_path_length(const std::vector<std::vector<int>>& adj, int from, int first) {
    int len = 0;
    int prev = from, cur = first;
    while (true) {
        ++len;
        if (adj[cur].size() == 1) return len;
        if (adj[cur].size() >= 3) return -1;
        int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
    }
}

}  // namespace

LinearityResult is_linear(const TreeGraph& g) {
    g.validate();
    if (g.n == 1) return {true, std::nullopt};

    auto adj = g.adjacency();
    TreeStats st = stats(g);

    if (st.hdvs.empty()) {
        LinearTreeSpec spec;
        spec.stars.push_back({{g.n - 1}});
        return {true, spec};
    }

    if (st.hdvs.size() == 1) {
        int c = st.hdvs[0];
        GeneralizedStarSpec star;
        for (int u : adj[c]) {
            int len = pendant_path_length(adj, c, u);
            if (len < 0) throw internal_error("second HDV found under a single-HDV tree");
            star.arms.push_back(len);
        }
        star.normalize();
        return {true, LinearTreeSpec{{star}, {}}};
    }

    // Minimal subtree spanning the HDVs: strip non-HDV leaves until fixed.
    std::vector<char> in_sub(g.n, 1);
    std::vector<int> deg(st.degrees);
    std::vector<char> is_hdv(g.n, 0);
    for (int v : st.hdvs) is_hdv[v] = 1;
    std::queue<int> leaves;
    for (int v = 0; v < g.n; ++v)
        if (deg[v] == 1 && !is_hdv[v]) leaves.push(v);
    while (!leaves.empty()) {
        int v = leaves.front();
        leaves.pop();
        in_sub[v] = 0;
        for (int u : adj[v])
            if (in_sub[u] && --deg[u] == 1 && !is_hdv[u]) leaves.push(u);
    }
    for (int v = 0; v < g.n; ++v)
        if (in_sub[v] && deg[v] > 2) return {false, std::nullopt};

    int start = -1;
    for (int v = 0; v < g.n; ++v)
        if (in_sub[v] && deg[v] == 1) {
            start = v;
            break;
        }
    if (start < 0) throw internal_error("HDV path has no endpoint");

    std::vector<int> chain;
    std::vector<int> gaps;
    int prev = -1, cur = start, pending = 0;
    while (true) {
        if (is_hdv[cur]) {
            if (!chain.empty()) gaps.push_back(pending);
            chain.push_back(cur);
            pending = 0;
        } else {
            ++pending;
        }
        int nxt = -1;
        for (int u : adj[cur])
            if (in_sub[u] && u != prev) {
                nxt = u;
                break;
            }
        if (nxt < 0) break;
        prev = cur;
        cur = nxt;
    }
    if (chain.size() != st.hdvs.size()) throw internal_error("HDV chain walk missed a vertex");

    LinearTreeSpec spec;
    for (int c : chain) {
        GeneralizedStarSpec star;
        for (int u : adj[c]) {
            if (in_sub[u]) continue;  // chain direction, not an arm
            int len = pendant_path_length(adj, c, u);
            if (len < 0) throw internal_error("off-chain branch contains an HDV in a linear tree");
            star.arms.push_back(len);
        }
        star.normalize();
        spec.stars.push_back(star);
    }
    spec.paths = gaps;
    spec.validate();
    return {true, spec};
}

namespace {

std::string ahu_rooted(const std::vector<std::vector<int>>& adj, int root, int parent) {
    std::vector<std::string> kids;
    for (int u : adj[root])
        if (u != parent) kids.push_back(ahu_rooted(adj, u, root));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (const auto& k : kids) out += k;
    out += ")";
    return out;
}

std::vector<int> centroids(const TreeGraph& g) {
    auto adj = g.adjacency();
    std::vector<int> size(g.n, 1), order, parent(g.n, -1);
    std::vector<int> stack{0};
    std::vector<char> seen(g.n, 0);
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                parent[u] = v;
                stack.push_back(u);
            }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) size[parent[*it]] += size[*it];

    std::vector<int> best;
    int best_val = g.n + 1;
    for (int v = 0; v < g.n; ++v) {
        int heaviest = g.n - size[v];
        for (int u : adj[v])
            if (parent[u] == v) heaviest = std::max(heaviest, size[u]);
        if (heaviest < best_val) {
            best_val = heaviest;
            best = {v};
        } else if (heaviest == best_val) {
            best.push_back(v);
        }
    }
    return best;
}

}  // namespace

std::string ahu_canonical(const TreeGraph& g) {
    g.validate();
    if (g.n == 1) return "()";
    auto adj = g.adjacency();
    std::string best;
    for (int c : centroids(g)) {
        std::string s = ahu_rooted(adj, c, -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

std::vector<TreeGraph> all_trees(int n) {
    if (n < 1) throw std::invalid_argument("all_trees requires n >= 1");
    std::vector<TreeGraph> cur;
    cur.push_back({1, {}});
    for (int m = 2; m <= n; ++m) {
        std::map<std::string, TreeGraph> next;
        for (const auto& t : cur) {
            for (int v = 0; v < t.n; ++v) {
                TreeGraph bigger = t;
                bigger.n = t.n + 1;
                bigger.edges.emplace_back(v, t.n);
                std::sort(bigger.edges.begin(), bigger.edges.end());
                next.emplace(ahu_canonical(bigger), bigger);
            }
        }
        cur.clear();
        for (auto& [key, t] : next) cur.push_back(std::move(t));
    }
    return cur;
}

int longest_path_vertices(const TreeGraph& g) {
    g.validate();
    auto adj = g.adjacency();
    auto bfs_far = [&](int s) {
        std::vector<int> dist(g.n, -1);
        std::queue<int> q;
        q.push(s);
        dist[s] = 0;
        int far = s;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (dist[v] > dist[far]) far = v;
            for (int u : adj[v])
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    q.push(u);
                }
        }
        return std::pair{far, dist[far]};
    };
    auto [a, d0] = bfs_far(0);
    auto [b, d1] = bfs_far(a);
    return d1 + 1;
}

namespace {

void gen_specs(int remaining, std::vector<GeneralizedStarSpec>& stars, std::vector<int>& paths,
               std::vector<LinearTreeSpec>& out) {
    if (!stars.empty() && remaining == 0) {
        out.push_back(LinearTreeSpec{stars, paths});
        return;  // adding more components needs more vertices
    }
    if (stars.empty()) {
        for (int sz = 2; sz <= remaining; ++sz)
            for (const auto& p : partitions_of(sz - 1)) {
                stars.push_back({p.parts()});
                gen_specs(remaining - sz, stars, paths, out);
                stars.pop_back();
            }
        return;
    }
    for (int s = 0; s + 2 <= remaining; ++s) {
        paths.push_back(s);
        for (int sz = 2; sz + s <= remaining; ++sz)
            for (const auto& p : partitions_of(sz - 1)) {
                stars.push_back({p.parts()});
                gen_specs(remaining - s - sz, stars, paths, out);
                stars.pop_back();
            }
        paths.pop_back();
    }
}

}  // namespace

std::vector<LinearTreeSpec> all_linear_specs(int n) {
    if (n < 2) throw std::invalid_argument("all_linear_specs requires n >= 2");
    std::vector<LinearTreeSpec> out;
    std::vector<GeneralizedStarSpec> stars;
    std::vector<int> paths;
    gen_specs(n, stars, paths, out);
    return out;
}

}  // namespace lintrees
