#include "lintrees/realizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lintrees/verify.hpp"

// The star solver works in spectral coordinates: every arm is a Jacobi matrix
// determined by its eigenvalues (fixed by the upward assignment) and its
// first-vertex spectral weights. Splitting the arrow weights
//   S_i = -prod_j (mu_i - lambda_j) / prod_{r != i} (mu_i - mu_r)
// across the arms assigned to mu_i gives a matrix whose characteristic
// polynomial factors exactly as required, so the initial star is a solution
// up to roundoff and Newton only polishes. At tree level the connecting
// edges are switched on at a small epsilon and Newton restores one
// determinant condition per non-upward table cell, with the multiplicity
// locked by the arm spectra deflated through jet evaluation.

namespace lintrees {

namespace {

struct Rng {
    std::mt19937_64 gen;
    bool active = false;

    explicit Rng(std::uint64_t seed) : gen(seed), active(seed != 0) {}
    double u01() { return (gen() >> 11) * (1.0 / 9007199254740992.0); }
    // Position inside (0,1) used for gap values and weight splits.
    double fraction() { return active ? 0.3 + 0.4 * u01() : 0.5; }
};

double pick_in_gap(double lo, double hi, const std::vector<double>& avoid, double span, Rng& rng) {
    double f = rng.fraction();
    for (int attempt = 0; attempt < 64; ++attempt) {
        double candidate = lo + f * (hi - lo);
        bool clear = true;
        for (double a : avoid)
            if (std::abs(candidate - a) < 1e-7 * span) {
                clear = false;
                break;
            }
        if (clear) return candidate;
        f = std::fmod(f + 0.3819660112501051, 1.0);
        if (f < 0.05 || f > 0.95) f = 0.5 + 0.25 * (f - 0.5);
    }
    return 0.5 * (lo + hi);
}

// Strictly alternating form of a star row: upward slots at the odd indices,
// adjacent non-upward pairs separated by inserted upward zeros whose values
// live strictly inside the gap.
struct AltRow {
    std::vector<double> values;  // size 2u + 1, strictly increasing
    std::vector<int> qhat;       // size u

    UpwardList as_list() const {
        UpwardList out;
        for (size_t i = 0; i < values.size(); ++i) {
            if (i % 2 == 0)
                out.entries.push_back({1, false});
            else
                out.entries.push_back({qhat[i / 2], true});
        }
        return out;
    }
    std::vector<double> lambdas() const {
        std::vector<double> out;
        for (size_t i = 0; i < values.size(); i += 2) out.push_back(values[i]);
        return out;
    }
    std::vector<double> mus() const {
        std::vector<double> out;
        for (size_t i = 1; i < values.size(); i += 2) out.push_back(values[i]);
        return out;
    }
};

AltRow canonicalize_row(const UpwardList& row, const std::vector<double>& values,
                        std::vector<double> avoid, Rng& rng) {
    if (row.entries.size() != values.size())
        throw std::invalid_argument("need one numeric value per row entry");
    for (size_t i = 1; i < values.size(); ++i)
        if (!(values[i - 1] < values[i]))
            throw std::invalid_argument("row values must be strictly increasing");
    double span = values.back() - values.front();
    if (span <= 0) span = 1.0;

    AltRow alt;
    bool last_nonupward = false;
    for (size_t i = 0; i < row.entries.size(); ++i) {
        const auto& e = row.entries[i];
        if (e.upward) {
            alt.values.push_back(values[i]);
            alt.qhat.push_back(e.multiplicity);
            last_nonupward = false;
        } else {
            if (last_nonupward) {
                double v = pick_in_gap(alt.values.back(), values[i], avoid, span, rng);
                avoid.push_back(v);
                alt.values.push_back(v);
                alt.qhat.push_back(0);
            }
            alt.values.push_back(values[i]);
            last_nonupward = true;
        }
    }
    return alt;
}

}  // namespace

UpwardAssignment assign_upwards(const UpwardList& row, const GeneralizedStarSpec& arms) {
    arms.validate();
    const int k = static_cast<int>(arms.arms.size());
    std::vector<int> slots;  // indices of upward entries
    for (size_t i = 0; i < row.entries.size(); ++i)
        if (row.entries[i].upward) slots.push_back(static_cast<int>(i));

    std::vector<int> order(slots.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return row.entries[slots[a]].multiplicity > row.entries[slots[b]].multiplicity;
    });

    UpwardAssignment out;
    out.arms_for_slot.assign(slots.size(), {});
    std::vector<int> remaining(arms.arms.begin(), arms.arms.end());
    std::vector<int> assigned(k, 0);

    auto greedy = [&]() -> bool {
        for (int s : order) {
            int need = row.entries[slots[s]].multiplicity + 1;
            std::vector<int> pick(k);
            std::iota(pick.begin(), pick.end(), 0);
            std::stable_sort(pick.begin(), pick.end(), [&](int a, int b) {
                if (remaining[a] != remaining[b]) return remaining[a] > remaining[b];
                return assigned[a] < assigned[b];
            });
            for (int a : pick) {
                if (need == 0) break;
                if (remaining[a] >= 1) {
                    out.arms_for_slot[s].push_back(a);
                    --remaining[a];
                    ++assigned[a];
                    --need;
                }
            }
            if (need > 0) return false;
            std::sort(out.arms_for_slot[s].begin(), out.arms_for_slot[s].end());
        }
        return true;
    };
    if (greedy()) return out;

    // Exact fallback, slot by slot over arm combinations.
    out.arms_for_slot.assign(slots.size(), {});
    std::vector<int> rem(arms.arms.begin(), arms.arms.end());
    auto dfs = [&](auto&& self, size_t oi) -> bool {
        if (oi == order.size()) return true;
        int s = order[oi];
        int need = row.entries[slots[s]].multiplicity + 1;
        std::vector<int> combo;
        auto choose = [&](auto&& pick_next, int from, int left) -> bool {
            if (left == 0) {
                for (int a : combo) --rem[a];
                out.arms_for_slot[s] = combo;
                if (self(self, oi + 1)) return true;
                for (int a : combo) ++rem[a];
                return false;
            }
            for (int a = from; a <= k - left; ++a) {
                if (rem[a] < 1) continue;
                combo.push_back(a);
                if (pick_next(pick_next, a + 1, left - 1)) return true;
                combo.pop_back();
            }
            return false;
        };
        return choose(choose, 0, need);
    };
    if (!dfs(dfs, 0))
        throw internal_error("no feasible upward assignment; row should not have validated");
    return out;
}

namespace {

// Mutable spectral state of one star.
struct StarState {
    GeneralizedStarSpec arms;
    AltRow row;
    std::vector<std::vector<int>> slot_arms;
    std::vector<std::vector<double>> gamma;    // per arm, ascending; fixed
    std::vector<std::vector<double>> eta;      // per arm, ascending
    std::vector<JacobiMatrix> arm_matrix;      // consistent with (gamma, eta)
    double a0 = 0.0;
    std::vector<double> edges;
    std::vector<double> lambdas;
    std::vector<int> cond_arm;  // per condition, arm id or -1 for a0

    int vertex_count() const { return arms.vertex_count(); }

    void rebuild_arm(int j) {
        SpectralPair sp{gamma[j], eta[j]};
        arm_matrix[j] = reconstruct(sp, DeletedEnd::First);
    }

    double arm_poly(int j, double t) const {
        double p = 1;
        for (double g : gamma[j]) p *= t - g;
        return p;
    }
    double arm_sub_poly(int j, double t) const {
        double p = 1;
        for (double e : eta[j]) p *= t - e;
        return p;
    }
    double row_scale(double lambda) const {
        double s = 1;
        for (size_t j = 0; j < gamma.size(); ++j) s *= arm_poly(static_cast<int>(j), lambda);
        return s;
    }
    // Renormalized determinant condition in spectral coordinates:
    // (lambda - a0) - sum_j a_j^2 p_{B_j(1)}(lambda) / p_{B_j}(lambda).
    double secular(double lambda) const {
        double f = lambda - a0;
        for (size_t j = 0; j < gamma.size(); ++j)
            f -= edges[j] * edges[j] * arm_sub_poly(static_cast<int>(j), lambda) /
                 arm_poly(static_cast<int>(j), lambda);
        return f;
    }

    Eigen::MatrixXd matrix() const {
        int n = vertex_count();
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        m(0, 0) = a0;
        int idx = 1;
        for (size_t j = 0; j < arm_matrix.size(); ++j) {
            const JacobiMatrix& b = arm_matrix[j];
            m(0, idx) = m(idx, 0) = edges[j];
            for (int t = 0; t < b.size(); ++t) {
                m(idx + t, idx + t) = b.diag[t];
                if (t + 1 < b.size()) m(idx + t, idx + t + 1) = m(idx + t + 1, idx + t) = b.offdiag[t];
            }
            idx += b.size();
        }
        return m;
    }

    TreeGraph local_tree() const {
        LinearTreeSpec one;
        one.stars.push_back(arms);
        return expand(one);
    }
};

// Variable addressing shared by the star and tree solvers.
struct VarRef {
    enum Kind { A0, Edge, Eta, PathDiag } kind;
    int star = 0;
    int arm = 0;
    int index = 0;  // eta index or path vertex position
};

std::vector<VarRef> star_variables(const StarState& s, int star_id) {
    const int k = static_cast<int>(s.arms.arms.size());
    std::vector<int> cond_count(k, 0);
    for (int a : s.cond_arm)
        if (a >= 0) ++cond_count[a];
    std::vector<VarRef> vars;
    vars.push_back({VarRef::A0, star_id, 0, 0});
    for (int j = 0; j < k; ++j) {
        if (cond_count[j] == 0) continue;
        vars.push_back({VarRef::Edge, star_id, j, 0});
        for (int t = 0; t + 1 < cond_count[j]; ++t) vars.push_back({VarRef::Eta, star_id, j, t});
    }
    return vars;
}

StarState build_star_state(const GeneralizedStarSpec& arms, const UpwardList& row,
                           const std::vector<double>& values, Rng& rng,
                           const std::vector<double>& avoid) {
    GeneralizedStarSpec sorted = arms;
    sorted.normalize();
    ValidationResult valid = validate_gstar(row, sorted);
    if (!valid) throw std::invalid_argument("invalid star row: " + valid.reason);

    StarState s;
    s.arms = sorted;
    s.row = canonicalize_row(row, values, avoid, rng);
    const int u = static_cast<int>(s.row.qhat.size());
    const int k = static_cast<int>(sorted.arms.size());

    UpwardAssignment assignment = assign_upwards(s.row.as_list(), sorted);
    s.slot_arms.assign(u, {});
    for (int i = 0; i < u; ++i) s.slot_arms[i] = assignment.arms_for_slot[i];

    std::vector<double> lam = s.row.lambdas();
    std::vector<double> mu = s.row.mus();
    s.lambdas = lam;

    // Arrow weights per upward value.
    std::vector<double> big_s(u);
    for (int i = 0; i < u; ++i) {
        double num = 1, den = 1;
        for (double l : lam) num *= mu[i] - l;
        for (int r = 0; r < u; ++r)
            if (r != i) den *= mu[i] - mu[r];
        big_s[i] = -num / den;
        if (!(big_s[i] > 0))
            throw internal_error("arrow weight is not positive; alternation input error");
    }

    // Split each weight across its assigned arms.
    std::vector<std::vector<std::pair<double, double>>> arm_support(k);  // (value, t)
    for (int i = 0; i < u; ++i) {
        const auto& dest = s.slot_arms[i];
        std::vector<double> parts(dest.size(), 1.0);
        if (rng.active)
            for (double& p : parts) p = 0.5 + rng.u01();
        double total = std::accumulate(parts.begin(), parts.end(), 0.0);
        for (size_t d = 0; d < dest.size(); ++d)
            arm_support[dest[d]].emplace_back(mu[i], big_s[i] * parts[d] / total);
    }

    s.gamma.assign(k, {});
    s.eta.assign(k, {});
    s.edges.assign(k, 0.0);
    s.arm_matrix.assign(k, {});
    for (int j = 0; j < k; ++j) {
        auto& sup = arm_support[j];
        if (static_cast<int>(sup.size()) != sorted.arms[j])
            throw internal_error("upward assignment does not fill arm " + std::to_string(j));
        std::sort(sup.begin(), sup.end());
        double mass = 0;
        std::vector<double> support, weights;
        for (auto [v, t] : sup) {
            support.push_back(v);
            mass += t;
        }
        for (auto [v, t] : sup) weights.push_back(t / mass);
        s.edges[j] = std::sqrt(mass);
        s.gamma[j] = support;
        s.arm_matrix[j] = jacobi_from_measure(support, weights);
        if (sorted.arms[j] > 1) {
            Eigen::MatrixXd sub = s.arm_matrix[j].dense().bottomRightCorner(sorted.arms[j] - 1,
                                                                            sorted.arms[j] - 1);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
            s.eta[j].assign(es.eigenvalues().data(), es.eigenvalues().data() + sorted.arms[j] - 1);
        }
    }

    double lam_sum = std::accumulate(lam.begin(), lam.end(), 0.0);
    double mu_sum = std::accumulate(mu.begin(), mu.end(), 0.0);
    s.a0 = lam_sum - mu_sum;

    // Conditions: the last is carried by a0, the rest first-fit over arms,
    // capped by the number of upward values each arm hosts.
    s.cond_arm.assign(u + 1, -1);
    std::vector<int> load(k, 0);
    for (int i = 0; i < u; ++i) {
        for (int j = 0; j < k; ++j)
            if (load[j] < sorted.arms[j]) {
                s.cond_arm[i] = j;
                ++load[j];
                break;
            }
        if (s.cond_arm[i] < 0) throw internal_error("condition distribution overflow");
    }
    return s;
}

double apply_var(StarState& s, const VarRef& v, double delta) {
    switch (v.kind) {
        case VarRef::A0:
            s.a0 += delta;
            return s.a0;
        case VarRef::Edge:
            s.edges[v.arm] += delta;
            return s.edges[v.arm];
        case VarRef::Eta: {
            double& e = s.eta[v.arm][v.index];
            e += delta;
            // keep the strict interlacing the change of variables needs
            double lo = s.gamma[v.arm][v.index];
            double hi = s.gamma[v.arm][v.index + 1];
            if (!(lo < e && e < hi)) {
                e -= delta;
                throw std::invalid_argument("eta step leaves the interlacing interval");
            }
            s.rebuild_arm(v.arm);
            return e;
        }
        default:
            throw internal_error("bad star variable");
    }
}

double eta_fd_step(const StarState& s, const VarRef& v) {
    double lo = s.gamma[v.arm][v.index];
    double hi = s.gamma[v.arm][v.index + 1];
    double e = s.eta[v.arm][v.index];
    double room = std::min(e - lo, hi - e);
    return std::min(1e-6 * std::max(1.0, std::abs(e)), 0.2 * room);
}

// Renormalized conditions from the assembled matrix (determinants via the
// neighbors recursion); used for the finite-difference cross checks.
Eigen::VectorXd star_conditions_matrix(const StarState& s, const TreeGraph& local) {
    Eigen::MatrixXd m = s.matrix();
    Eigen::VectorXd f(s.lambdas.size());
    for (size_t i = 0; i < s.lambdas.size(); ++i)
        f(i) = char_poly_neighbors(m, local, 0, s.lambdas[i]) / s.row_scale(s.lambdas[i]);
    return f;
}

Eigen::VectorXd star_conditions_spectral(const StarState& s) {
    Eigen::VectorXd f(s.lambdas.size());
    for (size_t i = 0; i < s.lambdas.size(); ++i) f(i) = s.secular(s.lambdas[i]);
    return f;
}

Eigen::MatrixXd star_jacobian_hybrid(const StarState& s) {
    auto vars = star_variables(s, 0);
    const int m = static_cast<int>(s.lambdas.size());
    Eigen::MatrixXd j(m, static_cast<int>(vars.size()));
    TreeGraph local = s.local_tree();
    for (size_t c = 0; c < vars.size(); ++c) {
        const VarRef& v = vars[c];
        if (v.kind == VarRef::A0) {
            for (int i = 0; i < m; ++i) j(i, c) = -1.0;
        } else if (v.kind == VarRef::Edge) {
            for (int i = 0; i < m; ++i)
                j(i, c) = -2.0 * s.edges[v.arm] * s.arm_sub_poly(v.arm, s.lambdas[i]) /
                          s.arm_poly(v.arm, s.lambdas[i]);
        } else {
            // finite differences through the spectral change of variables
            double h = eta_fd_step(s, v);
            StarState plus = s, minus = s;
            apply_var(plus, v, h);
            apply_var(minus, v, -h);
            Eigen::VectorXd fp = star_conditions_matrix(plus, local);
            Eigen::VectorXd fm = star_conditions_matrix(minus, local);
            j.col(c) = (fp - fm) / (2 * h);
        }
    }
    return j;
}

Eigen::MatrixXd star_jacobian_fd(const StarState& s) {
    auto vars = star_variables(s, 0);
    const int m = static_cast<int>(s.lambdas.size());
    Eigen::MatrixXd j(m, static_cast<int>(vars.size()));
    TreeGraph local = s.local_tree();
    for (size_t c = 0; c < vars.size(); ++c) {
        const VarRef& v = vars[c];
        double h = v.kind == VarRef::Eta
                       ? eta_fd_step(s, v)
                       : 1e-6 * std::max(1.0, std::abs(v.kind == VarRef::A0 ? s.a0
                                                                            : s.edges[v.arm]));
        StarState plus = s, minus = s;
        apply_var(plus, v, h);
        apply_var(minus, v, -h);
        Eigen::VectorXd fp = star_conditions_matrix(plus, local);
        Eigen::VectorXd fm = star_conditions_matrix(minus, local);
        j.col(c) = (fp - fm) / (2 * h);
    }
    return j;
}

// Damped Newton in the star's spectral coordinates.
int star_newton(StarState& s, double tol, int max_iter) {
    auto vars = star_variables(s, 0);
    int iters = 0;
    for (; iters < max_iter; ++iters) {
        Eigen::VectorXd f = star_conditions_spectral(s);
        if (f.lpNorm<Eigen::Infinity>() <= tol) break;
        Eigen::MatrixXd j = star_jacobian_hybrid(s);
        Eigen::VectorXd step = j.colPivHouseholderQr().solve(-f);
        double alpha = 1.0;
        bool moved = false;
        for (int half = 0; half < 30 && !moved; ++half, alpha *= 0.5) {
            StarState trial = s;
            bool ok = true;
            for (size_t c = 0; c < vars.size(); ++c) {
                try {
                    apply_var(trial, vars[c], alpha * step(c));
                } catch (const std::invalid_argument&) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            Eigen::VectorXd f2 = star_conditions_spectral(trial);
            if (f2.lpNorm<Eigen::Infinity>() < f.lpNorm<Eigen::Infinity>()) {
                s = std::move(trial);
                moved = true;
            }
        }
        if (!moved) break;
    }
    return iters;
}

std::vector<double> target_spectrum_of(const AltRow& row) {
    std::vector<double> out;
    for (size_t i = 0; i < row.values.size(); ++i) {
        if (i % 2 == 0)
            out.push_back(row.values[i]);
        else
            out.insert(out.end(), row.qhat[i / 2], row.values[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double spectral_residual(const Eigen::MatrixXd& m, const std::vector<double>& target) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.eigenvalues().size() != static_cast<int>(target.size()))
        throw internal_error("spectrum size mismatch");
    double worst = 0;
    for (size_t i = 0; i < target.size(); ++i)
        worst = std::max(worst, std::abs(es.eigenvalues()(static_cast<int>(i)) - target[i]));
    return worst;
}

StarRealization finish_star(StarState& s) {
    StarRealization out;
    Eigen::MatrixXd j = star_jacobian_hybrid(s);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
    out.jacobian_min_sv = svd.singularValues().minCoeff();
    Eigen::MatrixXd jfd = star_jacobian_fd(s);
    out.jacobian_fd_error = (j - jfd).norm() / std::max(jfd.norm(), 1e-300);

    out.iterations = star_newton(s, 1e-12, 100);
    out.matrix = s.matrix();
    out.residual = spectral_residual(out.matrix, target_spectrum_of(s.row));
    out.arm_gamma = s.gamma;
    out.arm_eta = s.eta;
    out.a0 = s.a0;
    out.center_edges = s.edges;
    out.cond_values = s.lambdas;
    out.cond_arm = s.cond_arm;
    return out;
}

}  // namespace

StarRealization realize_gstar(const GeneralizedStarSpec& arms, const UpwardList& row,
                              const std::vector<double>& values, std::uint64_t seed) {
    Rng rng(seed);
    StarState s = build_star_state(arms, row, values, rng, values);
    StarRealization out = finish_star(s);
    if (out.residual > 1e-9)
        throw std::runtime_error("star realization residual " + std::to_string(out.residual) +
                                 " exceeds 1e-9");
    return out;
}

Eigen::MatrixXd build_jacobian(const StarRealization& star) {
    StarState s;
    s.arms.arms.clear();
    for (const auto& g : star.arm_gamma) s.arms.arms.push_back(static_cast<int>(g.size()));
    s.gamma = star.arm_gamma;
    s.eta = star.arm_eta;
    s.a0 = star.a0;
    s.edges = star.center_edges;
    s.lambdas = star.cond_values;
    s.cond_arm = star.cond_arm;
    s.arm_matrix.resize(s.gamma.size());
    for (size_t j = 0; j < s.gamma.size(); ++j) s.rebuild_arm(static_cast<int>(j));
    return star_jacobian_hybrid(s);
}

Eigen::MatrixXd build_jacobian_fd(const StarRealization& star) {
    StarState s;
    s.arms.arms.clear();
    for (const auto& g : star.arm_gamma) s.arms.arms.push_back(static_cast<int>(g.size()));
    s.gamma = star.arm_gamma;
    s.eta = star.arm_eta;
    s.a0 = star.a0;
    s.edges = star.center_edges;
    s.lambdas = star.cond_values;
    s.cond_arm = star.cond_arm;
    s.arm_matrix.resize(s.gamma.size());
    for (size_t j = 0; j < s.gamma.size(); ++j) s.rebuild_arm(static_cast<int>(j));
    return star_jacobian_fd(s);
}

void SpectrumTarget::validate() const {
    if (eigenvalues.size() != multiplicities.size())
        throw std::invalid_argument("need one eigenvalue per multiplicity");
    for (size_t i = 1; i < eigenvalues.size(); ++i)
        if (!(eigenvalues[i - 1] < eigenvalues[i]))
            throw std::invalid_argument("target eigenvalues must be strictly increasing");
    ValidationResult r = validate_table(table);
    if (!r) throw std::invalid_argument("certificate table invalid: " + r.reason);
    if (table.nonzero_sums() != multiplicities)
        throw std::invalid_argument("table sums do not match the multiplicities");
}

std::vector<double> SpectrumTarget::full_spectrum() const {
    std::vector<double> out;
    for (size_t i = 0; i < eigenvalues.size(); ++i)
        out.insert(out.end(), multiplicities[i], eigenvalues[i]);
    return out;
}

namespace {

struct TreeCondition {
    double lambda = 0;
    int locked = 0;  // structurally locked multiplicity (upward cell values)
    int order = 0;   // jet coefficient index this condition pins to zero
    double scale = 1;
};

struct TreeSolver {
    LinearTreeSpec spec;
    TreeGraph graph;
    TreeLayout lay;
    std::vector<StarState> stars;
    std::vector<std::vector<double>> path_vals;
    std::vector<TreeCondition> conds;
    std::vector<VarRef> vars;
    double eps = 0;

    Eigen::MatrixXd assemble() const {
        int n = graph.n;
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (size_t i = 0; i < stars.size(); ++i) {
            const StarState& s = stars[i];
            int c = lay.centers[i];
            m(c, c) = s.a0;
            for (size_t j = 0; j < s.arm_matrix.size(); ++j) {
                const auto& armv = lay.arms[i][j];
                const JacobiMatrix& b = s.arm_matrix[j];
                m(c, armv[0]) = m(armv[0], c) = s.edges[j];
                for (size_t t = 0; t < armv.size(); ++t) {
                    m(armv[t], armv[t]) = b.diag[t];
                    if (t + 1 < armv.size())
                        m(armv[t], armv[t + 1]) = m(armv[t + 1], armv[t]) = b.offdiag[t];
                }
            }
        }
        for (size_t j = 0; j < path_vals.size(); ++j) {
            const auto& pv = lay.path_vertices[j];
            int prev = lay.centers[j];
            for (size_t t = 0; t < pv.size(); ++t) {
                m(pv[t], pv[t]) = path_vals[j][t];
                m(prev, pv[t]) = m(pv[t], prev) = eps;
                prev = pv[t];
            }
            m(prev, lay.centers[j + 1]) = m(lay.centers[j + 1], prev) = eps;
        }
        return m;
    }

    Eigen::VectorXd conditions(const Eigen::MatrixXd& m) const {
        Eigen::VectorXd f(conds.size());
        size_t i = 0;
        while (i < conds.size()) {
            size_t j = i;
            int max_order = 0;
            while (j < conds.size() && conds[j].lambda == conds[i].lambda)
                max_order = std::max(max_order, conds[j++].order);
            std::vector<double> jet = char_poly_jet(m, graph, conds[i].lambda, max_order);
            for (size_t t = i; t < j; ++t) f(t) = jet[conds[t].order] / conds[t].scale;
            i = j;
        }
        return f;
    }

    // Jet columns for a diagonal or edge variable: derivatives of the
    // conditions with the corresponding vertices deleted.
    void fill_analytic_column(Eigen::MatrixXd& jac, int col, const Eigen::MatrixXd& m,
                              const std::vector<char>& removed, double factor) const {
        size_t i = 0;
        while (i < conds.size()) {
            size_t j = i;
            int max_order = 0;
            while (j < conds.size() && conds[j].lambda == conds[i].lambda)
                max_order = std::max(max_order, conds[j++].order);
            std::vector<double> jet = char_poly_jet(m, graph, conds[i].lambda, max_order, removed);
            for (size_t t = i; t < j; ++t) jac(t, col) = factor * jet[conds[t].order] / conds[t].scale;
            i = j;
        }
    }

    Eigen::MatrixXd jacobian(const Eigen::MatrixXd& m) {
        Eigen::MatrixXd jac(conds.size(), vars.size());
        for (size_t c = 0; c < vars.size(); ++c) {
            const VarRef& v = vars[c];
            std::vector<char> removed(graph.n, 0);
            if (v.kind == VarRef::A0) {
                removed[lay.centers[v.star]] = 1;
                fill_analytic_column(jac, static_cast<int>(c), m, removed, -1.0);
            } else if (v.kind == VarRef::Edge) {
                int center = lay.centers[v.star];
                int root = lay.arms[v.star][v.arm][0];
                removed[center] = removed[root] = 1;
                fill_analytic_column(jac, static_cast<int>(c), m, removed,
                                     -2.0 * stars[v.star].edges[v.arm]);
            } else if (v.kind == VarRef::PathDiag) {
                removed[lay.path_vertices[v.star][v.index]] = 1;
                fill_analytic_column(jac, static_cast<int>(c), m, removed, -1.0);
            } else {
                double h = eta_fd_step(stars[v.star], {VarRef::Eta, 0, v.arm, v.index});
                TreeSolver plus = *this, minus = *this;
                apply_var(plus.stars[v.star], {VarRef::Eta, 0, v.arm, v.index}, h);
                apply_var(minus.stars[v.star], {VarRef::Eta, 0, v.arm, v.index}, -h);
                Eigen::VectorXd fp = plus.conditions(plus.assemble());
                Eigen::VectorXd fm = minus.conditions(minus.assemble());
                jac.col(c) = (fp - fm) / (2 * h);
            }
        }
        return jac;
    }

    bool apply_step(const Eigen::VectorXd& step, double alpha) {
        for (size_t c = 0; c < vars.size(); ++c) {
            const VarRef& v = vars[c];
            try {
                if (v.kind == VarRef::PathDiag)
                    path_vals[v.star][v.index] += alpha * step(c);
                else
                    apply_var(stars[v.star], {v.kind, 0, v.arm, v.index}, alpha * step(c));
            } catch (const std::invalid_argument&) {
                return false;
            }
        }
        return true;
    }
};

}  // namespace

RealizationResult realize(const LinearTreeSpec& tree, const SpectrumTarget& target,
                          std::uint64_t seed) {
    tree.validate();
    target.validate();
    if (!(target.table.tree == tree))
        throw std::invalid_argument("certificate table belongs to a different tree spec");

    Rng rng(seed);
    const LspTable& table = target.table;
    const int k = static_cast<int>(tree.stars.size());

    // Numeric value per table column: targets at the positive columns, gap
    // fillers at the zero-sum ones.
    std::vector<int> sums = table.sums();
    std::vector<double> col_values(table.columns, 0.0);
    {
        size_t next = 0;
        std::vector<int> pending;
        double prev = 0;
        bool have_prev = false;
        for (int c = 0; c < table.columns; ++c) {
            if (sums[c] > 0) {
                double v = target.eigenvalues[next++];
                for (size_t t = 0; t < pending.size(); ++t) {
                    if (!have_prev) throw internal_error("leading zero column survived validation");
                    col_values[pending[t]] =
                        prev + (v - prev) * (t + 1.0) / (pending.size() + 1.0);
                }
                pending.clear();
                col_values[c] = v;
                prev = v;
                have_prev = true;
            } else {
                pending.push_back(c);
            }
        }
        if (!pending.empty()) throw internal_error("trailing zero column survived validation");
    }

    RealizationResult result;
    TreeSolver solver;
    solver.spec = tree;
    solver.graph = expand(tree);
    solver.lay = layout(tree);

    // Star states from their table rows.
    std::vector<double> avoid = col_values;
    for (int i = 0; i < k; ++i) {
        UpwardList row;
        std::vector<double> values;
        for (int c = 0; c < table.columns; ++c) {
            const TableCell& cell = table.rows[table.star_row(i)][c];
            if (!cell.from_list) continue;
            row.entries.push_back({cell.value, cell.upward});
            values.push_back(col_values[c]);
        }
        StarState s = build_star_state(tree.stars[i], row, values, rng, avoid);
        for (size_t slot = 1; slot < s.row.values.size(); slot += 2)
            avoid.push_back(s.row.values[slot]);
        StarRealization diag = finish_star(s);
        result.min_jacobian_sv = std::min(result.min_jacobian_sv, diag.jacobian_min_sv);
        result.max_jacobian_fd_error =
            std::max(result.max_jacobian_fd_error, diag.jacobian_fd_error);
        result.iterations += diag.iterations;
        // finish_star polished the state copy inside; rebuild from the
        // realization so the solver starts at the polished point.
        s.a0 = diag.a0;
        s.edges = diag.center_edges;
        s.eta = diag.arm_eta;
        for (size_t j = 0; j < s.gamma.size(); ++j) s.rebuild_arm(static_cast<int>(j));
        solver.stars.push_back(std::move(s));
    }

    // Path diagonal values in column order.
    solver.path_vals.assign(std::max(0, k - 1), {});
    for (int j = 0; j + 1 < k; ++j) {
        for (int c = 0; c < table.columns; ++c)
            if (table.rows[table.path_row(j)][c].value == 1)
                solver.path_vals[j].push_back(col_values[c]);
        if (static_cast<int>(solver.path_vals[j].size()) != tree.paths[j])
            throw internal_error("path row ones mismatch");
    }

    // Conditions per column: the jet orders locked..locked+count-1.
    for (int c = 0; c < table.columns; ++c) {
        int locked = 0, count = 0;
        for (const auto& row : table.rows) {
            const TableCell& cell = row[c];
            if (cell.upward)
                locked += cell.value;
            else if (cell.value >= 1)
                ++count;
        }
        for (int t = 0; t < count; ++t)
            solver.conds.push_back({col_values[c], locked, locked + t, 1.0});
    }

    // Variables: per-star implicit sets plus every path diagonal.
    for (int i = 0; i < k; ++i)
        for (VarRef v : star_variables(solver.stars[i], i)) solver.vars.push_back(v);
    for (int j = 0; j + 1 < k; ++j)
        for (int t = 0; t < tree.paths[j]; ++t)
            solver.vars.push_back({VarRef::PathDiag, j, 0, t});
    if (solver.vars.size() != solver.conds.size())
        throw internal_error("condition/variable count mismatch: " +
                             std::to_string(solver.conds.size()) + " vs " +
                             std::to_string(solver.vars.size()));

    // Condition scales from the unperturbed direct sum.
    solver.eps = 0;
    {
        Eigen::MatrixXd m0 = solver.assemble();
        size_t i = 0;
        while (i < solver.conds.size()) {
            size_t j = i;
            int max_order = 0;
            double lambda = solver.conds[i].lambda;
            int full = 0;
            while (j < solver.conds.size() && solver.conds[j].lambda == lambda) {
                max_order = std::max(max_order, solver.conds[j].order);
                full = std::max(full, solver.conds[j].order + 1);
                ++j;
            }
            std::vector<double> jet = char_poly_jet(m0, solver.graph, lambda, full);
            double scale = std::abs(jet[full]);
            if (scale < 1e-280) scale = 1.0;
            for (size_t t = i; t < j; ++t) solver.conds[t].scale = scale;
            i = j;
        }
    }

    std::vector<double> want = target.full_spectrum();
    double spread = std::max(1.0, col_values.back() - col_values.front());
    double eps0 = 1e-2 * spread;
    const double eps_floor = 1e-8;
    std::string last_error = "no attempt";
    TreeSolver base = solver;

    for (double eps = eps0; eps >= eps_floor; eps *= 0.5) {
        solver = base;
        solver.eps = eps;
        bool converged = false;
        for (int iter = 0; iter < 100; ++iter) {
            Eigen::MatrixXd m = solver.assemble();
            Eigen::VectorXd f = solver.conditions(m);
            ++result.iterations;
            if (f.lpNorm<Eigen::Infinity>() <= 1e-11) {
                converged = true;
                break;
            }
            Eigen::MatrixXd jac = solver.jacobian(m);
            Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-f);
            bool moved = false;
            double alpha = 1.0;
            for (int half = 0; half < 30 && !moved; ++half, alpha *= 0.5) {
                TreeSolver trial = solver;
                if (!trial.apply_step(step, alpha)) continue;
                Eigen::VectorXd f2 = trial.conditions(trial.assemble());
                if (f2.lpNorm<Eigen::Infinity>() < f.lpNorm<Eigen::Infinity>()) {
                    solver = std::move(trial);
                    moved = true;
                }
            }
            if (!moved) break;
        }
        if (!converged) {
            last_error = "Newton stalled at eps " + std::to_string(eps);
            continue;
        }
        Eigen::MatrixXd m = solver.assemble();
        double residual = spectral_residual(m, want);
        if (residual > 1e-8) {
            last_error = "spectral residual " + std::to_string(residual) + " at eps " +
                         std::to_string(eps);
            continue;
        }
        VerifyResult check = verify_realization(m, solver.graph, target, 1e-6);
        if (!check.pass) {
            last_error = "verification failed: " + check.reason;
            continue;
        }
        result.matrix = m;
        result.residual = residual;
        result.min_edge = check.min_edge;
        return result;
    }
    throw std::runtime_error("realization failed (" + last_error + ")");
}

RealizationResult realize_list(const LinearTreeSpec& tree, const OrderedMultList& list,
                               const std::vector<double>* eigenvalues, std::uint64_t seed) {
    DecideResult dec = decide_ordered(tree, list);
    if (!dec.achievable)
        throw std::invalid_argument("multiplicity list is not achievable for this tree");
    SpectrumTarget target;
    target.multiplicities = list;
    target.table = std::move(*dec.certificate);
    if (eigenvalues) {
        target.eigenvalues = *eigenvalues;
    } else {
        target.eigenvalues.resize(list.size());
        for (size_t i = 0; i < list.size(); ++i) target.eigenvalues[i] = 1.0 + i;
    }
    return realize(tree, target, seed);
}

}  // namespace lintrees
