#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "opz/errors.hpp"
#include "opz/model.hpp"
#include "opz/permutation.hpp"
#include "opz/prob.hpp"
#include "opz/process.hpp"

namespace opz {

namespace detail {

// Smallest eigenvalue of a symmetric matrix (row-major) by cyclic Jacobi
// rotations.  Matrices here are tiny (checker cap is 8x8), so no pivoting or
// deflation is needed.
inline double min_eigenvalue_symmetric(std::vector<double> a, std::size_t n) {
    if (n == 0) return 0.0;
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
        if (off < 1e-28) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double app = at(p, p), aqq = at(q, q);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = at(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = at(p, k) = c * akp - s * akq;
                    at(k, q) = at(q, k) = s * akp + c * akq;
                }
            }
    }
    double mn = at(0, 0);
    for (std::size_t i = 1; i < n; ++i) mn = std::min(mn, at(i, i));
    return mn;
}

inline double combined_se(const ProbEstimate& a, const ProbEstimate& b) {
    return std::sqrt(a.se * a.se + b.se * b.se);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Monotonicity: z1 <= z2 forces prob(z1) >= prob(z2).

struct MonotoneReport {
    struct Case {
        double value_below = 0, value_above = 0, tol = 0;
        bool pass = true;
    };
    std::vector<Case> cases;
    bool pass = true;
};

inline MonotoneReport check_monotone(const ProbFn& prob,
                                     const std::vector<std::pair<OrderProcess, OrderProcess>>& ordered) {
    MonotoneReport report;
    for (const auto& [lo, hi] : ordered) {
        if (!leq(lo, hi))
            throw PreconditionViolation("check_monotone: pair is not ordered");
        const ProbEstimate a = prob(lo), b = prob(hi);
        const double tol = (a.exact && b.exact) ? 0.0 : 4.0 * detail::combined_se(a, b);
        MonotoneReport::Case c{a.value, b.value, tol, a.value >= b.value - tol};
        report.pass = report.pass && c.pass;
        report.cases.push_back(c);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Positive definiteness of the kernel (z_i, z_k) -> prob(z_i v z_k).

struct PsdReport {
    std::size_t size = 0;
    std::vector<double> gram;  // row-major, size x size
    double min_eigenvalue = 0;
    double tol = 0;
    bool symmetric = true;
    bool pass = true;
};

inline PsdReport check_positive_definite(const ProbFn& prob,
                                         const std::vector<OrderProcess>& zs,
                                         double tol = 1e-9,
                                         std::size_t max_size = 8) {
    const std::size_t m = zs.size();
    if (m < 1 || m > max_size)
        throw PreconditionViolation("check_positive_definite: selection size out of range");
    PsdReport report;
    report.size = m;
    report.gram.assign(m * m, 0.0);
    double max_se = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            const ProbEstimate e = prob(join(zs[i], zs[k]));
            report.gram[i * m + k] = e.value;
            max_se = std::max(max_se, e.se);
            if (!e.exact) report.tol = std::max(tol, 6.0 * max_se * static_cast<double>(m));
        }
    if (report.tol == 0) report.tol = tol;
    std::vector<double> sym(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            report.symmetric = report.symmetric &&
                               report.gram[i * m + k] == report.gram[k * m + i];
            sym[i * m + k] = 0.5 * (report.gram[i * m + k] + report.gram[k * m + i]);
        }
    report.min_eigenvalue = detail::min_eigenvalue_symmetric(std::move(sym), m);
    report.pass = report.symmetric && report.min_eigenvalue >= -report.tol;
    return report;
}

// ---------------------------------------------------------------------------
// Product rule on disjoint supports; failure certifies a non-extreme model.

struct IndependenceReport {
    struct Case {
        double joint = 0, left = 0, right = 0, gap = 0, tol = 0;
        bool pass = true;
    };
    std::vector<Case> cases;
    bool pass = true;
};

inline IndependenceReport check_independent(
    const ProbFn& prob,
    const std::vector<std::pair<OrderProcess, OrderProcess>>& disjoint_pairs) {
    IndependenceReport report;
    for (const auto& [z1, z2] : disjoint_pairs) {
        const auto s1 = z1.support(), s2 = z2.support();
        std::vector<Elem> common;
        std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                              std::back_inserter(common));
        if (!common.empty())
            throw PreconditionViolation("check_independent: supports overlap");
        const ProbEstimate joint = prob(join(z1, z2));
        const ProbEstimate a = prob(z1), b = prob(z2);
        IndependenceReport::Case c;
        c.joint = joint.value;
        c.left = a.value;
        c.right = b.value;
        c.gap = std::abs(joint.value - a.value * b.value);
        if (joint.exact && a.exact && b.exact) {
            c.tol = 0.0;
        } else {
            c.tol = 4.0 * std::sqrt(joint.se * joint.se + b.value * b.value * a.se * a.se +
                                    a.value * a.value * b.se * b.se);
        }
        c.pass = c.gap <= c.tol;
        report.pass = report.pass && c.pass;
        report.cases.push_back(c);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Continuity from below along delayed copies: prob(delay(z,eps)) must fall
// toward prob(z) as eps decreases, and the final gap must respect `bound`.

struct ContinuityReport {
    std::vector<double> eps;
    std::vector<double> values;
    double limit_value = 0;
    double final_gap = 0;
    double bound = 0;
    bool monotone = true;
    bool pass = true;
};

inline ContinuityReport check_below_continuity(const ProbFn& prob, const OrderProcess& z,
                                               const std::vector<double>& eps_seq,
                                               double bound) {
    if (eps_seq.empty()) throw PreconditionViolation("check_below_continuity: empty sequence");
    for (std::size_t i = 0; i < eps_seq.size(); ++i)
        if (!(eps_seq[i] > 0) || (i > 0 && !(eps_seq[i] < eps_seq[i - 1])))
            throw PreconditionViolation(
                "check_below_continuity: eps must be strictly decreasing and positive");
    ContinuityReport report;
    report.eps = eps_seq;
    report.bound = bound;
    std::vector<ProbEstimate> es;
    for (double e : eps_seq) {
        es.push_back(prob(delay(z, e)));
        report.values.push_back(es.back().value);
    }
    const ProbEstimate lim = prob(z);
    report.limit_value = lim.value;
    for (std::size_t i = 1; i < es.size(); ++i) {
        const double slack =
            (es[i - 1].exact && es[i].exact) ? 0.0 : 4.0 * detail::combined_se(es[i - 1], es[i]);
        if (es[i].value > es[i - 1].value + slack) report.monotone = false;
    }
    const double mc_slack =
        (es.back().exact && lim.exact) ? 0.0 : 4.0 * detail::combined_se(es.back(), lim);
    report.final_gap = std::abs(es.back().value - lim.value);
    report.pass = report.monotone && report.final_gap <= bound + mc_slack;
    return report;
}

// Conservative bound on prob(delay(z,eps)) - prob(z) for the built-in models.
inline double continuity_bound(const MeasureModel& m, const OrderProcess& z, double eps) {
    switch (m.kind) {
        case ModelKind::dirac:
            return 0.0;
        case ModelKind::completion:
            if (!m.base)
                return static_cast<double>(z.support().size()) * eps * m.dist.density_bound();
            return 2.0 * static_cast<double>(z.pair_count()) * eps * m.dist.density_bound();
        case ModelKind::edge_minimax:
            return static_cast<double>(z.pair_count()) *
                   static_cast<double>(m.window) * static_cast<double>(m.window - 1) *
                   m.dist.rate * eps;
        case ModelKind::mixture: {
            double b = 0;
            for (std::size_t i = 0; i < m.parts.size(); ++i)
                b += m.weights[i] * continuity_bound(m.parts[i], z, eps);
            return b;
        }
    }
    throw InvalidModel("unknown model kind");
}

// ---------------------------------------------------------------------------
// Convergence diagnostic: sup over a test grid of |prob_n - prob_limit| must
// shrink into `tol` and be nonincreasing up to tolerance.

struct ConvergenceReport {
    std::vector<double> sup_gaps;
    std::vector<double> slacks;  // MC allowance per step; zero on exact paths
    double tol = 0;
    bool within = true;
    bool monotone = true;
    bool pass = true;
};

inline ConvergenceReport check_convergence(const std::vector<ProbFn>& steps,
                                           const ProbFn& limit,
                                           const std::vector<OrderProcess>& test_zs,
                                           double tol) {
    if (steps.empty() || test_zs.empty())
        throw PreconditionViolation("check_convergence: needs steps and test processes");
    ConvergenceReport report;
    report.tol = tol;
    for (const auto& step : steps) {
        double sup = 0, slack = 0;
        for (const auto& z : test_zs) {
            const ProbEstimate a = step(z), b = limit(z);
            sup = std::max(sup, std::abs(a.value - b.value));
            if (!(a.exact && b.exact))
                slack = std::max(slack, 4.0 * detail::combined_se(a, b));
        }
        report.sup_gaps.push_back(sup);
        report.slacks.push_back(slack);
    }
    for (std::size_t i = 1; i < report.sup_gaps.size(); ++i)
        if (report.sup_gaps[i] >
            report.sup_gaps[i - 1] + tol + report.slacks[i] + report.slacks[i - 1])
            report.monotone = false;
    report.within = report.sup_gaps.back() <= tol + report.slacks.back();
    report.pass = report.within && report.monotone;
    return report;
}

// ---------------------------------------------------------------------------
// Label invariance: prob must agree on every sample and its relabelings.
// This is the operational content of exchangeability: the probability depends
// on a process only through its relabeling class.

struct InvarianceReport {
    struct Case {
        std::size_t sample_index = 0, perm_index = 0;
        double base = 0, relabeled = 0, gap = 0, tol = 0;
        bool pass = true;
    };
    std::vector<Case> cases;
    bool pass = true;
};

inline InvarianceReport check_label_invariance(const ProbFn& prob,
                                               const std::vector<OrderProcess>& samples,
                                               const std::vector<Permutation>& perms) {
    InvarianceReport report;
    for (std::size_t si = 0; si < samples.size(); ++si) {
        const ProbEstimate base = prob(samples[si]);
        for (std::size_t pi = 0; pi < perms.size(); ++pi) {
            const ProbEstimate moved = prob(perms[pi].apply(samples[si]));
            InvarianceReport::Case c;
            c.sample_index = si;
            c.perm_index = pi;
            c.base = base.value;
            c.relabeled = moved.value;
            c.gap = std::abs(base.value - moved.value);
            c.tol = (base.exact && moved.exact) ? 0.0 : 4.0 * detail::combined_se(base, moved);
            c.pass = c.gap <= c.tol;
            report.pass = report.pass && c.pass;
            report.cases.push_back(c);
        }
    }
    return report;
}

}  // namespace opz
