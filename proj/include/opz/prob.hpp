#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <thread>
#include <vector>

#include "opz/errors.hpp"
#include "opz/model.hpp"
#include "opz/process.hpp"

namespace opz {

// A value of the dominance probability prob(z) = P(sample >= z): the
// probability that every pair of z is established no later than z asks.
struct ProbEstimate {
    double value = 0.0;
    double se = 0.0;  // standard error; 0 when exact
    std::size_t n = 0;
    bool exact = true;
};

using ProbFn = std::function<ProbEstimate(const OrderProcess&)>;

namespace detail {

// Exact completion probability with no base relation: the sample dominates z
// iff every job m in z's support finishes by the earliest deadline among z's
// pairs touching m; the jobs are independent, so the answer is a product of
// cdf values.  The factors are multiplied in sorted order so the result is
// bit-identical across relabelings of z.
inline double exact_completion_full(const MeasureModel& m, const OrderProcess& z) {
    std::map<Elem, Time> deadline;
    for (const auto& [p, t] : z.entries()) {
        auto upd = [&](Elem e) {
            auto [it, inserted] = deadline.try_emplace(e, t);
            if (!inserted) it->second = std::min(it->second, t);
        };
        upd(p.first);
        upd(p.second);
    }
    std::vector<double> factors;
    factors.reserve(deadline.size());
    for (auto [e, t] : deadline) {
        if (e >= m.window) throw SupportOutOfWindow(e, m.window);
        factors.push_back(m.dist.cdf(t));
    }
    std::sort(factors.begin(), factors.end());
    double prod = 1.0;
    for (double f : factors) prod *= f;
    return prod;
}

}  // namespace detail

// Closed-form dominance probability.  Available for dirac, completion with no
// base relation, and mixtures of such; other kinds throw NoClosedForm.
inline ProbEstimate exact_prob(const MeasureModel& m, const OrderProcess& z) {
    switch (m.kind) {
        case ModelKind::dirac:
            return {dominates(m.fixed, z) ? 1.0 : 0.0, 0.0, 0, true};
        case ModelKind::completion:
            if (m.base) throw NoClosedForm("completion with a base relation has no closed form");
            return {detail::exact_completion_full(m, z), 0.0, 0, true};
        case ModelKind::edge_minimax:
            throw NoClosedForm("edge_minimax has no closed form");
        case ModelKind::mixture: {
            double value = 0;
            for (std::size_t i = 0; i < m.parts.size(); ++i)
                value += m.weights[i] * exact_prob(m.parts[i], z).value;
            return {value, 0.0, 0, true};
        }
    }
    throw InvalidModel("unknown model kind");
}

// Monte Carlo dominance probability from n seeded draws.  Sample i uses the
// seed derived from (seed, i), so the result is independent of how the loop
// is chunked across threads; the same (model, n, seed) always replays the
// same sample stream.
inline ProbEstimate estimate_prob(const MeasureModel& m, const OrderProcess& z,
                                  std::size_t n, std::uint64_t seed) {
    if (n < 1) throw PreconditionViolation("estimate_prob requires n >= 1");
    auto count_range = [&](std::size_t lo, std::size_t hi) {
        std::size_t hits = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            Rng rng(derive_seed(seed, i));
            if (dominates(sample_with(m, rng), z)) ++hits;
        }
        return hits;
    };

    std::size_t hits = 0;
    unsigned workers = std::thread::hardware_concurrency();
    workers = std::min(workers ? workers : 1u, 8u);
    if (n < 8192 || workers == 1) {
        hits = count_range(0, n);
    } else {
        std::vector<std::future<std::size_t>> futs;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t lo = 0; lo < n; lo += chunk)
            futs.push_back(std::async(std::launch::async, count_range, lo,
                                      std::min(lo + chunk, n)));
        for (auto& f : futs) hits += f.get();
    }
    const double value = static_cast<double>(hits) / static_cast<double>(n);
    const double se = std::sqrt(value * (1.0 - value) / static_cast<double>(n));
    return {value, se, n, false};
}

inline ProbFn exact_evaluator(MeasureModel m) {
    return [m = std::move(m)](const OrderProcess& z) { return exact_prob(m, z); };
}

// All evaluations replay one shared sample stream, i.e. the returned function
// is the exact dominance probability of the empirical measure of that stream.
inline ProbFn mc_evaluator(MeasureModel m, std::size_t n, std::uint64_t seed) {
    return [m = std::move(m), n, seed](const OrderProcess& z) {
        return estimate_prob(m, z, n, seed);
    };
}

}  // namespace opz
