#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opz/errors.hpp"
#include "opz/permutation.hpp"
#include "opz/process.hpp"
#include "opz/random.hpp"
#include "opz/relation.hpp"

namespace opz {

enum class ModelKind { dirac, completion, edge_minimax, mixture };
enum class DistFamily { uniform, exponential };

// Duration / raw-time distribution on [0, inf).
struct Distribution {
    DistFamily family = DistFamily::uniform;
    double a = 0.0, b = 1.0;  // uniform support
    double rate = 1.0;        // exponential

    double cdf(double x) const {
        if (family == DistFamily::uniform) {
            if (x <= a) return 0.0;
            if (x >= b) return 1.0;
            return (x - a) / (b - a);
        }
        return x <= 0 ? 0.0 : 1.0 - std::exp(-rate * x);
    }

    double sample(Rng& rng) const {
        return family == DistFamily::uniform ? rng.uniform(a, b) : rng.exponential(rate);
    }

    // Lipschitz constant of the cdf.
    double density_bound() const {
        return family == DistFamily::uniform ? 1.0 / (b - a) : rate;
    }

    void validate() const {
        if (family == DistFamily::uniform) {
            if (!(0 <= a && a < b && std::isfinite(b)))
                throw InvalidModel("uniform distribution needs 0 <= a < b");
        } else if (!(rate > 0 && std::isfinite(rate))) {
            throw InvalidModel("exponential distribution needs rate > 0");
        }
    }
};

// A sampling model for order processes on the window {0,...,window-1}.
//
//   dirac        point mass at a fixed process.
//   completion   jobs with i.i.d. durations; with no base relation every job
//                runs independently and each ordered pair (j,k) switches at
//                max(C_j, C_k); with a precedence base, a job starts when all
//                its (transitively) required predecessors finish, and only
//                the base pairs are recorded.  `permute` relabels the window
//                uniformly at random per sample.
//   edge_minimax i.i.d. exponential raw times on all ordered window pairs,
//                closed under minimax paths.
//   mixture      finite convex combination of models.
struct MeasureModel {
    ModelKind kind = ModelKind::dirac;
    unsigned window = 1;

    Distribution dist;                  // completion, edge_minimax
    std::optional<PartialOrder> base;   // completion: closed precedence relation
    bool permute = false;               // completion
    OrderProcess fixed;                 // dirac
    std::vector<double> weights;        // mixture
    std::vector<MeasureModel> parts;    // mixture

    static MeasureModel dirac_at(OrderProcess z) {
        MeasureModel m;
        m.kind = ModelKind::dirac;
        m.fixed = std::move(z);
        const auto sup = m.fixed.support();
        m.window = sup.empty() ? 1 : sup.back() + 1;
        return m;
    }

    static MeasureModel completion_full(unsigned window, Distribution dist) {
        MeasureModel m;
        m.kind = ModelKind::completion;
        m.window = window;
        m.dist = dist;
        return m;
    }

    static MeasureModel completion_dag(unsigned window, Distribution dist,
                                       PartialOrder closed_base, bool permute = false) {
        MeasureModel m;
        m.kind = ModelKind::completion;
        m.window = window;
        m.dist = dist;
        m.base = std::move(closed_base);
        m.permute = permute;
        return m;
    }

    static MeasureModel edge_minimax_model(unsigned window, double rate) {
        MeasureModel m;
        m.kind = ModelKind::edge_minimax;
        m.window = window;
        m.dist = Distribution{DistFamily::exponential, 0, 1, rate};
        return m;
    }

    static MeasureModel mixture_of(std::vector<double> weights, std::vector<MeasureModel> parts) {
        MeasureModel m;
        m.kind = ModelKind::mixture;
        m.weights = std::move(weights);
        m.parts = std::move(parts);
        unsigned w = 1;
        for (const auto& p : m.parts) w = std::max(w, p.effective_window());
        m.window = w;
        return m;
    }

    // Mixtures report the widest component window.
    unsigned effective_window() const {
        if (kind != ModelKind::mixture) return window;
        unsigned w = 1;
        for (const auto& p : parts) w = std::max(w, p.effective_window());
        return w;
    }

    bool exact_available() const {
        switch (kind) {
            case ModelKind::dirac: return true;
            case ModelKind::completion: return !base.has_value();
            case ModelKind::edge_minimax: return false;
            case ModelKind::mixture:
                return std::all_of(parts.begin(), parts.end(),
                                   [](const MeasureModel& p) { return p.exact_available(); });
        }
        return false;
    }

    void validate() const {
        if (kind != ModelKind::mixture && window < 1)
            throw InvalidModel("window must be at least 1");
        switch (kind) {
            case ModelKind::dirac: {
                const auto sup = fixed.support();
                if (!sup.empty() && sup.back() >= window)
                    throw InvalidModel("dirac process exceeds its window");
                break;
            }
            case ModelKind::completion: {
                dist.validate();
                if (base) {
                    if (!is_acyclic(*base))
                        throw InvalidModel("completion base relation contains a cycle");
                    for (Elem e : opz::support(*base))
                        if (e >= window)
                            throw InvalidModel("completion base relation exceeds the window");
                }
                break;
            }
            case ModelKind::edge_minimax: {
                if (dist.family != DistFamily::exponential)
                    throw InvalidModel("edge_minimax requires an exponential distribution");
                dist.validate();
                if (base || permute)
                    throw InvalidModel("edge_minimax takes no base relation or permute flag");
                break;
            }
            case ModelKind::mixture: {
                if (parts.empty()) throw InvalidModel("mixture needs at least one component");
                if (weights.size() != parts.size())
                    throw InvalidModel("mixture weights and components differ in number");
                double sum = 0;
                for (double w : weights) {
                    if (!(w > 0)) throw InvalidModel("mixture weights must be positive");
                    sum += w;
                }
                if (std::abs(sum - 1.0) > 1e-12)
                    throw InvalidModel("mixture weights must sum to 1");
                for (const auto& p : parts) p.validate();
                break;
            }
        }
    }
};

namespace detail {

inline OrderProcess sample_completion(const MeasureModel& m, Rng& rng) {
    const unsigned n = m.window;
    std::vector<double> completion(n);
    for (unsigned i = 0; i < n; ++i) completion[i] = m.dist.sample(rng);

    std::vector<OrderProcess::Entry> entries;
    if (!m.base) {
        entries.reserve(std::size_t(n) * (n - 1));
        for (Elem j = 0; j < n; ++j)
            for (Elem k = 0; k < n; ++k)
                if (j != k)
                    entries.push_back({{j, k}, std::max(completion[j], completion[k])});
    } else {
        // start = max over closed predecessors' completion times
        std::vector<std::vector<Elem>> preds(n);
        for (auto [a, b] : m.base->pairs()) preds[b].push_back(a);
        std::vector<char> done(n, 0);
        // base is acyclic, so a fixed-point sweep in dependency order works;
        // recursion depth is bounded by the window
        auto finish = [&](auto&& self, Elem v) -> double {
            if (done[v]) return completion[v];
            done[v] = 1;
            double start = 0;
            for (Elem p : preds[v]) start = std::max(start, self(self, p));
            completion[v] += start;
            return completion[v];
        };
        for (Elem v = 0; v < n; ++v) finish(finish, v);
        for (auto [j, k] : m.base->pairs())
            entries.push_back({{j, k}, std::max(completion[j], completion[k])});
        std::sort(entries.begin(), entries.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    OrderProcess z = OrderProcess::trusted(std::move(entries));
    if (m.permute) z = Permutation::shuffled(n, rng).apply(z);
    return z;
}

inline OrderProcess sample_edge_minimax(const MeasureModel& m, Rng& rng) {
    std::vector<OrderProcess::Entry> raw;
    raw.reserve(std::size_t(m.window) * (m.window - 1));
    for (Elem j = 0; j < m.window; ++j)
        for (Elem k = 0; k < m.window; ++k)
            if (j != k) raw.push_back({{j, k}, rng.exponential(m.dist.rate)});
    return minimax_closure(raw);
}

}  // namespace detail

// Draws one process; a pure function of (model, rng state).
inline OrderProcess sample_with(const MeasureModel& m, Rng& rng) {
    switch (m.kind) {
        case ModelKind::dirac: return m.fixed;
        case ModelKind::completion: return detail::sample_completion(m, rng);
        case ModelKind::edge_minimax: return detail::sample_edge_minimax(m, rng);
        case ModelKind::mixture: {
            const double u = rng.uniform01();
            double acc = 0;
            for (std::size_t i = 0; i < m.parts.size(); ++i) {
                acc += m.weights[i];
                if (u < acc || i + 1 == m.parts.size()) return sample_with(m.parts[i], rng);
            }
            return sample_with(m.parts.back(), rng);
        }
    }
    throw InvalidModel("unknown model kind");
}

inline OrderProcess sample(const MeasureModel& m, std::uint64_t seed) {
    Rng rng(seed);
    return sample_with(m, rng);
}

}  // namespace opz
