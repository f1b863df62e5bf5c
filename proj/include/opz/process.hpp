#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "opz/errors.hpp"
#include "opz/relation.hpp"

namespace opz {

using Time = double;

// Switching time of a pair that never enters the relation.
inline constexpr Time never = std::numeric_limits<Time>::infinity();

struct TriangleWitness {
    Elem j, k, l;
};

// A finite-support order process in the switching-time encoding: a finite map
// pair -> time satisfying the max-triangle property
//
//     time(j,l) <= max(time(j,k), time(k,l))   for pairwise distinct j,k,l,
//
// absent pairs counting as `never`.  The relation at instant t holds exactly
// the pairs with switching time strictly below t, which makes the encoded
// family of relations left-continuous, increasing, and equal to the diagonal
// at t = 0.  Stored times are finite and nonnegative; a switching time of 0
// means the pair is present for every t > 0.
class OrderProcess {
public:
    using Entry = std::pair<Pair, Time>;

    OrderProcess() = default;  // the constant-diagonal process

    // Validating constructors: reject malformed keys and times, then raise
    // ConstraintViolation at the first max-triangle failure.
    static OrderProcess checked(std::vector<Entry> entries);
    static OrderProcess checked(const std::map<Pair, Time>& times);

    // For callers whose construction guarantees the invariant (joins,
    // closures, samplers).  Entries must be sorted by pair and deduplicated;
    // fully re-checked in debug builds.
    static OrderProcess trusted(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const& { return entries_; }
    // Rvalues hand the entries over by value so iterators never dangle.
    std::vector<Entry> entries() && { return std::move(entries_); }
    std::size_t pair_count() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    bool has(Pair p) const { return find(p) != nullptr; }
    Time time_of(Pair p) const {
        const Time* t = find(p);
        return t ? *t : never;
    }

    // The relation at instant t (strict threshold; t <= 0 gives the diagonal).
    PartialOrder at(Time t) const {
        std::set<Pair> pairs;
        for (const auto& [p, s] : entries_)
            if (s < t) pairs.insert(p);
        return PartialOrder::from_closed(std::move(pairs));
    }

    // Elements incident to any present pair, sorted.
    std::vector<Elem> support() const {
        std::set<Elem> s;
        for (const auto& [p, t] : entries_) {
            s.insert(p.first);
            s.insert(p.second);
        }
        return {s.begin(), s.end()};
    }

    // Sorted, deduplicated switching times.
    std::vector<Time> switching_times() const {
        std::vector<Time> ts;
        ts.reserve(entries_.size());
        for (const auto& [p, t] : entries_) ts.push_back(t);
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        return ts;
    }

    bool operator==(const OrderProcess&) const = default;

private:
    const Time* find(Pair p) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                                   [](const Entry& e, const Pair& q) { return e.first < q; });
        if (it != entries_.end() && it->first == p) return &it->second;
        return nullptr;
    }

    std::vector<Entry> entries_;  // sorted by pair; times finite, >= 0
};

// First max-triangle failure in iteration order, if any.  Entries must be
// sorted by pair.
inline std::optional<TriangleWitness> find_violation(const std::vector<OrderProcess::Entry>& entries) {
    auto lookup = [&](Pair p) -> Time {
        auto it = std::lower_bound(entries.begin(), entries.end(), p,
                                   [](const OrderProcess::Entry& e, const Pair& q) { return e.first < q; });
        if (it != entries.end() && it->first == p) return it->second;
        return never;
    };
    auto group_begin = [&](Elem src) {
        return std::lower_bound(entries.begin(), entries.end(), src,
                                [](const OrderProcess::Entry& e, Elem s) { return e.first.first < s; });
    };
    for (const auto& [p, t1] : entries) {
        auto [j, k] = p;
        for (auto it = group_begin(k); it != entries.end() && it->first.first == k; ++it) {
            Elem l = it->first.second;
            if (l == j) continue;
            if (lookup({j, l}) > std::max(t1, it->second)) return TriangleWitness{j, k, l};
        }
    }
    return std::nullopt;
}

inline OrderProcess OrderProcess::checked(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& [p, t] = entries[i];
        if (p.first == p.second)
            throw Error("diagonal pair (" + std::to_string(p.first) + "," +
                        std::to_string(p.second) + ") may not carry a switching time");
        if (i > 0 && entries[i - 1].first == p)
            throw Error("duplicate pair (" + std::to_string(p.first) + "," +
                        std::to_string(p.second) + ")");
        if (!std::isfinite(t) || t < 0)
            throw Error("switching time must be finite and nonnegative");
    }
    if (auto w = find_violation(entries)) throw ConstraintViolation(w->j, w->k, w->l);
    OrderProcess z;
    z.entries_ = std::move(entries);
    return z;
}

inline OrderProcess OrderProcess::checked(const std::map<Pair, Time>& times) {
    return checked(std::vector<Entry>(times.begin(), times.end()));
}

inline OrderProcess OrderProcess::trusted(std::vector<Entry> entries) {
    assert(std::is_sorted(entries.begin(), entries.end(),
                          [](const Entry& a, const Entry& b) { return a.first < b.first; }));
    assert(!find_violation(entries));
    OrderProcess z;
    z.entries_ = std::move(entries);
    return z;
}

// Smallest valid process whose relation contains, at every instant, the
// relation spanned by the raw edges: each pair gets the minimum over all
// directed paths (within the raw edge set) of the maximum edge time along
// the path.  Duplicate raw entries resolve to their minimum.
inline OrderProcess minimax_closure(const std::vector<OrderProcess::Entry>& raw) {
    std::vector<Elem> verts;
    for (const auto& [p, t] : raw) {
        verts.push_back(p.first);
        verts.push_back(p.second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const std::size_t n = verts.size();
    if (n == 0) return {};

    auto index_of = [&](Elem e) {
        return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), e) - verts.begin());
    };
    std::vector<Time> d(n * n, never);
    for (const auto& [p, t] : raw) {
        if (p.first == p.second) continue;
        Time& cell = d[index_of(p.first) * n + index_of(p.second)];
        cell = std::min(cell, t);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const Time dik = d[i * n + k];
            if (dik == never) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const Time through = std::max(dik, d[k * n + j]);
                if (through < d[i * n + j]) d[i * n + j] = through;
            }
        }
    std::vector<OrderProcess::Entry> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && d[i * n + j] != never)
                out.push_back({{verts[i], verts[j]}, d[i * n + j]});
    return OrderProcess::trusted(std::move(out));
}

// Pointwise join: at every instant the relation is the join of the two
// relations.  In the encoding this is the minimax closure of the merged edge
// set with edge time min(y, z).
inline OrderProcess join(const OrderProcess& y, const OrderProcess& z) {
    if (y.empty()) return z;
    if (z.empty()) return y;
    std::vector<OrderProcess::Entry> merged(y.entries());
    merged.insert(merged.end(), z.entries().begin(), z.entries().end());
    return minimax_closure(merged);
}

// Process order: y <= z iff every pair of y is present in z no later.
// Equivalent to join(y,z) == z and to pointwise relation containment.
inline bool leq(const OrderProcess& y, const OrderProcess& z) {
    for (const auto& [p, t] : y.entries())
        if (!(z.time_of(p) <= t)) return false;
    return true;
}

// Membership of y in the dominance event of z: every pair of z is present in
// y no later than in z, i.e. z <= y.
inline bool dominates(const OrderProcess& y, const OrderProcess& z) {
    return leq(z, y);
}

// Shift towards later switching: every present time increases by eps, so the
// result is below the input.  As eps drops to 0 the result increases back.
inline OrderProcess delay(const OrderProcess& z, double eps) {
    if (!(eps > 0)) throw PreconditionViolation("delay requires eps > 0");
    std::vector<OrderProcess::Entry> entries(z.entries());
    for (auto& [p, t] : entries) t += eps;
    return OrderProcess::trusted(std::move(entries));
}

// Shift towards earlier switching, clamped at 0; the input is below the
// result.  delay(advance(z,eps),eps) >= z, with equality exactly when no
// switching time of z lies below eps.
inline OrderProcess advance(const OrderProcess& z, double eps) {
    if (!(eps > 0)) throw PreconditionViolation("advance requires eps > 0");
    std::vector<OrderProcess::Entry> entries(z.entries());
    for (auto& [p, t] : entries) t = std::max(t - eps, 0.0);
    return OrderProcess::trusted(std::move(entries));
}

inline std::vector<Elem> support(const OrderProcess& y) { return y.support(); }

}  // namespace opz
