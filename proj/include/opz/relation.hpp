#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace opz {

using Elem = std::uint32_t;
using Pair = std::pair<Elem, Elem>;

inline bool is_transitive(const std::set<Pair>& pairs) {
    std::map<Elem, std::vector<Elem>> out;
    for (auto [a, b] : pairs) out[a].push_back(b);
    for (auto [a, b] : pairs) {
        auto it = out.find(b);
        if (it == out.end()) continue;
        for (Elem c : it->second)
            if (a != c && pairs.count({a, c}) == 0) return false;
    }
    return true;
}

// A reflexive, transitive (not necessarily antisymmetric) relation on the
// naturals with finite non-diagonal part.  The diagonal is implicit; only
// pairs (j,k) with j != k are stored, and the stored set is transitively
// closed.  Values are immutable once built.
class PartialOrder {
public:
    PartialOrder() = default;  // the diagonal relation

    // Wraps a pair set the caller guarantees to be transitively closed.
    static PartialOrder from_closed(std::set<Pair> pairs) {
        assert(is_transitive(pairs));
        return PartialOrder(std::move(pairs));
    }

    const std::set<Pair>& pairs() const& { return pairs_; }
    // Rvalues hand the set over by value so iterators never dangle.
    std::set<Pair> pairs() && { return std::move(pairs_); }
    bool contains(Elem j, Elem k) const { return j == k || pairs_.count({j, k}) != 0; }
    bool is_diagonal() const { return pairs_.empty(); }
    std::size_t pair_count() const { return pairs_.size(); }

    bool operator==(const PartialOrder&) const = default;

private:
    explicit PartialOrder(std::set<Pair> pairs) : pairs_(std::move(pairs)) {}
    std::set<Pair> pairs_;
};

// Smallest transitively closed relation containing `raw`, diagonal entries
// dropped.  Idempotent and monotone in its input.
inline PartialOrder transitive_closure(const std::vector<Pair>& raw) {
    std::map<Elem, std::vector<Elem>> adj;
    for (auto [a, b] : raw)
        if (a != b) adj[a].push_back(b);
    std::set<Pair> closed;
    std::vector<Elem> stack;
    std::set<Elem> seen;
    for (const auto& [src, direct] : adj) {
        seen.clear();
        stack.clear();
        for (Elem v : direct)
            if (seen.insert(v).second) stack.push_back(v);
        while (!stack.empty()) {
            Elem v = stack.back();
            stack.pop_back();
            auto it = adj.find(v);
            if (it == adj.end()) continue;
            for (Elem w : it->second)
                if (seen.insert(w).second) stack.push_back(w);
        }
        for (Elem v : seen)
            if (v != src) closed.insert({src, v});
    }
    return PartialOrder::from_closed(std::move(closed));
}

inline PartialOrder join(const PartialOrder& a, const PartialOrder& b) {
    if (a.is_diagonal()) return b;
    if (b.is_diagonal()) return a;
    std::vector<Pair> all(a.pairs().begin(), a.pairs().end());
    all.insert(all.end(), b.pairs().begin(), b.pairs().end());
    return transitive_closure(all);
}

// Containment of the non-diagonal parts; equivalently join(a,b) == b.
inline bool leq(const PartialOrder& a, const PartialOrder& b) {
    if (a.pair_count() > b.pair_count()) return false;
    return std::includes(b.pairs().begin(), b.pairs().end(),
                         a.pairs().begin(), a.pairs().end());
}

// Elements incident to a non-diagonal pair.
inline std::set<Elem> support(const PartialOrder& v) {
    std::set<Elem> s;
    for (auto [a, b] : v.pairs()) {
        s.insert(a);
        s.insert(b);
    }
    return s;
}

// True when no two distinct elements are mutually related.
inline bool is_acyclic(const PartialOrder& v) {
    for (auto [a, b] : v.pairs())
        if (v.pairs().count({b, a}) != 0) return false;
    return true;
}

}  // namespace opz
