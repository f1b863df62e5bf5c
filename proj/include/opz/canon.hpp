#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <tuple>
#include <vector>

#include "opz/errors.hpp"
#include "opz/process.hpp"

namespace opz {

// Canonicalization enumerates all relabelings of the support, so it is capped.
inline constexpr std::size_t canon_support_limit = 9;

class IsoClass;
IsoClass iso_class(const OrderProcess& z, std::size_t limit);
IsoClass add(const IsoClass& a, const IsoClass& b, std::size_t limit);

// Relabeling-equivalence class of a finite-support order process, stored as
// its canonical representative: support relabeled onto {0,...,s-1}, then the
// lexicographically least entry list over all permutations of that segment.
class IsoClass {
public:
    const OrderProcess& rep() const { return rep_; }
    std::size_t support_size() const { return rep_.support().size(); }
    bool operator==(const IsoClass&) const = default;

private:
    friend IsoClass iso_class(const OrderProcess&, std::size_t);
    friend IsoClass add(const IsoClass&, const IsoClass&, std::size_t);
    explicit IsoClass(OrderProcess rep) : rep_(std::move(rep)) {}
    OrderProcess rep_;
};

// The class of z.  Two processes map to equal classes exactly when one is a
// permutation image of the other.  Throws SupportTooLarge beyond `limit`
// (brute force over support-size factorial relabelings).
inline IsoClass iso_class(const OrderProcess& z, std::size_t limit = canon_support_limit) {
    const std::vector<Elem> sup = z.support();
    const std::size_t s = sup.size();
    if (s > limit) throw SupportTooLarge(s, limit);
    if (s == 0) return IsoClass(OrderProcess());

    auto position = [&](Elem e) {
        return static_cast<Elem>(std::lower_bound(sup.begin(), sup.end(), e) - sup.begin());
    };
    struct Edge {
        Elem a, b;
        Time t;
    };
    std::vector<Edge> base;
    base.reserve(z.pair_count());
    for (const auto& [p, t] : z.entries())
        base.push_back({position(p.first), position(p.second), t});

    std::vector<Elem> perm(s);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<OrderProcess::Entry> best, cand;
    cand.reserve(base.size());
    bool first = true;
    do {
        cand.clear();
        for (const Edge& e : base)
            cand.push_back({{perm[e.a], perm[e.b]}, e.t});
        std::sort(cand.begin(), cand.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        if (first || cand < best) {
            best = cand;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return IsoClass(OrderProcess::trusted(std::move(best)));
}

// Class addition: join of representatives with disjoint supports.  The second
// representative is shifted onto fresh labels, so the union needs no closure
// (no path crosses between the components), then the result is canonicalized.
// Commutative and associative; the class of the diagonal is neutral; not
// idempotent.
inline IsoClass add(const IsoClass& a, const IsoClass& b, std::size_t limit = canon_support_limit) {
    const Elem offset = static_cast<Elem>(a.support_size());
    std::vector<OrderProcess::Entry> entries(a.rep().entries());
    entries.reserve(entries.size() + b.rep().pair_count());
    for (const auto& [p, t] : b.rep().entries())
        entries.push_back({{p.first + offset, p.second + offset}, t});
    return iso_class(OrderProcess::trusted(std::move(entries)), limit);
}

}  // namespace opz
