#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "opz/errors.hpp"
#include "opz/process.hpp"
#include "opz/random.hpp"
#include "opz/relation.hpp"

namespace opz {

// A finite-support bijection of the naturals; elements outside the stored map
// are fixed.  Acts on relations and processes by relabeling.
class Permutation {
public:
    Permutation() = default;  // identity

    static Permutation from_map(std::map<Elem, Elem> images) {
        std::vector<Elem> keys, vals;
        for (auto [k, v] : images) {
            keys.push_back(k);
            vals.push_back(v);
        }
        std::sort(vals.begin(), vals.end());
        if (std::adjacent_find(vals.begin(), vals.end()) != vals.end() || vals != keys)
            throw PreconditionViolation("images must permute the moved points");
        // drop fixed points
        for (auto it = images.begin(); it != images.end();)
            it = (it->first == it->second) ? images.erase(it) : std::next(it);
        Permutation p;
        p.images_ = std::move(images);
        return p;
    }

    // Maps i to images[i] for i < images.size(); images must permute
    // {0,...,images.size()-1}.
    static Permutation from_images(const std::vector<Elem>& images) {
        std::map<Elem, Elem> m;
        for (Elem i = 0; i < images.size(); ++i) m[i] = images[i];
        return from_map(std::move(m));
    }

    static Permutation transposition(Elem a, Elem b) {
        if (a == b) return {};
        return from_map({{a, b}, {b, a}});
    }

    // Uniformly random permutation of {0,...,n-1}.
    static Permutation shuffled(Elem n, Rng& rng) {
        std::vector<Elem> v(n);
        std::iota(v.begin(), v.end(), 0u);
        for (Elem i = n; i > 1; --i)
            std::swap(v[i - 1], v[rng.below(i)]);
        return from_images(v);
    }

    Elem operator()(Elem e) const {
        auto it = images_.find(e);
        return it == images_.end() ? e : it->second;
    }

    Permutation inverse() const {
        std::map<Elem, Elem> inv;
        for (auto [k, v] : images_) inv[v] = k;
        Permutation p;
        p.images_ = std::move(inv);
        return p;
    }

    PartialOrder apply(const PartialOrder& v) const {
        std::set<Pair> pairs;
        for (auto [a, b] : v.pairs()) pairs.insert({(*this)(a), (*this)(b)});
        return PartialOrder::from_closed(std::move(pairs));
    }

    OrderProcess apply(const OrderProcess& z) const {
        std::vector<OrderProcess::Entry> entries;
        entries.reserve(z.pair_count());
        for (const auto& [p, t] : z.entries())
            entries.push_back({{(*this)(p.first), (*this)(p.second)}, t});
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return OrderProcess::trusted(std::move(entries));
    }

    const std::map<Elem, Elem>& moved() const { return images_; }
    bool is_identity() const { return images_.empty(); }

private:
    std::map<Elem, Elem> images_;
};

}  // namespace opz
