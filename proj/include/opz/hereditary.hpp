#pragma once

#include <utility>
#include <vector>

#include "opz/errors.hpp"
#include "opz/grid.hpp"
#include "opz/process.hpp"
#include "opz/relation.hpp"

namespace opz {

// A join-closed, downward-closed set of finite-support processes given by a
// finite generator list.  The denoted set is { z : z <= top() } where top()
// is the join of all generators: it contains the generators, is closed under
// join and under going down, and is contained in every such set containing
// the generators.
class HereditaryFamily {
public:
    HereditaryFamily() = default;  // generated by nothing: just the diagonal

    explicit HereditaryFamily(std::vector<OrderProcess> generators)
        : generators_(std::move(generators)) {
        for (const auto& g : generators_) top_ = join(top_, g);
    }

    const std::vector<OrderProcess>& generators() const { return generators_; }

    // Maximum element of the family.
    const OrderProcess& top() const { return top_; }

    bool contains(const OrderProcess& z) const { return leq(z, top_); }

private:
    std::vector<OrderProcess> generators_;
    OrderProcess top_;
};

// One single-step witness per present pair of z.  For a pair switching at t0,
// the witness stays diagonal through t0 + eps and then holds everything the
// family's top has switched strictly before t0 + eps; all those pairs are
// scheduled at exactly t0 + eps.  Every witness is a member of the family,
// and jointly the witnesses cover z: z(t) is below the join of the witnesses
// taken at t + eps, for every t.
inline std::vector<OrderProcess> cover_witnesses(const OrderProcess& z,
                                                 const HereditaryFamily& fam,
                                                 double eps) {
    if (!(eps > 0)) throw PreconditionViolation("cover_witnesses requires eps > 0");
    if (!fam.contains(z)) throw NotAMember();
    const OrderProcess& top = fam.top();
    std::vector<OrderProcess> witnesses;
    witnesses.reserve(z.pair_count());
    for (const auto& [p, t0] : z.entries()) {
        const Time cut = t0 + eps;
        std::vector<OrderProcess::Entry> entries;
        for (const auto& [q, t] : top.entries())
            if (t < cut) entries.push_back({q, cut});
        witnesses.push_back(OrderProcess::trusted(std::move(entries)));
    }
    return witnesses;
}

struct CoveringCheck {
    bool pass = true;
    Time failed_at = 0;  // meaningful only when !pass
};

// Verifies z(t) <= join of witness(t + eps) over the probe grid built from
// all switching times involved.  The right side steps where a witness time
// crosses t + eps, so the shifted witness times join the grid as well.
inline CoveringCheck verify_covering(const OrderProcess& z,
                                     const HereditaryFamily& fam,
                                     const std::vector<OrderProcess>& witnesses,
                                     double eps) {
    std::vector<const OrderProcess*> ps{&z, &fam.top()};
    for (const auto& w : witnesses) ps.push_back(&w);
    std::vector<Time> events = event_times(ps);
    for (const auto& w : witnesses)
        for (const auto& [q, s] : w.entries())
            if (s - eps > 0) events.push_back(s - eps);
    for (Time t : probe_grid(std::move(events))) {
        std::vector<Pair> pairs;
        for (const auto& w : witnesses)
            for (const auto& [q, s] : w.entries())
                if (s < t + eps) pairs.push_back(q);
        if (!leq(z.at(t), transitive_closure(pairs))) return {false, t};
    }
    return {};
}

}  // namespace opz
