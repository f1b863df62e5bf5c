// A short tour of the core algebra: build two processes, join them, look at
// snapshots, and canonicalize.

#include <iostream>

#include <opz/opz.hpp>

using namespace opz;

int main() {
    const OrderProcess deploy = OrderProcess::checked(
        std::vector<OrderProcess::Entry>{{{1, 2}, 1.0}});
    const OrderProcess verify = OrderProcess::checked(
        std::vector<OrderProcess::Entry>{{{2, 3}, 2.0}});

    const OrderProcess both = join(deploy, verify);
    std::cout << "join:\n" << to_opz_string(both);

    for (Time t : {0.5, 1.5, 2.5}) {
        std::cout << "relation at t=" << format_double(t) << ":";
        const PartialOrder snapshot = both.at(t);
        for (auto [a, b] : snapshot.pairs()) std::cout << " (" << a << "," << b << ")";
        std::cout << "\n";
    }

    std::cout << "deploy <= join: " << (leq(deploy, both) ? "true" : "false") << "\n";

    const IsoClass c = iso_class(both);
    std::cout << "canonical representative:\n" << to_opz_string(c.rep());

    const IsoClass doubled = add(c, c);
    std::cout << "doubled class has support size " << doubled.support_size() << "\n";
    return 0;
}
