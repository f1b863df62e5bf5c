#include <catch2/catch.hpp>

#include <filesystem>
#include <fstream>

#include "testutil.hpp"

using namespace opz;
using testutil::proc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("opz_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p;
    }
};

}  // namespace

TEST_CASE("opz parsing") {
    CHECK(parse_opz("opz 1\ne 1 2 0.5\n", LoadMode::strict) == proc({{{1, 2}, 0.5}}));
    CHECK(parse_opz("opz 1\n# a comment\n\n  e 3 4 1\n", LoadMode::strict) ==
          proc({{{3, 4}, 1.0}}));
    CHECK(parse_opz("opz 1\n", LoadMode::strict) == OrderProcess());

    try {
        parse_opz("opz 1\ne 1 2 0.5\ne 2 3 0.7\n", LoadMode::strict);
        FAIL("expected ConstraintViolation");
    } catch (const ConstraintViolation& e) {
        CHECK(e.j == 1);
        CHECK(e.k == 2);
        CHECK(e.l == 3);
    }

    CHECK(parse_opz("opz 1\ne 1 2 0.5\ne 2 3 0.7\n", LoadMode::close) ==
          proc({{{1, 2}, 0.5}, {{2, 3}, 0.7}, {{1, 3}, 0.7}}));

    CHECK_THROWS_AS(parse_opz("", LoadMode::strict), ParseError);
    CHECK_THROWS_AS(parse_opz("opz 2\n", LoadMode::strict), ParseError);
    CHECK_THROWS_AS(parse_opz("e 1 2 0.5\n", LoadMode::strict), ParseError);
    CHECK_THROWS_AS(parse_opz("opz 1\ne 1 1 0.5\n", LoadMode::strict), ParseError);
    CHECK_THROWS_AS(parse_opz("opz 1\ne 1 2 -0.5\n", LoadMode::strict), ParseError);
    CHECK_THROWS_AS(parse_opz("opz 1\ne 1 2 inf\n", LoadMode::strict), ParseError);
    CHECK_THROWS_AS(parse_opz("opz 1\ne 1 2 0.5 junk\n", LoadMode::strict), ParseError);

    try {
        parse_opz("opz 1\ne 1 2 0.5\ne 1 2 0.25\n", LoadMode::strict);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("opz writing is sorted and shortest-round-trip") {
    const OrderProcess z = proc({{{2, 3}, 1.0}, {{1, 2}, 0.5}, {{1, 3}, 1.0}});
    CHECK(to_opz_string(z) == "opz 1\ne 1 2 0.5\ne 1 3 1\ne 2 3 1\n");
    CHECK(to_opz_string(OrderProcess()) == "opz 1\n");
}

TEST_CASE("opz round trip is exact") {
    TempDir tmp;
    const fs::path p = tmp.path / "z.opz";

    save_opz(OrderProcess(), p);
    CHECK(load_opz(p) == OrderProcess());

    Rng rng(103);
    for (int i = 0; i < 200; ++i) {
        // mix dyadic and arbitrary real times to exercise the formatter
        std::vector<OrderProcess::Entry> raw;
        const std::size_t m = rng.below(7);
        for (std::size_t e = 0; e < m; ++e) {
            const Elem a = static_cast<Elem>(rng.below(7));
            const Elem b = static_cast<Elem>(rng.below(7));
            if (a == b) continue;
            const Time t = (e % 2 == 0) ? testutil::dyadic_time(rng) : rng.uniform(0.0, 3.0);
            raw.push_back({{a, b}, t});
        }
        const OrderProcess z = minimax_closure(raw);
        save_opz(z, p);
        CHECK(load_opz(p) == z);
    }
}

TEST_CASE("strict loading accepts exactly the valid encodings") {
    Rng rng(107);
    int accepted = 0, rejected = 0;
    for (int i = 0; i < 300; ++i) {
        // raw edge soup, frequently violating the max-triangle constraint
        std::vector<OrderProcess::Entry> raw;
        std::set<Pair> used;
        const std::size_t m = rng.below(7);
        for (std::size_t e = 0; e < m; ++e) {
            const Elem a = static_cast<Elem>(rng.below(5));
            const Elem b = static_cast<Elem>(rng.below(5));
            if (a == b || !used.insert({a, b}).second) continue;
            raw.push_back({{a, b}, testutil::dyadic_time(rng, 16)});
        }
        std::string text = "opz 1\n";
        for (const auto& [p, t] : raw)
            text += "e " + std::to_string(p.first) + " " + std::to_string(p.second) + " " +
                    format_double(t) + "\n";
        std::sort(raw.begin(), raw.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        const bool valid = !find_violation(raw).has_value();
        bool parsed = true;
        try {
            parse_opz(text, LoadMode::strict);
        } catch (const ConstraintViolation&) {
            parsed = false;
        }
        CHECK(parsed == valid);
        (valid ? accepted : rejected)++;
        // close mode always succeeds and dominates the raw edges
        const OrderProcess closed = parse_opz(text, LoadMode::close);
        for (const auto& [p, t] : raw) CHECK(closed.time_of(p) <= t);
    }
    CHECK(accepted >= 30);
    CHECK(rejected >= 30);
}

TEST_CASE("dag parsing closes transitively") {
    const PartialOrder d = parse_dag("d 0 1\nd 1 2\n# note\n");
    CHECK(d == transitive_closure({{0, 1}, {1, 2}}));
    CHECK(d.contains(0, 2));
    CHECK_THROWS_AS(parse_dag("d 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_dag("x 1 2\n"), ParseError);
    CHECK(parse_dag("") == PartialOrder());
}

TEST_CASE("model configs load every kind") {
    TempDir tmp;

    const auto full = tmp.file("full.cfg", "model=completion\nn=6\ndist=uniform:0,1\nbase=full\n");
    const MeasureModel m1 = load_model(full);
    CHECK(m1.kind == ModelKind::completion);
    CHECK(m1.window == 6);
    CHECK_FALSE(m1.base.has_value());
    CHECK(exact_prob(m1, proc({{{1, 2}, 0.5}})).value == 0.25);

    tmp.file("net.dag", "d 0 1\nd 1 2\n");
    const auto dag = tmp.file("dag.cfg",
                              "model=completion\nn=4\ndist=exp:2\nbase=dag:net.dag\npermute=on\n");
    const MeasureModel m2 = load_model(dag);
    REQUIRE(m2.base.has_value());
    CHECK(m2.permute);
    CHECK(m2.base->contains(0, 2));
    CHECK(m2.dist.family == DistFamily::exponential);

    const auto em = tmp.file("em.cfg", "model=edge_minimax\nn=4\ndist=exp:1.5\n");
    const MeasureModel m3 = load_model(em);
    CHECK(m3.kind == ModelKind::edge_minimax);
    CHECK(m3.dist.rate == 1.5);

    tmp.file("z.opz", "opz 1\ne 1 2 0.5\n");
    const auto dz = tmp.file("dirac.cfg", "model=dirac\nz=z.opz\n");
    const MeasureModel m4 = load_model(dz);
    CHECK(m4.kind == ModelKind::dirac);
    CHECK(m4.fixed == proc({{{1, 2}, 0.5}}));
    CHECK(m4.window == 3);

    tmp.file("u2.cfg", "model=completion\nn=5\ndist=uniform:0,2\n");
    tmp.file("u1.cfg", "model=completion\nn=5\ndist=uniform:0,1\n");
    const auto mixp = tmp.file("mix.cfg", "model=mixture\nmix=0.5:u1.cfg,0.5:u2.cfg\n");
    const MeasureModel m5 = load_model(mixp);
    CHECK(m5.kind == ModelKind::mixture);
    CHECK(m5.effective_window() == 5);
    CHECK(exact_prob(m5, proc({{{1, 2}, 0.5}})).value == 0.15625);

    // repeated mix= lines accumulate
    const auto mix2 = tmp.file("mix2.cfg", "model=mixture\nmix=0.25:u1.cfg\nmix=0.75:u2.cfg\n");
    CHECK(load_model(mix2).parts.size() == 2);
}

TEST_CASE("model config errors") {
    TempDir tmp;
    CHECK_THROWS_AS(load_model(tmp.file("a.cfg", "n=4\n")), InvalidModel);
    CHECK_THROWS_AS(load_model(tmp.file("b.cfg", "model=completion\nn=4\n")), InvalidModel);
    CHECK_THROWS_AS(load_model(tmp.file("c.cfg", "model=completion\nn=4\ndist=uniform:1\n")),
                    InvalidModel);
    CHECK_THROWS_AS(load_model(tmp.file("d.cfg", "model=edge_minimax\nn=4\ndist=uniform:0,1\n")),
                    InvalidModel);
    CHECK_THROWS_AS(load_model(tmp.file("e.cfg", "model=completion\nn=4\ndist=exp:1\nwhat=no\n")),
                    InvalidModel);
    CHECK_THROWS_AS(load_model(tmp.file("f.cfg", "model=mixture\n")), InvalidModel);
    CHECK_THROWS_AS(load_model(tmp.file("g.cfg", "no equals sign")), ParseError);
    tmp.file("u1.cfg", "model=completion\nn=5\ndist=uniform:0,1\n");
    CHECK_THROWS_AS(load_model(tmp.file("h.cfg", "model=mixture\nmix=0.5:u1.cfg,0.6:u1.cfg\n")),
                    InvalidModel);
    // permute without a dag base is rejected
    CHECK_THROWS_AS(
        load_model(tmp.file("i.cfg", "model=completion\nn=4\ndist=uniform:0,1\npermute=on\n")),
        InvalidModel);
}

TEST_CASE("sampling a loaded model is deterministic") {
    TempDir tmp;
    const auto cfg = tmp.file("m.cfg", "model=completion\nn=5\ndist=uniform:0,1\n");
    const MeasureModel a = load_model(cfg);
    const MeasureModel b = load_model(cfg);
    for (std::uint64_t s = 0; s < 20; ++s) CHECK(sample(a, s) == sample(b, s));
}
