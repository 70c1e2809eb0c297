#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include <json.hpp>

#include "dbf/audit.hpp"
#include "dbf/pipeline.hpp"
#include "dbf/solvers.hpp"

using namespace dbf;

namespace {

ExplicitGraph line_graph(int length) {
    std::vector<std::pair<Point, Dir>> edges;
    for (int i = 1; i <= length; ++i) edges.emplace_back(Point{1, i}, E(2));
    return ExplicitGraph::from_edges(2, length + 1, Point{1, 1}, edges);
}

}  // namespace

TEST_CASE("follow_path charges one query per vertex") {
    for (int len : {1, 2, 7}) {
        ExplicitGraph g = line_graph(len);
        SolveResult r = follow_path(g);
        CHECK(r.found);
        CHECK(r.queries == uint64_t(len + 1));
        CHECK(g.queries == uint64_t(len + 1));
        CHECK(r.answer == Point{1, len + 1});
    }
}

TEST_CASE("follow_path trips on a repeated vertex") {
    std::unordered_map<Point, GraphAnswer, PointHash> t;
    t[Point{1, 1}] = {kNo, E(1)};
    t[Point{2, 1}] = {E(1), E(2)};
    t[Point{2, 2}] = {E(2), -E(1)};
    t[Point{1, 2}] = {-E(1), -E(2)};
    ExplicitGraph g(2, 3, Point{1, 1}, t);
    CHECK_THROWS_AS(follow_path(g), std::runtime_error);
}

TEST_CASE("follow_path on the small string instance ends near the embedded last block") {
    auto st = ReductionStack::from_string({1, 5, 3, 7}, 1, 8);
    SolveResult gp = follow_path(st->gprime());
    CHECK(linf_dist(gp.answer, GPrime::gamma(Point{7, 7})) <= 1);
    SolveResult c = follow_path(st->canonical());
    CHECK(linf_dist(c.answer, Canonical::gamma(gp.answer)) <= 2);
    CHECK(invert_to_gstar(c.answer * 4) == Point{7, 7});
}

TEST_CASE("follow_path on ToC instances inverts to the tail") {
    for (auto [n, depth] : {std::pair{2, 1}, std::pair{5, 1}, std::pair{2, 2}}) {
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            auto st = ReductionStack::from_toc(n, depth, seed);
            SolveResult r = follow_path(st->canonical());
            CHECK(invert_chain(r.answer * 4) == st->toc()->tail());
            LayerCounts c = st->counts();
            CHECK(c.canonical == r.queries);
            CHECK(c.gprime == c.canonical);
            CHECK(c.strings <= uint64_t(4 * st->dim()) * c.gprime);
            CHECK(c.toc <= c.strings);
            CHECK(st->max_toc_per_answer() <= 1);
        }
    }
}

TEST_CASE("brute force scan") {
    auto st = ReductionStack::from_toc(1, 1, 3);
    Brouwer& f = st->brouwer();
    SolveResult r = brute_force_zero(f, 1 << 22);
    REQUIRE(r.found);
    CHECK(r.queries == uint64_t(lex_rank(r.answer, f.side())) + 1);
    CHECK(invert_chain(r.answer) == st->toc()->tail());

    Support sup = stack_support(*st);
    SolveResult idx = brute_force_zero_indexed(f, sorted_keys(sup.canonical->table()));
    CHECK(idx.answer == r.answer);
    CHECK(idx.queries == r.queries);

    f.overrides[Point{1, 1}] = kNo;
    SolveResult first = brute_force_zero(f, 10);
    CHECK(first.queries == 1);
    CHECK(first.answer == Point{1, 1});
    f.overrides.clear();
    CHECK_THROWS_AS(brute_force_zero(f, 10), std::length_error);
}

TEST_CASE("brute force answer on a larger planar instance matches the end of the path") {
    auto st = ReductionStack::from_toc(4, 1, 8);
    Support sup = stack_support(*st);
    SolveResult r = brute_force_zero_indexed(st->brouwer(), sorted_keys(sup.canonical->table()));
    SolveResult path = follow_path(st->canonical());
    CHECK(r.answer == path.answer * 4);
    CHECK(r.queries <= uint64_t(st->brouwer().spec().cells()));
}

TEST_CASE("sampling") {
    auto st = ReductionStack::from_toc(1, 1, 1);
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(sample_solver(st->brouwer(), 0, rng, false), std::invalid_argument);

    std::mt19937_64 g(5);
    ExplicitGraph inner = line_graph(1);
    Canonical c(inner);
    Brouwer f(c);
    uint64_t cells = uint64_t(f.spec().cells());
    SolveResult all = sample_solver(f, cells, g, true);
    CHECK(all.found);
    CHECK(f.eval(all.answer).none());

    const int trials = 3000;
    const uint64_t budget = 200;
    for (bool distinct : {true, false}) {
        int hits = 0;
        for (int t = 0; t < trials; ++t) hits += sample_solver(f, budget, g, distinct).found;
        double p = distinct ? double(budget) / cells : 1 - std::pow(1 - 1.0 / cells, double(budget));
        double se = std::sqrt(p * (1 - p) / trials);
        CAPTURE(distinct);
        CHECK(std::fabs(double(hits) / trials - p) <= 3 * se);
    }
}

TEST_CASE("counting wrapper is transparent") {
    IndexedString s({2, 1, 4, 3, 4, 5}, 2, 6);
    CountingString c(s);
    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b) {
            uint64_t before = c.count;
            CHECK(c.query(Symbols{a, b}) == s.query(Symbols{a, b}));
            CHECK(c.count == before + 1);
        }
}

TEST_CASE("solver records as json lines") {
    ExplicitGraph g = line_graph(3);
    SolveResult r = follow_path(g);
    r.leaf = Name{4};
    auto j = nlohmann::json::parse(to_json_line(r, g.spec(), 42));
    CHECK(j["solver"] == "follow_path");
    CHECK(j["seed"] == 42);
    CHECK(j["answer"] == "(1,4)");
    CHECK(j["counts"]["graph"] == 4);
    CHECK(j["spec"]["d"] == 2);
    CHECK(j["leaf"][0] == 4);
}
