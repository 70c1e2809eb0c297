#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dbf/topc.hpp"

using namespace dbf;

TEST_CASE("partial connector basics") {
    PartialConnector c = PartialConnector::empty(2);
    CHECK(c.segment_count() == 3);
    CHECK(c.r() == 2);
    CHECK(c.L() == std::set<int32_t>{3, 5});
    CHECK(c.R() == std::set<int32_t>{4, 6});
    CHECK(c.is_endpoint(2));
    CHECK(c.phi(2) == 0);
    c.merge(2, 5);
    CHECK(c.r() == 6);
    CHECK(c.R() == std::set<int32_t>{4});
    CHECK(c.phi(2) == 5);
    CHECK(c.phi(5) == 2);
    CHECK_FALSE(c.is_endpoint(2));
    CHECK(c.consistent_with(Connector::from_perm({2, 1})));
    CHECK_FALSE(c.consistent_with(Connector::from_perm({1, 2})));
    CHECK_THROWS_AS(c.merge(4, 2), std::logic_error);
    c.merge(6, 3);
    CHECK(c.complete());
    CHECK(c.to_string() == "{2 5 6 3 4}");
}

TEST_CASE("empty knowledge counts") {
    ToPC p11(1, 1);
    TailCounts t = count_tails(p11, 1000);
    CHECK(t.total == 1);
    CHECK(t.N.at(Name{4}) == 1);

    ToPC p21(2, 1);
    t = count_tails(p21, 1000);
    CHECK(t.total == 2);
    CHECK(t.N.at(Name{4}) == 1);
    CHECK(t.N.at(Name{6}) == 1);

    ToPC p22(2, 2);
    t = count_tails(p22, 1000);
    CHECK(t.total == 16);
    CHECK(t.N.size() == 4);
    CHECK(t.max_count() == t.min_count());
    CHECK(double(t.max_count()) / double(t.min_count()) <= alpha_value(2, 0));
    CHECK_THROWS_AS(count_tails(ToPC(3, 2), 1000), std::length_error);
}

TEST_CASE("first query on fresh knowledge") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        ToC truth(3, 2, seed);
        KnowledgeState ks(truth, 1.0 / 3);
        Name q{4, 4};
        if (truth.tail() == q) q = {3, 3};
        Grant g = query_and_update(ks, truth, q);
        CHECK(g.kind == Grant::Answer);
        CHECK(g.m == 2);
        CHECK(ks.A[2] == 1);
        CHECK(ks.topc.is_valid());
        CHECK(ks.topc.is_beta_valid(1.0 / 3));
        int64_t merges = ks.ones(2, 0) + ks.ones(2, 1);
        CHECK(merges == 1);
    }
}

TEST_CASE("whole tree answer ends the search") {
    ToC truth(2, 2, 5);
    KnowledgeState ks(truth, 0.5);
    Grant g = query_and_update(ks, truth, truth.tail());
    CHECK(g.kind == Grant::Answer);
    CHECK(g.answer.whole);
    CHECK(ks.ones(2) == 1);
    CHECK(ks.done);
    CHECK(ks.I == 0);
}

TEST_CASE("threshold truncates to the root at (2,1) with beta 1/2") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        ToC truth(2, 1, seed);
        KnowledgeState ks(truth, 0.5);
        // a non-tail endpoint of the empty connector
        Name q{truth.tail()[0] == 4 ? 6 : 4};
        Grant g = query_and_update(ks, truth, q);
        CHECK(g.kind == Grant::Answer);
        CHECK(ks.topc.at({}).R().size() == 1);
        CHECK(ks.at_threshold({}));
        Name next{ks.topc.at({}).r()};
        g = query_and_update(ks, truth, next);
        CHECK(g.kind == Grant::Everything);
        CHECK(g.m == 0);
        CHECK(ks.I == 1);
    }
}

TEST_CASE("known queries are answered without the oracle") {
    ToC truth(2, 2, 3);
    KnowledgeState ks(truth, 0.5);
    Name q{truth.tail()[0] == 4 ? 6 : 4, 4};
    query_and_update(ks, truth, q);
    uint64_t before = truth.queries;
    Grant g = query_and_update(ks, truth, q);
    CHECK(g.kind == Grant::Known);
    CHECK(truth.queries == before);
    CHECK(g.answer == truth.answer(q));
}

TEST_CASE("knowledge stays consistent and bookkeeping holds") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int n = trial % 3 == 0 ? 4 : 2;
        int d = 1 + trial % 3;
        double beta = n == 4 ? 0.25 : 0.5;
        ToC truth(n, d, rng());
        KnowledgeState ks(truth, beta);
        std::uniform_int_distribution<int> sym(2, 2 * n + 2);
        for (int step = 0; step < 40 && !ks.done; ++step) {
            Name q(d);
            for (auto& x : q) x = sym(rng);
            query_and_update(ks, truth, q);
            if (ks.done) break;
            REQUIRE(ks.topc.consistent(truth));
            REQUIRE(ks.topc.is_valid());
            CHECK(ks.topc.is_beta_valid(beta));
            for (int m = 1; m <= d - 1; ++m) {
                int64_t sum = 0;
                for (int i = m + 1; i <= d; ++i) sum += ks.ones(i, m);
                CHECK(double(ks.A[m]) <= sum / (beta * n) + 1e-9);
            }
        }
    }
}

TEST_CASE("key lemma on probed states") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        for (int d = 1; d <= 2; ++d) {
            for (const ProbeRecord& r : key_lemma_probe(2, d, 0.0, seed, 50, 100000)) {
                if (!r.beta_valid) continue;
                CHECK(r.tails >= int64_t(std::pow(2, d)));
                CHECK(r.max_count <= r.min_count * alpha_value(d, 0));
            }
        }
        for (const ProbeRecord& r : key_lemma_probe(2, 1, 0.25, seed, 50, 100000))
            CHECK(r.max_count <= r.min_count);
        for (const ProbeRecord& r : key_lemma_probe(2, 2, 0.5, seed, 50, 100000))
            CHECK(r.tails >= 1);
    }
}

TEST_CASE("alpha") {
    CHECK(alpha_value(1, 0.01) == 1);
    CHECK(alpha_value(2, 0) == 1);
    CHECK(alpha_bound(2, 0).alpha == 1);
    CHECK_THROWS_AS(alpha_bound(2, 0.01), std::domain_error);
    for (int d = 1; d <= 4; ++d)
        for (int i = 0; i <= 100; ++i) {
            double beta = std::pow(24.0, -d) * i / 100;
            AlphaBound a = alpha_bound(d, beta);
            CHECK(a.alpha <= a.exp_bound * (1 + 1e-12));
        }
}
