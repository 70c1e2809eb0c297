#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "dbf/lattice.hpp"
#include "dbf/toc.hpp"
#include "fixtures.hpp"

using namespace dbf;

namespace {

std::vector<Name> internal_nodes(int n, int d) {
    std::vector<Name> out{{}};
    for (size_t i = 0; i < out.size(); ++i) {
        if (int(out[i].size()) + 1 >= d) continue;
        for (int a = 2; a <= 2 * n + 2; ++a) {
            Name c = out[i];
            c.push_back(a);
            out.push_back(c);
        }
    }
    return out;
}

std::string signature(const ToC& t) {
    std::string s;
    for (const Name& v : internal_nodes(t.n(), t.d())) {
        for (int p : t.connector(v).perm) s += char('0' + p);
        s += '|';
    }
    return s;
}

void check_against_strings(const ToC& t) {
    int d = t.d(), n = t.n();
    IndexedString s(build_S(t), d, 4 * n + 4), q(build_Q(t), d, 4 * n + 4);
    TocStrings ts(t);
    Point lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        lo[i] = 1;
        hi[i] = 4 * n + 4;
    }
    int64_t bad = 0, over = 0;
    for_each_in_box(lo, hi, [&](const Point& p) {
        Symbols u = p.vec();
        uint64_t before = t.queries;
        StringPair a = ts.answers(u);
        over += (t.queries - before) > 1;
        bad += !(a.s == s.query(u)) || !(a.q == q.query(u));
    });
    CHECK(bad == 0);
    CHECK(over == 0);
}

}  // namespace

TEST_CASE("connector strings and partners") {
    Connector c = Connector::identity(1);
    CHECK(c.str == Symbols{2, 3, 4});
    CHECK(c.r() == 4);
    CHECK(c.phi(2) == 3);
    CHECK(c.phi(3) == 2);
    CHECK(c.phi(4) == 0);
    Connector c2 = Connector::from_perm({2, 1});
    CHECK(c2.str == Symbols{2, 5, 6, 3, 4});
    CHECK(c2.phi(2) == 5);
    CHECK(c2.phi(6) == 3);
    CHECK(c2.phi(3) == 6);
    CHECK(Connector::from_string({2, 5, 6, 3, 4}).perm == std::vector<int>{2, 1});
    CHECK_THROWS(Connector::from_perm({1, 1}));
    CHECK_THROWS(Connector::from_string({2, 6, 5, 3, 4}));
}

TEST_CASE("generator examples") {
    CHECK(ToC(1, 1, 5).connector({}).str == Symbols{2, 3, 4});
    std::set<Symbols> roots;
    for (uint64_t seed = 0; seed < 64; ++seed) roots.insert(ToC(2, 1, seed).connector({}).str);
    CHECK(roots == std::set<Symbols>{{2, 3, 4, 5, 6}, {2, 5, 6, 3, 4}});
}

TEST_CASE("tail_name") {
    CHECK(ToC(1, 1, 3).tail() == Name{4});
    ToC t(2, 3, 9);
    CHECK(t.tail_name({4, 5, 6}) == Name{4, 5, 6});
    std::map<Name, Connector> table;
    for (const Name& v : internal_nodes(2, 2)) table.emplace(v, Connector::identity(2));
    ToC id(2, 2, table);
    CHECK(id.tail() == Name{6, 6});
    CHECK_THROWS(t.tail_name({1}));
    CHECK_THROWS(t.tail_name({2, 2, 2, 2}));
}

TEST_CASE("toc_oracle") {
    ToC t(1, 1, 0);
    TocAnswer a = t.oracle({4});
    CHECK(a.whole);
    a = t.oracle({3});
    CHECK_FALSE(a.whole);
    CHECK(a.h == 0);
    CHECK(a.phi == 2);
    CHECK(a.t1 == Name{3});
    CHECK(a.t2 == Name{2});
    CHECK_THROWS(t.oracle({7}));
    CHECK_THROWS(t.oracle({}));

    ToC f = fixtures::example_toc();
    CHECK(f.oracle(f.tail()).whole);
    // 4 is last in the root connector 2 5 6 3 4, so only (4,6) is the tail
    for (int q2 = 2; q2 <= 5; ++q2) {
        TocAnswer b = f.oracle({4, q2});
        CHECK_FALSE(b.whole);
        CHECK(b.h == 0);
        CHECK(b.t2 == Name{4, Connector::identity(2).phi(q2)});
    }
    TocAnswer b = f.oracle({5, 2});
    CHECK(b.h == 0);
    CHECK(b.phi == 3);
    CHECK(b.t1 == Name{5, 2});
    b = f.oracle({5, 6});
    CHECK(b.h == 1);
    CHECK(b.phi == 2);
    CHECK(b.t1 == Name{5});
    CHECK(b.t2 == Name{2});
    // relaxed query redirects to the tail of the named node
    CHECK(f.oracle({5}) == f.oracle({5, 6}));
}

TEST_CASE("enumeration at (2,2)") {
    CHECK(count_internal_nodes(2, 2) == 6);
    auto all = enumerate_tocs(2, 2, 100000, false);
    auto valid = enumerate_tocs(2, 2, 100000, true);
    CHECK(all.size() == 64);
    CHECK(valid.size() == 16);
    CHECK(enumerate_tocs(2, 1, 10, true).size() == 2);
    CHECK(enumerate_tocs(1, 3, 10, true).size() == 1);
    CHECK_THROWS_AS(enumerate_tocs(3, 2, 1000, true), std::length_error);
}

TEST_CASE("generated trees are valid") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        CHECK(ToC(2, 2, seed).is_valid());
        CHECK(ToC(2, 3, seed).is_valid());
        CHECK(ToC(3, 2, seed).is_valid());
    }
}

TEST_CASE("generator is uniform over valid trees at (2,2)") {
    std::map<std::string, int> freq;
    for (const ToC& t : enumerate_tocs(2, 2, 100000, true)) freq[signature(t)] = 0;
    const int draws = 8000;
    for (uint64_t seed = 0; seed < draws; ++seed) {
        std::string s = signature(ToC(2, 2, seed));
        REQUIRE(freq.count(s));
        ++freq[s];
    }
    double expect = draws / 16.0, chi2 = 0;
    for (auto& [s, c] : freq) chi2 += (c - expect) * (c - expect) / expect;
    // 15 degrees of freedom, p = 0.001 cutoff
    CHECK(chi2 < 37.7);
}

TEST_CASE("generation is deterministic per seed") {
    ToC a(3, 3, 77), b(3, 3, 77);
    CHECK(a.tail() == b.tail());
    CHECK(build_S(a) == build_S(b));
}

TEST_CASE("insert_d and concat_d") {
    CHECK(insert_d({1, 3}, 1, 4) == Symbols{1, 4, 3});
    CHECK(insert_d({1, 2, 3, 4}, 2, 9) == Symbols{1, 2, 9, 3, 4});
    CHECK(insert_d({5}, 1, 2) == Symbols{5});
    CHECK_THROWS(insert_d({1, 2, 3}, 2, 9));
    CHECK(concat_d({1, 2, 3}, {3, 4}, 1) == Symbols{1, 2, 3, 4});
    CHECK(concat_d({2, 1}, {2, 1}, 2) == Symbols{2, 1});
    CHECK_THROWS(concat_d({1, 2}, {3, 4}, 1));
}

TEST_CASE("nt_embed") {
    CHECK(nt_embed({4, 6}) == Symbols{8, 11});
    CHECK(nt_unembed({8, 11}) == Name{4, 6});
    CHECK(start_block(3) == Symbols{2, 2, 1});
}

TEST_CASE("build_S and build_Q") {
    ToC t(1, 1, 0);
    CHECK(build_S(t) == Symbols{1, 3, 5, 7});
    CHECK(build_Q(t) == Symbols{7, 5, 3, 1});
    ToC f = fixtures::example_toc();
    CHECK(f.is_valid());
    CHECK(f.tail() == Name{4, 6});
    CHECK(build_S(f) == fixtures::kExampleS);
    CHECK(build_Q(f) == fixtures::kExampleQ);
}

TEST_CASE("strings are non-repeating with the expected ends") {
    for (int n = 1; n <= 3; ++n)
        for (int d = 1; d <= 3; ++d)
            for (uint64_t seed = 0; seed < 3; ++seed) {
                ToC t(n, d, seed);
                Symbols s = build_S(t), q = build_Q(t);
                CHECK(is_d_non_repeating(s, d));
                CHECK(is_d_non_repeating(q, d));
                Symbols head(s.begin(), s.begin() + d), last = end_d(s, d);
                CHECK(head == start_block(d));
                CHECK(last == nt_embed(t.tail()));
                CHECK(Symbols(q.begin(), q.begin() + d) == nt_embed(t.tail()));
                CHECK(end_d(q, d) == start_block(d));
                for (int32_t x : s) CHECK((x >= 1 && x <= 4 * n + 4));
            }
}

TEST_CASE("answers from the tree match the strings, every valid (2,2) tree") {
    for (const ToC& t : enumerate_tocs(2, 2, 100000, true)) check_against_strings(t);
}

TEST_CASE("answers from the tree match the strings, random trees") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        check_against_strings(ToC(1, 1, seed));
        check_against_strings(ToC(2, 1, seed));
        check_against_strings(ToC(3, 2, seed));
        check_against_strings(ToC(2, 3, seed));
    }
    check_against_strings(ToC(1, 3, 0));
    check_against_strings(ToC(3, 3, 4));
    check_against_strings(fixtures::example_toc());
}

TEST_CASE("answers from the tree: filters") {
    ToC t(2, 2, 1);
    TocStrings ts(t);
    uint64_t before = t.queries;
    StringPair p = ts.answers({3, 5});
    CHECK(p.s.absent());
    CHECK(p.q.absent());
    p = ts.answers({2, 1});
    CHECK(p.s == StringAnswer{0, 4});
    CHECK(t.queries == before);
}
