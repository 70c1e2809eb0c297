#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dbf/lattice.hpp"

using namespace dbf;

TEST_CASE("lex_cmp") {
    CHECK(lex_cmp({1, 2}, {1, 3}) == Ordering::Less);
    CHECK(lex_cmp({2, 1}, {1, 9}) == Ordering::Greater);
    CHECK(lex_cmp({4, 4}, {4, 4}) == Ordering::Equal);
    CHECK_THROWS_AS(lex_cmp({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("linf_dist") {
    CHECK(linf_dist({1, 1}, {2, 3}) == 2);
    CHECK(linf_dist({5, 5}, {5, 5}) == 0);
    CHECK(linf_dist({1, 4, 2}, {3, 4, 1}) == 2);
    CHECK_THROWS(linf_dist({1}, {1, 2}));
}

TEST_CASE("step") {
    CHECK(step({1, 1}, E(2)) == Point{1, 2});
    CHECK(step({3, 3}, -E(1)) == Point{2, 3});
    CHECK(step({1, 1, 1}, E(3)) == Point{1, 1, 2});
}

TEST_CASE("direction order is vector lex order") {
    for (int d = 1; d <= 4; ++d) {
        auto dirs = all_dirs(d);
        REQUIRE(dirs.size() == size_t(2 * d));
        for (size_t i = 0; i + 1 < dirs.size(); ++i) {
            CHECK(lex_less(dirs[i].vec(d), dirs[i + 1].vec(d)));
            CHECK(dir_lex_less(dirs[i], dirs[i + 1]));
        }
    }
    CHECK(dir_lex_less(E(2), E(1)));
    CHECK(dir_lex_less(-E(1), -E(2)));
}

TEST_CASE("serialization round trip") {
    CHECK(to_string(Point{1, 2, 3}) == "(1,2,3)");
    CHECK(parse_point("(1,-2,3)") == Point{1, -2, 3});
    CHECK(to_string(E(3)) == "+e3");
    CHECK(to_string(-E(1)) == "-e1");
    CHECK(parse_dir("-e1") == -E(1));
    CHECK(parse_dir("no").none());
    CHECK_THROWS(parse_dir("x1"));
}

TEST_CASE("overflow is checked") {
    Point p{1 << 30, 1};
    CHECK_THROWS_AS(p * 4, std::overflow_error);
}

TEST_CASE("rank and box enumeration agree") {
    int64_t i = 0;
    bool ok = true;
    for_each_in_box(3, 1, 4, [&](const Point& p) {
        ok = ok && lex_rank(p, 4) == i && lex_unrank(i, 3, 4) == p;
        ++i;
    });
    CHECK(ok);
    CHECK(i == 64);
}

TEST_CASE("properties on random points") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coord(-20, 20), dim(1, 5);
    for (int it = 0; it < 2000; ++it) {
        int d = dim(rng);
        Point a(d), b(d), c(d);
        for (int i = 0; i < d; ++i) {
            a[i] = coord(rng);
            b[i] = coord(rng) / 4 + a[i] / 2;
            c[i] = coord(rng);
        }
        Ordering ab = lex_cmp(a, b), ba = lex_cmp(b, a);
        CHECK((ab == Ordering::Equal) == (ba == Ordering::Equal));
        CHECK((ab == Ordering::Less) == (ba == Ordering::Greater));
        if (lex_less(a, b) && lex_less(b, c)) CHECK(lex_less(a, c));
        CHECK(linf_dist(a, b) == linf_dist(b, a));
        CHECK(linf_dist(a, c) <= linf_dist(a, b) + linf_dist(b, c));
        for (Dir s : all_dirs(d)) CHECK(step(step(a, s), -s) == a);
    }
}
