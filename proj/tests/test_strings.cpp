#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dbf/strings.hpp"
#include "dbf/toc.hpp"
#include "fixtures.hpp"

using namespace dbf;

TEST_CASE("is_d_non_repeating") {
    CHECK(is_d_non_repeating({2, 1, 4, 3}, 2));
    CHECK_FALSE(is_d_non_repeating({2, 1, 2, 1}, 2));
    CHECK(is_d_non_repeating({1, 3, 5, 7}, 1));
    CHECK_FALSE(is_d_non_repeating({2, 1, 4}, 2));
    CHECK_FALSE(is_d_non_repeating({1, 2, 4, 3}, 2));
}

TEST_CASE("end_d") {
    CHECK(end_d({2, 1, 4, 3}, 2) == Symbols{4, 3});
    CHECK(end_d({1, 3, 5, 7}, 1) == Symbols{7});
    CHECK(end_d(fixtures::kExampleS, 2) == Symbols{8, 11});
    CHECK_THROWS(end_d({2, 1, 2, 1}, 2));
}

TEST_CASE("string_oracle cases") {
    Symbols s{2, 1, 4, 3, 4, 5};
    CHECK(string_oracle(s, 2, {4, 3}) == StringAnswer{1, 4});
    CHECK(string_oracle({2, 1, 4, 3}, 2, {2, 1}) == StringAnswer{0, 4});
    CHECK(string_oracle({2, 1, 4, 3}, 2, {9, 9}).absent());
    CHECK(string_oracle({2, 1, 4, 3}, 2, {4, 3}) == StringAnswer{1, 0});
    IndexedString idx(s, 2);
    CHECK(idx.query(Symbols{4, 3}) == StringAnswer{1, 4});
    CHECK(idx.query(Symbols{9, 9}).absent());
}

TEST_CASE("indexed oracle agrees with a scan and is self consistent") {
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        int n = 1 + int(seed % 3), d = 1 + int(seed % 2);
        ToC t(n, d, seed);
        Symbols s = build_S(t);
        IndexedString idx(s, d, 4 * n + 4);
        int starts = 0, ends = 0;
        for (size_t k = 0; k + d <= s.size(); ++k) {
            Symbols w(s.begin() + k, s.begin() + k + d);
            StringAnswer a = idx.query(w);
            CHECK(a == string_oracle(s, d, w));
            if (k + d < s.size()) CHECK(a.right == s[k + d]);
            if (k > 0) CHECK(a.left == s[k - 1]);
            starts += a.left == 0;
            ends += a.right == 0;
        }
        CHECK(starts == 1);
        CHECK(ends == 1);
    }
}

TEST_CASE("counting wrapper is transparent") {
    IndexedString idx(fixtures::kExampleS, 2, 12);
    CountingString c(idx);
    for (int a = 1; a <= 12; ++a)
        for (int b = 1; b <= 12; ++b) CHECK(c.query(Symbols{a, b}) == idx.query(Symbols{a, b}));
    CHECK(c.count == 144);
}

TEST_CASE("string file format") {
    std::string text = format_string_file({2, 1, 4, 3}, 2, 4);
    CHECK(text == "d=2 n=4\n2 1 4 3\n");
    Symbols s;
    int d = 0, n = 0;
    REQUIRE(parse_string_file(text, s, d, n));
    CHECK(s == Symbols{2, 1, 4, 3});
    CHECK(d == 2);
    CHECK(n == 4);
    CHECK_FALSE(parse_string_file("garbage\n1 2", s, d, n));
}
