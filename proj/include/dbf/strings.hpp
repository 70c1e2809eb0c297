#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace dbf {

using Symbols = std::vector<int32_t>;

// 0 stands for "no"
struct StringAnswer {
    int32_t left = 0;
    int32_t right = 0;
    bool absent() const { return left == 0 && right == 0; }
    bool operator==(const StringAnswer& o) const { return left == o.left && right == o.right; }
};

std::string to_string(const StringAnswer& a);

bool is_d_non_repeating(const Symbols& s, int d);
Symbols end_d(const Symbols& s, int d);

// query access to a d-non-repeating string; the first d symbols are public
class StringOracle {
public:
    virtual ~StringOracle() = default;
    virtual int window() const = 0;
    virtual int alphabet() const = 0;
    virtual StringAnswer query(const int32_t* w) = 0;
    StringAnswer query(const Symbols& w) { return query(w.data()); }
};

class IndexedString : public StringOracle {
public:
    IndexedString(Symbols s, int d, int alphabet = 0);
    int window() const override { return d_; }
    int alphabet() const override { return n_; }
    using StringOracle::query;
    StringAnswer query(const int32_t* w) override;
    const Symbols& symbols() const { return s_; }

private:
    uint64_t key(const int32_t* w) const;
    Symbols s_;
    int d_;
    int n_;
    std::unordered_map<uint64_t, int64_t> pos_;
};

// direct scan, used as a test oracle
StringAnswer string_oracle(const Symbols& s, int d, const Symbols& w);

class CountingString : public StringOracle {
public:
    explicit CountingString(StringOracle& inner) : inner_(inner) {}
    int window() const override { return inner_.window(); }
    int alphabet() const override { return inner_.alphabet(); }
    using StringOracle::query;
    StringAnswer query(const int32_t* w) override {
        ++count;
        return inner_.query(w);
    }
    uint64_t count = 0;

private:
    StringOracle& inner_;
};

std::string format_string_file(const Symbols& s, int d, int n);
// returns false on malformed input
bool parse_string_file(const std::string& text, Symbols& s, int& d, int& n);

}  // namespace dbf
