#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dbf/strings.hpp"

namespace dbf {

// node names are label sequences over J_n = [2, 2n+2]; the root is empty
using Name = std::vector<int32_t>;

std::string name_key(const Name& v);
std::string to_string(const Name& v);

struct Connector {
    std::vector<int> perm;  // values in [1, n]
    Symbols str;            // 2, S_{perm(1)}, ..., S_{perm(n)}
    std::vector<int> pos;   // position of each symbol in str

    static Connector from_perm(const std::vector<int>& perm);
    static Connector from_string(const Symbols& s);
    static Connector identity(int n);
    int n() const { return static_cast<int>(perm.size()); }
    int32_t r() const { return str.back(); }
    // partner symbol; 0 for the last symbol
    int32_t phi(int32_t s) const;
};

struct TocAnswer {
    bool whole = false;
    int h = 0;
    int32_t phi = 0;
    Name t1, t2;  // subtree roots
    bool operator==(const TocAnswer& o) const {
        return whole == o.whole && h == o.h && phi == o.phi && t1 == o.t1 && t2 == o.t2;
    }
};

class ToC {
public:
    // uniform random valid ToC, materialized lazily
    ToC(int n, int d, uint64_t seed);
    // explicit connector table over every internal node
    ToC(int n, int d, std::map<Name, Connector> table);
    static ToC identity(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    uint64_t seed() const { return seed_; }
    bool is_explicit() const { return explicit_; }

    const Connector& connector(const Name& v) const;
    Name tail_name(const Name& v) const;
    Name tail() const { return tail_name({}); }
    TocAnswer oracle(const Name& q) const;  // counted
    TocAnswer answer(const Name& q) const;  // same, not counted
    bool is_valid() const;  // exhaustive walk; only for small trees

    mutable uint64_t queries = 0;

private:
    const std::optional<Name>& constraint(const Name& v) const;
    Connector generate(const Name& v) const;

    int n_, d_;
    uint64_t seed_ = 0;
    bool explicit_ = false;
    mutable std::unordered_map<std::string, Connector> conn_;
    mutable std::unordered_map<std::string, std::optional<Name>> cons_;
};

int64_t count_internal_nodes(int n, int d);
// every assignment of connectors to internal nodes; throws above cap
std::vector<ToC> enumerate_tocs(int n, int d, int64_t cap, bool valid_only);

Symbols insert_d(const Symbols& s, int d, int32_t t);
Symbols concat_d(const Symbols& a, const Symbols& b, int d);
Symbols nt_embed(const Name& p);
Name nt_unembed(const Symbols& x);
Symbols start_block(int d);  // (2,...,2,1)

Symbols build_S(const ToC& t);
Symbols build_Q(const ToC& t);
Symbols build_S(const ToC& t, const Name& root);
Symbols build_Q(const ToC& t, const Name& root);

struct StringPair {
    StringAnswer s, q;
};

// answers for S[T] and Q[T] at u, with at most one call to t.oracle
class TocStrings {
public:
    explicit TocStrings(const ToC& t);
    StringPair answers(const Symbols& u) const;
    const ToC& toc() const { return t_; }

private:
    const ToC& t_;
    std::unique_ptr<IndexedString> id_s_, id_q_;
};

// the S[T] side as a string oracle
class TocStringOracle : public StringOracle {
public:
    TocStringOracle(const ToC& t, bool use_q = false) : strings_(t), use_q_(use_q) {}
    int window() const override { return strings_.toc().d(); }
    int alphabet() const override { return 4 * strings_.toc().n() + 4; }
    using StringOracle::query;
    StringAnswer query(const int32_t* w) override;
    uint64_t max_toc_per_answer = 0;

private:
    TocStrings strings_;
    bool use_q_;
};

}  // namespace dbf
