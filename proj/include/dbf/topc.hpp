#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dbf/toc.hpp"

namespace dbf {

// block 0 is the symbol 2, block k >= 1 is (2k+1, 2k+2)
class PartialConnector {
public:
    static PartialConnector empty(int n);
    static PartialConnector from_connector(const Connector& c);

    int n() const { return n_; }
    const std::vector<std::vector<int>>& segments() const { return segs_; }
    int segment_count() const { return static_cast<int>(segs_.size()); }
    bool complete() const { return segs_.size() == 1; }

    int32_t r() const;
    std::set<int32_t> L() const;
    std::set<int32_t> R() const;
    bool is_endpoint(int32_t s) const;  // s in L, R or r
    // partner of s when both its neighbours are known; 0 otherwise
    int32_t phi(int32_t s) const;

    bool consistent_with(const Connector& c) const;
    // joins the segment ending with `end` to the one starting with `start`
    void merge(int32_t end, int32_t start);

    bool operator==(const PartialConnector& o) const { return n_ == o.n_ && segs_ == o.segs_; }
    std::string to_string() const;

private:
    int n_ = 0;
    std::vector<std::vector<int>> segs_;  // block-0 segment first
};

// algorithm-side knowledge; grafted subtrees are read from the source tree
class ToPC {
public:
    ToPC(int n, int d, const ToC* source = nullptr);

    int n() const { return n_; }
    int d() const { return d_; }
    PartialConnector at(const Name& v) const;
    bool is_grafted(const Name& v) const;  // v or an ancestor
    void graft(const Name& v);
    void merge(const Name& v, int32_t end, int32_t start);
    bool consistent(const ToC& t) const;
    bool is_valid() const;
    bool is_beta_valid(double beta) const;
    const std::set<Name>& grafted() const { return grafted_; }

private:
    int n_, d_;
    const ToC* source_;
    std::map<Name, PartialConnector> partials_;
    std::set<Name> grafted_;
};

std::vector<ToC> enumerate_consistent(const ToPC& p, int64_t cap);

struct TailCounts {
    std::map<Name, int64_t> N;  // only tails with positive count
    int64_t total = 0;
    int64_t min_count() const;
    int64_t max_count() const;
};
TailCounts count_tails(const ToPC& p, int64_t cap);

struct KnowledgeState {
    KnowledgeState(const ToC& truth, double beta);

    ToPC topc;
    double beta;
    int I = 0;
    bool done = false;
    std::vector<int64_t> A;                                // A[1..d]
    std::vector<std::vector<uint8_t>> B;                   // B[m][j]
    std::vector<std::vector<std::vector<uint8_t>>> B_mk;  // B_mk[m][k][j]

    int64_t ones(int m) const;
    int64_t ones(int m, int k) const;
    bool at_threshold(const Name& v) const;
};

struct Grant {
    enum Kind { Known, Everything, Answer } kind = Known;
    int m = 0;          // length of the query actually asked
    TocAnswer answer;   // what the oracle returned, or the implied answer
};

Grant query_and_update(KnowledgeState& ks, const ToC& truth, const Name& q);

// alpha_1 = 1, alpha_d = alpha_{d-1}^7 / (2(1-beta)^{d-1} - 1)^3
double alpha_value(int d, double beta);
struct AlphaBound {
    double alpha;
    double exp_bound;  // e^{2 * 24^{d-1} * beta}
};
// checked form; beta must lie in [0, 24^{-d}]
AlphaBound alpha_bound(int d, double beta);

struct ProbeRecord {
    int step = 0;
    bool beta_valid = false;
    int64_t tails = 0;
    int64_t min_count = 0, max_count = 0;
};

// random queries against a uniformly drawn valid tree, recording tail counts after each
std::vector<ProbeRecord> key_lemma_probe(int n, int d, double beta, uint64_t seed, int queries, int64_t cap);

}  // namespace dbf
