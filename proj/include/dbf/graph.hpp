#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dbf/lattice.hpp"
#include "dbf/strings.hpp"

namespace dbf {

struct GraphAnswer {
    Dir pred, succ;  // kNo for "no"
    bool empty() const { return pred.none() && succ.none(); }
    bool operator==(const GraphAnswer& o) const { return pred == o.pred && succ == o.succ; }
    bool operator!=(const GraphAnswer& o) const { return !(*this == o); }
};

std::string to_string(const GraphAnswer& a);

// query access to a grid PPAD graph over [1, side]^dim
class GraphOracle {
public:
    virtual ~GraphOracle() = default;
    virtual int dim() const = 0;
    virtual int64_t side() const = 0;
    virtual Point start() const = 0;
    GraphAnswer query(const Point& v) {
        ++queries;
        return compute(v);
    }
    GridSpec spec() const { return {dim(), side()}; }
    uint64_t queries = 0;

protected:
    virtual GraphAnswer compute(const Point& v) = 0;
};

// answers from a table; absent vertices are ("no","no")
class ExplicitGraph : public GraphOracle {
public:
    ExplicitGraph(int d, int64_t side, Point start, std::unordered_map<Point, GraphAnswer, PointHash> table)
        : d_(d), side_(side), start_(start), table_(std::move(table)) {}
    // from a list of directed edges (tail, direction)
    static ExplicitGraph from_edges(int d, int64_t side, Point start, const std::vector<std::pair<Point, Dir>>& edges);
    int dim() const override { return d_; }
    int64_t side() const override { return side_; }
    Point start() const override { return start_; }
    const std::unordered_map<Point, GraphAnswer, PointHash>& table() const { return table_; }

protected:
    GraphAnswer compute(const Point& v) override;

private:
    int d_;
    int64_t side_;
    Point start_;
    std::unordered_map<Point, GraphAnswer, PointHash> table_;
};

// memoizing pass-through; the inner counter only sees cache misses
class CachedGraph : public GraphOracle {
public:
    explicit CachedGraph(GraphOracle& inner) : inner_(inner) {}
    int dim() const override { return inner_.dim(); }
    int64_t side() const override { return inner_.side(); }
    Point start() const override { return inner_.start(); }
    size_t cached() const { return cache_.size(); }

protected:
    GraphAnswer compute(const Point& v) override;

private:
    GraphOracle& inner_;
    std::unordered_map<Point, GraphAnswer, PointHash> cache_;
};

// ---- strings to G* ----

// (a_1, a_1+a_2, ..., a_{d-2}+a_{d-1}, a_{d-1}); (a, a) for a single symbol
Point f_embed(const Symbols& a);
// inverse of f_embed; throws when the point is not in the image
Symbols f_unembed(const Point& v);

bool consistent(int64_t v, int s, int64_t m1, int64_t m2);

// whether (v, v + s e_k) lies on the staircase path from F(a) to F(b)
bool edge_in_P(const Point& v, int k, int s, const Symbols& a, const Symbols& b);

// every directed edge (tail, direction) of the union of staircase paths of a string
std::vector<std::pair<Point, Dir>> staircase_edges(const Symbols& s, int window);

struct HSets {
    std::vector<Dir> in, out;  // H_I and H_O, each in direction lex order
    bool empty() const { return in.empty() && out.empty(); }
    bool operator==(const HSets& o) const { return in == o.in && out == o.out; }
};

// generalized grid PPAD graph over [1, 2N]^{w+1} from a w-window string oracle
class GStar {
public:
    // first_block: the public first w symbols of the string
    GStar(StringOracle& s, const Symbols& first_block);
    int dim() const { return d_; }
    int64_t side() const { return 2 * int64_t(n_); }
    Point start() const { return start_; }
    HSets hsets(const Point& v);  // counted
    bool has_edge(const Point& tail, Dir s);  // uncached, uncounted helper

    uint64_t queries = 0;         // hsets calls
    uint64_t string_queries = 0;  // distinct string queries issued
    uint64_t max_string_per_call = 0;

private:
    bool edge(const Point& x, int k, int s, std::map<Symbols, StringAnswer>& cache);
    StringAnswer ask(const Symbols& w, std::map<Symbols, StringAnswer>& cache);

    StringOracle& s_;
    int d_;
    int n_;
    Point start_;
};

// gadget on {-1,0,1}^d routing each incoming direction to an outgoing one
std::vector<std::pair<Point, Point>> gadget_edges(int d, std::vector<Dir> h1, std::vector<Dir> h2);

// grid PPAD graph over [1, 8N+1]^d, one G* call per query
class GPrime : public GraphOracle {
public:
    explicit GPrime(GStar& g) : g_(g) {}
    int dim() const override { return g_.dim(); }
    int64_t side() const override { return 4 * g_.side() + 1; }
    Point start() const override;
    static Point gamma(const Point& u);  // 4u - 1
    // lex-smallest G* vertex u with ||v - gamma(u)|| <= 2
    Point owner(const Point& v) const;

protected:
    GraphAnswer compute(const Point& v) override;

private:
    GStar& g_;
};

// ---- canonical graphs ----

bool is_canonical_pair(int d, Dir s1, Dir s2);
std::vector<std::pair<Dir, Dir>> canonical_pairs(int d);

using LocalPath = std::vector<Point>;

LocalPath p_end(int d, Dir s);
LocalPath p_move(int d, Dir s1, Dir s2);

// canonical grid PPAD graph over [1, 6M+1]^d, one inner call per query
class Canonical : public GraphOracle {
public:
    explicit Canonical(GraphOracle& inner);
    int dim() const override { return inner_.dim(); }
    int64_t side() const override { return 6 * inner_.side() + 1; }
    Point start() const override;
    static Point gamma(const Point& u);  // 6u - 2
    Point owner(const Point& v) const;
    // local path drawn around gamma(u) for an inner vertex u with answer a
    const LocalPath* local_path(const Point& u, const GraphAnswer& a) const;

protected:
    GraphAnswer compute(const Point& v) override;

private:
    GraphOracle& inner_;
    Point inner_start_;
    std::map<std::pair<int, int>, LocalPath> moves_;
    std::map<int, LocalPath> ends_;
};

}  // namespace dbf
