#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dbf/brouwer.hpp"
#include "dbf/graph.hpp"
#include "dbf/pipeline.hpp"

namespace dbf {

struct Violation {
    std::string kind;
    std::vector<Point> points;
    std::string detail;
};

struct GraphReport {
    GridSpec grid;
    uint64_t checked = 0;  // vertices looked at
    uint64_t support = 0;  // vertices with a nonempty answer
    std::vector<Point> starts, ends;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_json() const;
};

// every vertex of the grid; canonical also checks each answer against S^d
GraphReport audit_graph(GraphOracle& g, bool canonical, uint64_t max_cells);
// the answers at the listed vertices; anything unlisted must answer ("no","no")
GraphReport audit_graph_support(GraphOracle& g, const std::vector<Point>& support, bool canonical);

using AnswerTable = std::unordered_map<Point, GraphAnswer, PointHash>;

// vertices touched by the staircase paths of the stack's explicit string
std::vector<Point> gstar_support(ReductionStack& st);
// nonempty answers of `layer` around gamma(u) + [-radius, radius]^d for each u in inner_support
AnswerTable layer_table(GraphOracle& layer, const std::vector<Point>& inner_support, Point (*gamma)(const Point&),
                        int radius);
std::vector<Point> sorted_keys(const AnswerTable& t);

// nonempty answers of every graph layer; the canonical table is computed over the G' snapshot
struct Support {
    std::vector<Point> gstar;
    std::unique_ptr<ExplicitGraph> gprime, canonical;
};
Support stack_support(ReductionStack& st);

struct BrouwerReport {
    GridSpec grid;
    uint64_t evaluated = 0;
    uint64_t max_queries_per_eval = 0;
    uint64_t default_cases = 0;  // representative points in the default-region check
    Point expected_zero;
    std::vector<Point> zero_points;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty() && zero_points.size() == 1 && zero_points[0] == expected_zero; }
    std::string to_json() const;
};

// literal scan of the whole grid
BrouwerReport audit_brouwer_full(Brouwer& f, const Point& canonical_end, uint64_t max_cells);
// exact audit that only evaluates around the canonical support; the rest of the grid takes the
// default value, which is checked on representative coordinates
BrouwerReport audit_brouwer_support(Brouwer& f, const std::vector<Point>& canonical_support, const Point& canonical_end);

// the whole chain for one stack: graph layers and the Brouwer function
struct StackReport {
    GraphReport gprime, canonical;
    BrouwerReport brouwer;
    Point canonical_end;
    uint64_t spot_checks = 0;
    std::vector<Violation> violations;  // snapshot disagreements with the live chain
    bool ok() const { return gprime.ok() && canonical.ok() && brouwer.ok() && violations.empty(); }
    std::string to_json() const;
};

StackReport audit_stack(ReductionStack& st, uint64_t spot_checks, uint64_t seed);

}  // namespace dbf
