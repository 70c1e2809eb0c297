#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dbf/graph.hpp"
#include "dbf/toc.hpp"

namespace dbf {

// f_{d,+} and f_{d,-} on {-1,0,1}^d minus the origin
Dir f_base(int d, bool plus, const Point& r);

// K_{d,pi}, B_{d,pi} and f_{d,pi} over {-2..2}^d
struct LocalPattern {
    static constexpr int8_t kOut = -1;
    static constexpr int8_t kKernel = -2;

    int d = 0;
    Dir s1, s2;
    std::vector<int8_t> cell;  // kOut, kKernel, or the index of the boundary value

    static int index(const Point& off);  // -1 outside {-2..2}^d
    int8_t at(const Point& off) const {
        int i = index(off);
        return i < 0 ? kOut : cell[i];
    }
    bool in_kernel(const Point& off) const { return at(off) == kKernel; }
    bool in_boundary(const Point& off) const { return at(off) >= 0; }
    Dir value(const Point& off) const;  // kNo off the boundary
    std::vector<Point> kernel() const;
    std::vector<Point> boundary() const;
};

// kernel and boundary as given by the definition, without values
void pattern_sets(int d, Dir s1, Dir s2, std::vector<Point>& kernel, std::vector<Point>& boundary);

// cached; throws std::invalid_argument when (s1, s2) is not canonical
const LocalPattern& local_pattern(int d, Dir s1, Dir s2);

enum class Region { Outside, Kernel, Boundary };

// discrete Brouwer function on [1, 4n+2]^d built on a canonical graph over [1, n]^d
class Brouwer {
public:
    explicit Brouwer(GraphOracle& g);
    int dim() const { return d_; }
    int64_t side() const { return 4 * g_.side() + 2; }
    GridSpec spec() const { return {d_, side()}; }
    Point start_point() const { return p_; }  // 4 u*
    GraphOracle& graph() { return g_; }

    // kNo stands for the zero value
    Dir eval(const Point& r);
    // the value off the kernel and boundary; no graph query
    Dir default_value(const Point& r) const;
    // membership in K_G or B_G; one graph query
    Region region(const Point& r);
    // lex-smallest u with ||r - 4u|| <= 2, if any
    std::optional<Point> owner(const Point& r) const;

    uint64_t evals = 0;
    uint64_t max_queries_per_eval = 0;
    // fault injection: values returned instead of the constructed ones
    std::unordered_map<Point, Dir, PointHash> overrides;

private:
    GraphOracle& g_;
    int d_;
    Point p_;
};

// zero point of the Brouwer layer back to the leaf of the source ToC
Name invert_chain(const Point& zero);
// the same chain stopped at the G* vertex F(a_m)
Point invert_to_gstar(const Point& zero);

}  // namespace dbf
