#include "dbf/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace dbf {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

SolveResult brute_force_zero(Brouwer& f, uint64_t max_evals) {
    auto t0 = Clock::now();
    SolveResult r;
    r.solver = "brute_force_zero";
    GridSpec g = f.spec();
    uint64_t cells = uint64_t(g.cells());
    for (uint64_t i = 0; i < cells; ++i) {
        if (i == max_evals) throw std::length_error("brute_force_zero: evaluation cap reached");
        Point p = lex_unrank(int64_t(i), g.d, g.n);
        ++r.queries;
        if (f.eval(p).none()) {
            r.found = true;
            r.answer = p;
            break;
        }
    }
    if (!r.found) throw std::runtime_error("brute_force_zero: no zero point");
    r.counts["ZP"] = r.queries;
    r.seconds = since(t0);
    return r;
}

SolveResult brute_force_zero_indexed(Brouwer& f, std::vector<Point> graph_vertices) {
    auto t0 = Clock::now();
    SolveResult r;
    r.solver = "brute_force_zero";
    std::sort(graph_vertices.begin(), graph_vertices.end(), lex_less);
    for (const auto& u : graph_vertices) {
        Point p = u * 4;
        if (f.eval(p).none()) {
            r.found = true;
            r.answer = p;
            r.queries = uint64_t(lex_rank(p, f.side())) + 1;
            break;
        }
    }
    if (!r.found) throw std::runtime_error("brute_force_zero: no zero point among the candidates");
    r.counts["ZP"] = r.queries;
    r.seconds = since(t0);
    return r;
}

SolveResult follow_path(GraphOracle& g) {
    auto t0 = Clock::now();
    SolveResult r;
    r.solver = "follow_path";
    uint64_t cap = uint64_t(std::min<int64_t>(g.spec().cells(), int64_t(1) << 40));
    std::unordered_set<Point, PointHash> seen;
    Point v = g.start();
    while (true) {
        if (!seen.insert(v).second) throw std::runtime_error("follow_path: cycle at " + to_string(v));
        if (seen.size() > cap) throw std::runtime_error("follow_path: walk longer than the grid");
        GraphAnswer a = g.query(v);
        ++r.queries;
        if (r.queries == 1 && (a.pred || !a.succ)) throw std::runtime_error("follow_path: start vertex is not a source");
        if (!a.succ) break;
        v = step(v, a.succ);
    }
    r.found = true;
    r.answer = v;
    r.counts["graph"] = r.queries;
    r.seconds = since(t0);
    return r;
}

SolveResult sample_solver(Brouwer& f, uint64_t budget, std::mt19937_64& rng, bool without_replacement) {
    if (budget < 1) throw std::invalid_argument("sample_solver: budget must be at least 1");
    auto t0 = Clock::now();
    SolveResult r;
    r.solver = "sample_solver";
    GridSpec g = f.spec();
    uint64_t cells = uint64_t(g.cells());
    auto try_index = [&](uint64_t i) {
        Point p = lex_unrank(int64_t(i), g.d, g.n);
        ++r.queries;
        if (f.eval(p).none()) {
            r.found = true;
            r.answer = p;
        }
        return r.found;
    };
    if (!without_replacement) {
        std::uniform_int_distribution<uint64_t> pick(0, cells - 1);
        for (uint64_t k = 0; k < budget && !try_index(pick(rng)); ++k) {
        }
    } else if (budget >= cells / 2) {
        std::vector<uint64_t> order(cells);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (uint64_t k = 0; k < std::min(budget, cells) && !try_index(order[k]); ++k) {
        }
    } else {
        std::uniform_int_distribution<uint64_t> pick(0, cells - 1);
        std::unordered_set<uint64_t> used;
        while (used.size() < budget) {
            uint64_t i = pick(rng);
            if (!used.insert(i).second) continue;
            if (try_index(i)) break;
        }
    }
    r.counts["ZP"] = r.queries;
    r.seconds = since(t0);
    return r;
}

void attach_counts(SolveResult& r, const LayerCounts& c) {
    r.counts["NT"] = c.toc;
    r.counts["ES"] = c.strings;
    r.counts["GP*"] = c.gstar;
    r.counts["GP"] = c.gprime;
    r.counts["CGP"] = c.canonical;
    r.counts["ZP"] = c.brouwer;
}

std::string to_json_line(const SolveResult& r, const GridSpec& spec, uint64_t seed) {
    nlohmann::json j{{"solver", r.solver},
                     {"spec", {{"d", spec.d}, {"n", spec.n}}},
                     {"seed", seed},
                     {"found", r.found},
                     {"answer", r.found ? to_string(r.answer) : std::string()},
                     {"queries", r.queries},
                     {"counts", r.counts},
                     {"time", r.seconds}};
    if (r.leaf) j["leaf"] = *r.leaf;
    return j.dump();
}

}  // namespace dbf
