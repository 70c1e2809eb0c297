#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dbf/brouwer.hpp"
#include "dbf/graph.hpp"
#include "dbf/pipeline.hpp"

namespace dbf {

struct SolveResult {
    std::string solver;
    bool found = false;
    Point answer;               // zero point, or ending vertex for follow_path
    std::optional<Name> leaf;   // filled in by callers that invert the answer
    uint64_t queries = 0;       // queries charged to the solved layer
    std::map<std::string, uint64_t> counts;  // per layer
    double seconds = 0;
};

// lex-order scan; stops at the first zero. Throws when none is found within max_evals.
SolveResult brute_force_zero(Brouwer& f, uint64_t max_evals);
// the same scan restricted to the candidate points Psi(u), u in graph_vertices; the charged
// query count is the lex position of the zero, as the literal scan would see it
SolveResult brute_force_zero_indexed(Brouwer& f, std::vector<Point> graph_vertices);
// walks successors from the start; throws on a repeated vertex
SolveResult follow_path(GraphOracle& g);
// budget uniform points, optionally without replacement; failure is a result
SolveResult sample_solver(Brouwer& f, uint64_t budget, std::mt19937_64& rng, bool without_replacement);

void attach_counts(SolveResult& r, const LayerCounts& c);
std::string to_json_line(const SolveResult& r, const GridSpec& spec, uint64_t seed);

}  // namespace dbf
