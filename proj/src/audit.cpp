#include "dbf/audit.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace dbf {

using nlohmann::json;

namespace {

constexpr size_t kMaxViolations = 100;

void add(std::vector<Violation>& out, std::string kind, std::vector<Point> pts, std::string detail = "") {
    if (out.size() < kMaxViolations) out.push_back({std::move(kind), std::move(pts), std::move(detail)});
}

json points_json(const std::vector<Point>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(to_string(p));
    return a;
}

json violations_json(const std::vector<Violation>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back({{"kind", v.kind}, {"points", points_json(v.points)}, {"detail", v.detail}});
    return a;
}

json grid_json(const GridSpec& g) { return {{"d", g.d}, {"n", g.n}}; }

void check_table(GraphReport& rep, const AnswerTable& table, const Point& start, bool canonical) {
    int d = rep.grid.d;
    auto lookup = [&](const Point& v) {
        auto it = table.find(v);
        return it == table.end() ? GraphAnswer{} : it->second;
    };
    for (const auto& v : sorted_keys(table)) {
        GraphAnswer a = table.at(v);
        ++rep.support;
        if (a.pred) {
            Point w = step(v, -a.pred);
            if (!rep.grid.contains(w))
                add(rep.violations, "out_of_grid", {v, w}, "pred " + to_string(a.pred));
            else if (lookup(w).succ != a.pred)
                add(rep.violations, "inconsistent", {v, w}, to_string(a) + " vs " + to_string(lookup(w)));
        } else {
            rep.starts.push_back(v);
        }
        if (a.succ) {
            Point w = step(v, a.succ);
            if (!rep.grid.contains(w))
                add(rep.violations, "out_of_grid", {v, w}, "succ " + to_string(a.succ));
            else if (lookup(w).pred != a.succ)
                add(rep.violations, "inconsistent", {v, w}, to_string(a) + " vs " + to_string(lookup(w)));
        } else {
            rep.ends.push_back(v);
        }
        if (a.pred && a.succ && a.pred == -a.succ) add(rep.violations, "canceling", {v}, to_string(a));
        if (canonical && !is_canonical_pair(d, a.pred, a.succ)) add(rep.violations, "not_canonical", {v}, to_string(a));
    }
    if (rep.starts.size() != 1 || rep.starts[0] != start)
        add(rep.violations, "start", rep.starts, "expected exactly " + to_string(start));
    if (rep.ends.size() != 1) add(rep.violations, "end", rep.ends, "expected exactly one end");
}

bool opposed(Dir a, Dir b) { return a && b && a == -b; }

bool bounded(const GridSpec& g, const Point& r, Dir v) { return v.none() || g.contains(step(r, v)); }

}  // namespace

std::string GraphReport::to_json() const {
    json j{{"grid", grid_json(grid)},
           {"checked", checked},
           {"support", support},
           {"starts", points_json(starts)},
           {"ends", points_json(ends)},
           {"violations", violations_json(violations)},
           {"ok", ok()}};
    return j.dump();
}

GraphReport audit_graph(GraphOracle& g, bool canonical, uint64_t max_cells) {
    GraphReport rep;
    rep.grid = g.spec();
    if (uint64_t(rep.grid.cells()) > max_cells) throw std::length_error("audit_graph: grid exceeds the cell cap");
    AnswerTable table;
    for_each_in_box(g.dim(), 1, int32_t(g.side()), [&](const Point& v) {
        ++rep.checked;
        GraphAnswer a = g.query(v);
        if (!a.empty()) table.emplace(v, a);
    });
    check_table(rep, table, g.start(), canonical);
    return rep;
}

GraphReport audit_graph_support(GraphOracle& g, const std::vector<Point>& support, bool canonical) {
    GraphReport rep;
    rep.grid = g.spec();
    AnswerTable table;
    for (const auto& v : support) {
        ++rep.checked;
        if (!rep.grid.contains(v)) {
            add(rep.violations, "out_of_grid", {v}, "listed vertex");
            continue;
        }
        GraphAnswer a = g.query(v);
        if (!a.empty()) table.emplace(v, a);
    }
    check_table(rep, table, g.start(), canonical);
    return rep;
}

std::vector<Point> gstar_support(ReductionStack& st) {
    std::unordered_set<Point, PointHash> seen;
    std::vector<Point> out;
    auto put = [&](const Point& p) {
        if (seen.insert(p).second) out.push_back(p);
    };
    for (const auto& [tail, s] : staircase_edges(st.explicit_string(), st.window())) {
        put(tail);
        put(step(tail, s));
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

AnswerTable layer_table(GraphOracle& layer, const std::vector<Point>& inner_support, Point (*gamma)(const Point&),
                        int radius) {
    GridSpec grid = layer.spec();
    int d = layer.dim();
    std::unordered_set<Point, PointHash> seen;
    AnswerTable out;
    for (const auto& u : inner_support) {
        Point c = gamma(u), lo(d), hi(d);
        for (int i = 0; i < d; ++i) {
            lo[i] = std::max<int32_t>(1, c[i] - radius);
            hi[i] = int32_t(std::min<int64_t>(grid.n, c[i] + radius));
        }
        for_each_in_box(lo, hi, [&](const Point& v) {
            if (!seen.insert(v).second) return;
            GraphAnswer a = layer.query(v);
            if (!a.empty()) out.emplace(v, a);
        });
    }
    return out;
}

std::vector<Point> sorted_keys(const AnswerTable& t) {
    std::vector<Point> out;
    out.reserve(t.size());
    for (const auto& kv : t) out.push_back(kv.first);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

Support stack_support(ReductionStack& st) {
    Support s;
    s.gstar = gstar_support(st);
    GPrime& gp = st.gprime();
    s.gprime = std::make_unique<ExplicitGraph>(gp.dim(), gp.side(), gp.start(),
                                               layer_table(gp, s.gstar, &GPrime::gamma, 2));
    Canonical over(*s.gprime);
    s.canonical = std::make_unique<ExplicitGraph>(over.dim(), over.side(), over.start(),
                                                  layer_table(over, sorted_keys(s.gprime->table()), &Canonical::gamma, 3));
    return s;
}

std::string BrouwerReport::to_json() const {
    json j{{"grid", grid_json(grid)},
           {"violations", violations_json(violations)},
           {"zero_points", points_json(zero_points)},
           {"expected_zero", to_string(expected_zero)},
           {"query_stats",
            {{"evaluated", evaluated}, {"max_queries_per_eval", max_queries_per_eval}, {"default_cases", default_cases}}},
           {"ok", ok()}};
    return j.dump();
}

BrouwerReport audit_brouwer_full(Brouwer& f, const Point& canonical_end, uint64_t max_cells) {
    BrouwerReport rep;
    rep.grid = f.spec();
    rep.expected_zero = canonical_end * 4;
    int d = f.dim();
    int64_t side = f.side();
    if (uint64_t(rep.grid.cells()) > max_cells) throw std::length_error("audit_brouwer_full: grid exceeds the cell cap");
    std::vector<int8_t> val(rep.grid.cells());
    int64_t idx = 0;
    for_each_in_box(d, 1, int32_t(side), [&](const Point& r) {
        Dir v = f.eval(r);
        ++rep.evaluated;
        val[idx++] = v.none() ? -1 : int8_t(v.index());
        if (v.none()) rep.zero_points.push_back(r);
        if (!bounded(rep.grid, r, v)) add(rep.violations, "unbounded", {r}, to_string(v));
    });
    std::vector<Point> forward;
    for_each_in_box(d, -1, 1, [&](const Point& s) {
        for (int i = 0; i < d; ++i) {
            if (s[i] > 0) forward.push_back(s);
            if (s[i] != 0) break;
        }
    });
    auto dir_at = [&](int64_t i) { return val[i] < 0 ? kNo : Dir::from_index(val[i]); };
    idx = 0;
    for_each_in_box(d, 1, int32_t(side), [&](const Point& r) {
        Dir a = dir_at(idx++);
        if (a.none()) return;
        for (const auto& s : forward) {
            Point q = r + s;
            if (!rep.grid.contains(q)) continue;
            Dir b = dir_at(lex_rank(q, side));
            if (opposed(a, b)) add(rep.violations, "not_direction_preserving", {r, q}, to_string(a) + " vs " + to_string(b));
        }
    });
    rep.max_queries_per_eval = f.max_queries_per_eval;
    if (rep.max_queries_per_eval > 1) add(rep.violations, "query_amplification", {}, "more than one graph query per evaluation");
    return rep;
}

BrouwerReport audit_brouwer_support(Brouwer& f, const std::vector<Point>& canonical_support, const Point& canonical_end) {
    BrouwerReport rep;
    rep.grid = f.spec();
    rep.expected_zero = canonical_end * 4;
    int d = f.dim();
    const GridSpec grid = rep.grid;

    std::vector<Point> offs;
    for_each_in_box(d, -3, 3, [&](const Point& o) { offs.push_back(o); });
    std::vector<int> steps;
    std::vector<Point> step_vecs;
    for_each_in_box(d, -1, 1, [&](const Point& s) {
        if (linf_norm(s) == 0) return;
        int k = 0;
        for (int i = 0; i < d; ++i) k = k * 7 + s[i];
        steps.push_back(k);
        step_vecs.push_back(s);
    });
    std::vector<int8_t> val(offs.size());
    std::vector<uint8_t> inside(offs.size());
    std::set<std::pair<int64_t, int64_t>> reported;
    std::set<Point, decltype(&lex_less)> zeros(&lex_less);
    const int64_t side = f.side();

    // injected values get the same neighborhood scan as the support
    std::vector<Point> centers;
    for (const auto& u : canonical_support) centers.push_back(u * 4);
    for (const auto& [r, v] : f.overrides) centers.push_back(r);
    for (const auto& base : centers) {
        for (size_t i = 0; i < offs.size(); ++i) {
            Point r = base + offs[i];
            inside[i] = grid.contains(r);
            if (!inside[i]) continue;
            Dir v = f.eval(r);
            ++rep.evaluated;
            val[i] = v.none() ? -1 : int8_t(v.index());
        }
        for (size_t i = 0; i < offs.size(); ++i) {
            if (!inside[i] || linf_norm(offs[i]) > 2) continue;
            Point r = base + offs[i];
            Dir a = val[i] < 0 ? kNo : Dir::from_index(val[i]);
            if (a.none()) {
                zeros.insert(r);
                continue;
            }
            if (!bounded(grid, r, a)) add(rep.violations, "unbounded", {r}, to_string(a));
            for (size_t k = 0; k < steps.size(); ++k) {
                size_t j = size_t(int64_t(i) + steps[k]);
                if (!inside[j] || val[j] < 0) continue;
                Dir b = Dir::from_index(val[j]);
                if (!opposed(a, b)) continue;
                Point q = base + offs[j];
                int64_t x = lex_rank(r, side), y = lex_rank(q, side);
                if (reported.insert({std::min(x, y), std::max(x, y)}).second)
                    add(rep.violations, "not_direction_preserving", {r, q}, to_string(a) + " vs " + to_string(b));
            }
        }
    }
    rep.zero_points.assign(zeros.begin(), zeros.end());

    // away from the support every value is the default one; check it on representative coordinates
    Point p = f.start_point();
    std::vector<std::vector<int32_t>> reps(d);
    for (int k = 0; k < d; ++k) {
        std::set<int32_t> xs;
        auto put = [&](int64_t x) {
            if (x >= 1 && x <= side) xs.insert(int32_t(x));
        };
        if (k < d - 1) {
            for (int64_t x = 1; x <= 3; ++x) put(x);
            for (int64_t x = p[k] - 5; x <= p[k] + 5; ++x) put(x);
        } else {
            for (int64_t x = 1; x <= 8; ++x) put(x);
        }
        for (int64_t x = side - 2; x <= side; ++x) put(x);
        reps[k].assign(xs.begin(), xs.end());
    }
    std::vector<size_t> digit(d, 0);
    while (true) {
        Point r(d);
        for (int k = 0; k < d; ++k) r[k] = reps[k][digit[k]];
        if (linf_dist(r, p) > 2) {
            ++rep.default_cases;
            Dir a = f.default_value(r);
            if (!bounded(grid, r, a)) add(rep.violations, "unbounded_default", {r}, to_string(a));
            for (const auto& s : step_vecs) {
                Point q = r + s;
                if (!grid.contains(q) || linf_dist(q, p) <= 2) continue;
                Dir b = f.default_value(q);
                if (opposed(a, b)) add(rep.violations, "default_not_direction_preserving", {r, q}, to_string(a) + " vs " + to_string(b));
            }
        }
        int k = d - 1;
        while (k >= 0 && ++digit[k] == reps[k].size()) digit[k--] = 0;
        if (k < 0) break;
    }
    rep.max_queries_per_eval = f.max_queries_per_eval;
    if (rep.max_queries_per_eval > 1) add(rep.violations, "query_amplification", {}, "more than one graph query per evaluation");
    return rep;
}

std::string StackReport::to_json() const {
    json j{{"gprime", json::parse(gprime.to_json())},
           {"canonical", json::parse(canonical.to_json())},
           {"brouwer", json::parse(brouwer.to_json())},
           {"canonical_end", to_string(canonical_end)},
           {"spot_checks", spot_checks},
           {"violations", violations_json(violations)},
           {"ok", ok()}};
    return j.dump();
}

StackReport audit_stack(ReductionStack& st, uint64_t spot_checks, uint64_t seed) {
    StackReport rep;
    Support sup = stack_support(st);
    std::vector<Point> gp_keys = sorted_keys(sup.gprime->table());
    std::vector<Point> c_keys = sorted_keys(sup.canonical->table());
    rep.gprime = audit_graph_support(*sup.gprime, gp_keys, false);
    rep.canonical = audit_graph_support(*sup.canonical, c_keys, true);
    if (rep.canonical.ends.size() != 1) {
        add(rep.violations, "no_canonical_end", rep.canonical.ends);
        return rep;
    }
    rep.canonical_end = rep.canonical.ends[0];
    Brouwer frozen(*sup.canonical);
    frozen.overrides = st.brouwer().overrides;
    rep.brouwer = audit_brouwer_support(frozen, c_keys, rep.canonical_end);

    // the snapshots must agree with the live chain
    std::mt19937_64 rng(seed);
    int d = st.dim();
    auto random_point = [&](int64_t side, const std::vector<Point>& near, int scale) {
        Point r(d);
        if (!near.empty() && rng() % 2) {
            Point c = near[rng() % near.size()] * scale;
            for (int i = 0; i < d; ++i) r[i] = c[i] + int32_t(rng() % 7) - 3;
            for (int i = 0; i < d; ++i) r[i] = std::clamp<int32_t>(r[i], 1, int32_t(side));
        } else {
            for (int i = 0; i < d; ++i) r[i] = 1 + int32_t(rng() % uint64_t(side));
        }
        return r;
    };
    for (uint64_t k = 0; k < spot_checks; ++k) {
        Point v = random_point(st.gprime().side(), gp_keys, 1);
        if (st.gprime().query(v) != sup.gprime->query(v)) add(rep.violations, "gprime_snapshot", {v});
        Point w = random_point(st.canonical().side(), c_keys, 1);
        if (st.canonical().query(w) != sup.canonical->query(w)) add(rep.violations, "canonical_snapshot", {w});
        Point r = random_point(st.brouwer().side(), c_keys, 4);
        if (st.brouwer().eval(r) != frozen.eval(r)) add(rep.violations, "brouwer_snapshot", {r});
        ++rep.spot_checks;
    }
    return rep;
}

}  // namespace dbf
