#include "dbf/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace dbf {

std::string to_string(const GraphAnswer& a) {
    auto f = [](Dir s) { return s.none() ? std::string("no") : to_string(s); };
    return "(" + f(a.pred) + "," + f(a.succ) + ")";
}

ExplicitGraph ExplicitGraph::from_edges(int d, int64_t side, Point start,
                                        const std::vector<std::pair<Point, Dir>>& edges) {
    std::unordered_map<Point, GraphAnswer, PointHash> t;
    for (const auto& [tail, s] : edges) {
        Point head = step(tail, s);
        auto& a = t[tail];
        auto& b = t[head];
        if (a.succ || b.pred) throw std::invalid_argument("degree exceeds one");
        a.succ = s;
        b.pred = s;
    }
    return ExplicitGraph(d, side, start, std::move(t));
}

GraphAnswer ExplicitGraph::compute(const Point& v) {
    auto it = table_.find(v);
    return it == table_.end() ? GraphAnswer{} : it->second;
}

GraphAnswer CachedGraph::compute(const Point& v) {
    auto it = cache_.find(v);
    if (it != cache_.end()) return it->second;
    GraphAnswer a = inner_.query(v);
    cache_.emplace(v, a);
    return a;
}

// ---- strings to G* ----

Point f_embed(const Symbols& a) {
    int w = static_cast<int>(a.size());
    if (w < 1) throw std::invalid_argument("f_embed: empty point");
    Point p(w + 1);
    if (w == 1) {
        p[0] = p[1] = a[0];
        return p;
    }
    p[0] = a[0];
    for (int i = 1; i < w; ++i) p[i] = a[i - 1] + a[i];
    p[w] = a[w - 1];
    return p;
}

Symbols f_unembed(const Point& v) {
    int w = v.d - 1;
    if (w < 1) throw std::invalid_argument("f_unembed: dimension below 2");
    if (w == 1) {
        if (v[0] != v[1]) throw std::invalid_argument("f_unembed: not in the image");
        return {v[0]};
    }
    Symbols a(w);
    a[0] = v[0];
    for (int i = 1; i < w; ++i) a[i] = v[i] - a[i - 1];
    if (a[w - 1] != v[w]) throw std::invalid_argument("f_unembed: not in the image");
    return a;
}

bool consistent(int64_t v, int s, int64_t m1, int64_t m2) {
    return (s == 1 && m1 <= v && v < m2) || (s == -1 && m2 < v && v <= m1);
}

bool edge_in_P(const Point& v, int k, int s, const Symbols& a, const Symbols& b) {
    int d = v.d, w = d - 1;
    if (int(a.size()) != w || int(b.size()) != w) throw std::invalid_argument("edge_in_P: block size");
    if (a == b) throw std::invalid_argument("edge_in_P: equal endpoints");
    if (k < 1 || k > d) throw std::invalid_argument("edge_in_P: axis");
    // 1-based views
    auto A = [&](int i) { return int64_t(a[i - 1]); };
    auto B = [&](int i) { return int64_t(b[i - 1]); };
    auto V = [&](int i) { return int64_t(v[i - 1]); };
    auto suffix_ok = [&](int lo) {  // a_lo..a_w from the last coordinates
        if (A(w) != V(d)) return false;
        for (int j = w - 1; j >= lo; --j)
            if (A(j) != V(j + 1) - A(j + 1)) return false;
        return true;
    };
    auto prefix_ok = [&](int hi) {  // b_1..b_hi from the first coordinates
        if (hi < 1) return true;
        if (B(1) != V(1)) return false;
        for (int i = 2; i <= hi; ++i)
            if (B(i) != V(i) - B(i - 1)) return false;
        return true;
    };
    if (k == 1) return consistent(V(1), s, A(1), B(1)) && suffix_ok(1);
    if (k == d) return consistent(V(d), s, A(w), B(w)) && prefix_ok(w);
    return consistent(V(k), s, A(k - 1) + A(k), B(k - 1) + B(k)) && suffix_ok(k) && prefix_ok(k - 1);
}

std::vector<std::pair<Point, Dir>> staircase_edges(const Symbols& s, int window) {
    std::vector<std::pair<Point, Dir>> out;
    int w = window, d = w + 1;
    size_t m = s.size() / w;
    for (size_t t = 0; t + 1 < m; ++t) {
        Symbols a(s.begin() + t * w, s.begin() + (t + 1) * w);
        Symbols b(s.begin() + (t + 1) * w, s.begin() + (t + 2) * w);
        Point cur = f_embed(a), to = f_embed(b);
        for (int i = 0; i < d; ++i) {
            if (cur[i] == to[i]) continue;
            Dir dir(i + 1, to[i] > cur[i] ? 1 : -1);
            while (cur[i] != to[i]) {
                out.emplace_back(cur, dir);
                cur = step(cur, dir);
            }
        }
    }
    return out;
}

GStar::GStar(StringOracle& s, const Symbols& first_block)
    : s_(s), d_(s.window() + 1), n_(s.alphabet()), start_(f_embed(first_block)) {
    if (int(first_block.size()) != s.window()) throw std::invalid_argument("GStar: first block size");
}

StringAnswer GStar::ask(const Symbols& w, std::map<Symbols, StringAnswer>& cache) {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    ++string_queries;
    StringAnswer a = s_.query(w);
    cache.emplace(w, a);
    return a;
}

bool GStar::edge(const Point& x, int k, int s, std::map<Symbols, StringAnswer>& cache) {
    int d = d_, w = d - 1;
    auto X = [&](int i) { return int64_t(x[i - 1]); };
    auto ok = [&](int64_t y) { return y >= 1 && y <= n_; };
    std::vector<int64_t> a(w + 1), b(w + 1);
    Symbols q;
    if (k == 1 || (k > 1 && k < d)) {
        int lo = k == 1 ? 1 : k;
        a[w] = X(d);
        for (int j = w - 1; j >= lo; --j) a[j] = X(j + 1) - a[j + 1];
        for (int j = lo; j <= w; ++j) {
            if (!ok(a[j])) return false;
            q.push_back(int32_t(a[j]));
        }
        if (a[w] % 2 == 0) return false;
    }
    if (k > 1) {
        int hi = k == d ? w : k - 1;
        b[1] = X(1);
        for (int i = 2; i <= hi; ++i) b[i] = X(i) - b[i - 1];
        for (int i = 1; i <= hi; ++i) {
            if (!ok(b[i])) return false;
            q.push_back(int32_t(b[i]));
        }
        if (k == d && b[w] % 2 == 0) return false;
    }
    StringAnswer ans = ask(q, cache);
    if (k == 1) return ans.right && consistent(X(1), s, a[1], ans.right);
    if (k == d) return ans.left && consistent(X(d), s, ans.left, b[w]);
    return ans.left && ans.right && consistent(X(k), s, ans.left + a[k], b[k - 1] + ans.right);
}

HSets GStar::hsets(const Point& v) {
    ++queries;
    uint64_t before = string_queries;
    std::map<Symbols, StringAnswer> cache;
    GridSpec g{d_, side()};
    HSets h;
    for (int k = 1; k <= d_; ++k) {
        for (int s : {-1, 1}) {
            Dir dir(k, s);
            if (g.contains(step(v, dir)) && edge(v, k, s, cache)) h.out.push_back(dir);
            Point t = step(v, -dir);
            if (g.contains(t) && edge(t, k, s, cache)) h.in.push_back(dir);
        }
    }
    std::sort(h.in.begin(), h.in.end(), dir_lex_less);
    std::sort(h.out.begin(), h.out.end(), dir_lex_less);
    max_string_per_call = std::max(max_string_per_call, string_queries - before);
    return h;
}

bool GStar::has_edge(const Point& tail, Dir s) {
    std::map<Symbols, StringAnswer> cache;
    GridSpec g{d_, side()};
    if (!g.contains(tail) || !g.contains(step(tail, s))) return false;
    return edge(tail, s.axis, s.sign, cache);
}

std::vector<std::pair<Point, Point>> gadget_edges(int d, std::vector<Dir> h1, std::vector<Dir> h2) {
    if (h1.size() != h2.size()) throw std::invalid_argument("gadget_edges: unbalanced pair");
    for (Dir a : h1)
        for (Dir b : h2)
            if (a == -b) throw std::invalid_argument("gadget_edges: canceling pair");
    std::sort(h1.begin(), h1.end(), dir_lex_less);
    std::sort(h2.begin(), h2.end(), dir_lex_less);
    std::vector<std::pair<Point, Point>> out;
    while (!h1.empty()) {
        Dir s1 = h1.front(), s2 = h2.back();
        h1.erase(h1.begin());
        h2.pop_back();
        Point mid = s2.vec(d) - s1.vec(d);
        out.emplace_back(s1.vec(d) * -1, mid);
        out.emplace_back(mid, s2.vec(d));
    }
    return out;
}

Point GPrime::gamma(const Point& u) {
    Point r(u.d);
    for (int i = 0; i < u.d; ++i) r[i] = 4 * u[i] - 1;
    return r;
}

Point GPrime::start() const { return step(gamma(g_.start()), E(dim()), -2); }

Point GPrime::owner(const Point& v) const {
    Point u(v.d);
    for (int i = 0; i < v.d; ++i) {
        int32_t c = std::max<int32_t>(1, (v[i] - 1 + 3) / 4);
        if (c > g_.side() || std::abs(v[i] - (4 * c - 1)) > 2) return Point();
        u[i] = c;
    }
    return u;
}

GraphAnswer GPrime::compute(const Point& v) {
    Point u = owner(v);
    if (u.d == 0) return {};
    int d = dim();
    HSets h = g_.hsets(u);
    bool is_start = u == g_.start();
    std::vector<Dir> pin = h.in, gin = h.in;
    if (is_start) {
        if (h.out.size() != h.in.size() + 1) throw std::logic_error("G* start is not an out-deficit vertex");
        pin.push_back(E(d));
        gin.push_back(E(d));
    } else if (h.in.size() == h.out.size() + 1) {
        gin.erase(gin.begin());
    }
    if (gin.size() != h.out.size()) throw std::logic_error("G* vertex is not Euler balanced");
    auto has = [](const std::vector<Dir>& hs, Dir s) { return std::find(hs.begin(), hs.end(), s) != hs.end(); };

    Point delta = v - gamma(u);
    int64_t norm = linf_norm(delta);
    if (norm <= 1) {
        if (gin.empty() && pin.empty() && h.out.empty()) return {};
        auto gadget = gadget_edges(d, gin, h.out);
        GraphAnswer a;
        Dir nd = as_dir(delta);
        if (nd && has(pin, -nd)) {
            a.pred = -nd;
        } else {
            for (const auto& [p, q] : gadget)
                if (q == delta) a.pred = as_dir(q - p);
        }
        if (nd && has(h.out, nd)) {
            a.succ = nd;
        } else {
            for (const auto& [p, q] : gadget)
                if (p == delta) a.succ = as_dir(q - p);
        }
        return a;
    }
    if (norm == 2) {
        Point half(d);
        for (int i = 0; i < d; ++i) {
            if (delta[i] % 2) return {};
            half[i] = delta[i] / 2;
        }
        Dir f = as_dir(half);
        if (!f) return {};
        if (has(h.out, f)) return {f, f};
        if (has(h.in, -f)) return {-f, -f};
        if (is_start && f == -E(d)) return {kNo, E(d)};
    }
    return {};
}

// ---- canonical graphs ----

bool is_canonical_pair(int d, Dir s1, Dir s2) {
    if (d < 2) throw std::invalid_argument("is_canonical_pair: d < 2");
    if (s1.axis > d || s2.axis > d) return false;
    if (s1.none() && s2.none()) return true;
    if (s1.none()) return s2 == E(d);
    if (s2.none()) return s1 == E(d);
    if (d == 2) return s1 != -s2;
    int k = s1.axis;
    auto in = [&](std::initializer_list<Dir> xs) { return std::find(xs.begin(), xs.end(), s2) != xs.end(); };
    bool pos = s1.sign > 0;
    if (k == d) return pos ? in({E(d - 1), E(d)}) : in({E(d - 1), -E(d)});
    if (k >= 3) return pos ? in({E(k - 1), E(k), E(k + 1), -E(k + 1)}) : in({E(k - 1), -E(k)});
    if (k == 2) return pos ? in({E(1), -E(1), E(2), E(3), -E(3)}) : in({E(1), -E(1), -E(2)});
    return pos ? in({E(1), E(2), -E(2)}) : in({-E(1), E(2), -E(2)});
}

std::vector<std::pair<Dir, Dir>> canonical_pairs(int d) {
    std::vector<Dir> opts{kNo};
    for (Dir s : all_dirs(d)) opts.push_back(s);
    std::vector<std::pair<Dir, Dir>> out;
    for (Dir a : opts)
        for (Dir b : opts)
            if (is_canonical_pair(d, a, b)) out.emplace_back(a, b);
    return out;
}

static Point unit(int d, int k, int times = 1) {
    Point p(d);
    p[k - 1] = times;
    return p;
}

LocalPath p_end(int d, Dir s) {
    if (d < 2 || s.none() || s.axis > d) throw std::invalid_argument("p_end: bad arguments");
    int l = s.axis;
    LocalPath p;
    if (s.sign > 0) {
        p = {unit(d, l, -3), unit(d, l, -2)};
        for (int i = 3; i <= d - l + 2; ++i) p.push_back(p.back() + unit(d, l + i - 2));
    } else if (l == 1) {
        p = {unit(d, 1, 3), unit(d, 1, 2)};
        for (int i = 3; i <= d + 1; ++i) p.push_back(p.back() + unit(d, i - 1));
    } else {
        p = {unit(d, l, 3), unit(d, l, 2), unit(d, l, 1)};
        for (int i = 4; i <= d - l + 5; ++i) p.push_back(p.back() + unit(d, l + i - 5));
    }
    return p;
}

static LocalPath move2(Dir s1, Dir s2) {
    const int d = 2;
    LocalPath head, tail;
    if (s1 == -E(2))
        head = {unit(d, 2, 3), unit(d, 2, 2), unit(d, 1) + unit(d, 2, 2)};
    else
        head = {s1.vec(d) * -3, s1.vec(d) * -2};
    if (s2 == -E(2))
        tail = {unit(d, 1, -1) + unit(d, 2, -2), unit(d, 2, -2), unit(d, 2, -3)};
    else
        tail = {s2.vec(d) * 2, s2.vec(d) * 3};
    Point from = head.back(), to = tail.front();
    auto blocked = [&](const Point& p) {
        if (linf_norm(p) > 2) return true;
        if (p == unit(d, 2) || p == unit(d, 2, -1)) return true;
        for (const auto& h : head)
            if (h == p && p != from) return true;
        for (const auto& t : tail)
            if (t == p && p != to) return true;
        return false;
    };
    std::unordered_map<Point, Point, PointHash> parent;
    std::deque<Point> queue{from};
    parent.emplace(from, from);
    while (!queue.empty() && !parent.count(to)) {
        Point c = queue.front();
        queue.pop_front();
        for (Dir s : all_dirs(d)) {
            Point nb = step(c, s);
            if (blocked(nb) || parent.count(nb)) continue;
            parent.emplace(nb, c);
            queue.push_back(nb);
        }
    }
    if (!parent.count(to)) throw std::logic_error("move2: no route");
    LocalPath mid;
    for (Point c = to; c != from; c = parent.at(c)) mid.push_back(c);
    std::reverse(mid.begin(), mid.end());
    LocalPath p = head;
    for (size_t i = 0; i + 1 < mid.size(); ++i) p.push_back(mid[i]);
    p.insert(p.end(), tail.begin(), tail.end());
    return p;
}

static void join(LocalPath& p, const LocalPath& q) {
    if (q.empty() || p.back() != q.front()) throw std::logic_error("local path join mismatch");
    p.insert(p.end(), q.begin() + 1, q.end());
}

LocalPath p_move(int d, Dir s1, Dir s2) {
    if (d < 2 || s1.none() || s2.none() || s1.axis > d || s2.axis > d) throw std::invalid_argument("p_move: bad arguments");
    if (s1 == -s2) throw std::invalid_argument("p_move: canceling pair");
    if (d == 2) return move2(s1, s2);
    Point ed = unit(d, d), ep = unit(d, d - 1);
    LocalPath P, Q;
    Dir s1p, s2p;
    if (s1.axis != d) {
        P = {s1.vec(d) * -3, s1.vec(d) * -2};
        s1p = s1;
    } else {
        int g = s1.sign > 0 ? -1 : 1;  // P+ runs on the -e_d side, P- on the +e_d side
        P = {ed * (3 * g), ed * (2 * g), ep + ed * (2 * g), ep + ed * g, ep, ep * 2};
        s1p = -E(d - 1);
    }
    if (s2.axis != d) {
        Q = {s2.vec(d) * 2, s2.vec(d) * 3};
        s2p = s2;
    } else {
        int g = s2.sign > 0 ? 1 : -1;
        Q = {ep * -2, ep * -1, ep * -1 + ed * g, ep * -1 + ed * (2 * g), ed * (2 * g), ed * (3 * g)};
        s2p = -E(d - 1);
    }
    LocalPath mid;
    if (s1p == -s2p) {
        mid = {lift(s1p.vec(d - 1) * -2)};
    } else {
        LocalPath inner = p_move(d - 1, s1p, s2p);
        for (size_t i = 1; i + 1 < inner.size(); ++i) mid.push_back(lift(inner[i]));
    }
    LocalPath out = P;
    join(out, mid);
    join(out, Q);
    return out;
}

Canonical::Canonical(GraphOracle& inner) : inner_(inner), inner_start_(inner.start()) {
    int d = inner.dim();
    for (Dir a : all_dirs(d)) {
        ends_.emplace(a.index(), p_end(d, a));
        for (Dir b : all_dirs(d))
            if (a != -b) moves_.emplace(std::make_pair(a.index(), b.index()), p_move(d, a, b));
    }
}

Point Canonical::gamma(const Point& u) {
    Point r(u.d);
    for (int i = 0; i < u.d; ++i) r[i] = 6 * u[i] - 2;
    return r;
}

Point Canonical::start() const { return step(gamma(inner_start_), E(dim()), -3); }

Point Canonical::owner(const Point& v) const {
    Point u(v.d);
    for (int i = 0; i < v.d; ++i) {
        int32_t c = std::max<int32_t>(1, (v[i] - 1 + 5) / 6);
        if (c > inner_.side() || std::abs(v[i] - (6 * c - 2)) > 3) return Point();
        u[i] = c;
    }
    return u;
}

const LocalPath* Canonical::local_path(const Point& u, const GraphAnswer& a) const {
    int d = dim();
    if (u == inner_start_) {
        if (a.pred || !a.succ) throw std::logic_error("inner start answer is not (no, s)");
        return &moves_.at({E(d).index(), a.succ.index()});
    }
    if (a.pred && a.succ) return &moves_.at({a.pred.index(), a.succ.index()});
    if (a.pred) return &ends_.at(a.pred.index());
    if (a.succ) throw std::logic_error("second start vertex in inner graph");
    return nullptr;
}

GraphAnswer Canonical::compute(const Point& v) {
    Point u = owner(v);
    if (u.d == 0) return {};
    GraphAnswer a = inner_.query(u);
    const LocalPath* path = local_path(u, a);
    if (!path) return {};
    Point delta = v - gamma(u);
    const LocalPath& p = *path;
    size_t m = p.size();
    for (size_t i = 0; i < m; ++i) {
        if (p[i] != delta) continue;
        GraphAnswer r;
        bool first_is_start = u == inner_start_;
        bool last_is_end = !a.succ;
        if (i > 0)
            r.pred = as_dir(p[i] - p[i - 1]);
        else if (!first_is_start)
            r.pred = as_dir(p[1] - p[0]);
        if (i + 1 < m)
            r.succ = as_dir(p[i + 1] - p[i]);
        else if (!last_is_end)
            r.succ = as_dir(p[m - 1] - p[m - 2]);
        return r;
    }
    return {};
}

}  // namespace dbf
