#include "dbf/brouwer.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace dbf {

Dir f_base(int d, bool plus, const Point& r) {
    for (int k = 1; k <= d; ++k) {
        int x = r[k - 1];
        if (x == 0) continue;
        if (x < -1 || x > 1) throw std::invalid_argument("f_base: point outside {-1,0,1}^d");
        if (k < d) return Dir(k, -x);
        return Dir(d, plus ? -x : x);
    }
    throw std::invalid_argument("f_base: zero point");
}

int LocalPattern::index(const Point& off) {
    int i = 0;
    for (int k = 0; k < off.d; ++k) {
        if (off[k] < -2 || off[k] > 2) return -1;
        i = i * 5 + off[k] + 2;
    }
    return i;
}

static Point unindex(int i, int d) {
    Point p(d);
    for (int k = d - 1; k >= 0; --k) {
        p[k] = i % 5 - 2;
        i /= 5;
    }
    return p;
}

static int cells(int d) {
    int c = 1;
    for (int k = 0; k < d; ++k) c *= 5;
    return c;
}

Dir LocalPattern::value(const Point& off) const {
    int8_t c = at(off);
    return c >= 0 ? Dir::from_index(c) : kNo;
}

std::vector<Point> LocalPattern::kernel() const {
    std::vector<Point> out;
    for (int i = 0; i < int(cell.size()); ++i)
        if (cell[i] == kKernel) out.push_back(unindex(i, d));
    return out;
}

std::vector<Point> LocalPattern::boundary() const {
    std::vector<Point> out;
    for (int i = 0; i < int(cell.size()); ++i)
        if (cell[i] >= 0) out.push_back(unindex(i, d));
    return out;
}

void pattern_sets(int d, Dir s1, Dir s2, std::vector<Point>& kernel, std::vector<Point>& boundary) {
    kernel.clear();
    boundary.clear();
    if (s1.none() && s2.none()) return;
    Point ed = E(d).vec(d);
    std::vector<Point> arms;
    if (s1.none()) {
        kernel = {ed * -1, Point(d), ed, ed * 2};
        arms = {Point(d), ed, ed * 2};
    } else if (s2.none()) {
        kernel = {ed * -2, ed * -1, Point(d), ed};
        arms = {ed * -2, ed * -1, Point(d)};
    } else {
        kernel = {s1.vec(d) * -2, s1.vec(d) * -1, Point(d), s2.vec(d), s2.vec(d) * 2};
        arms = kernel;
    }
    auto in = [](const std::vector<Point>& xs, const Point& p) { return std::find(xs.begin(), xs.end(), p) != xs.end(); };
    for (int i = 0; i < cells(d); ++i) {
        Point r = unindex(i, d);
        if (in(kernel, r)) continue;
        for (const auto& a : arms)
            if (linf_dist(r, a) == 1) {
                boundary.push_back(r);
                break;
            }
    }
}

namespace {

int64_t cross(const Point& a, const Point& b) { return int64_t(a[0]) * b[1] - int64_t(a[1]) * b[0]; }

// left of the local path gets +e_1, right gets -e_1
Dir side_value(Dir s1, Dir s2, const Point& b) {
    Point in = (s1.none() ? E(2) : s1).vec(2), out = (s2.none() ? E(2) : s2).vec(2);
    int64_t c1 = cross(in, b), c2 = cross(out, b), t = cross(in, out);
    bool left;
    if (t == 0)
        left = c1 > 0;
    else if (t > 0)
        left = c1 > 0 && c2 > 0;
    else
        left = !(c1 < 0 && c2 < 0);
    return left ? E(1) : -E(1);
}

std::vector<Point> base_cube(int d) {
    std::vector<Point> out;
    for_each_in_box(d, -1, 1, [&](const Point& p) {
        if (linf_norm(p) != 0) out.push_back(p);
    });
    return out;
}

LocalPattern build(int d, Dir s1, Dir s2);

class Assign {
public:
    Assign(int d) : d_(d), vals_(cells(d), LocalPattern::kOut) {}
    void set(const Point& p, Dir v) {
        int i = LocalPattern::index(p);
        if (i < 0) throw std::logic_error("pattern rule outside the local box");
        if (vals_[i] != LocalPattern::kOut) throw std::logic_error("pattern rules overlap at " + to_string(p));
        vals_[i] = static_cast<int8_t>(v.index());
    }
    void erase(const Point& p) { vals_[LocalPattern::index(p)] = LocalPattern::kOut; }
    const std::vector<int8_t>& vals() const { return vals_; }

private:
    int d_;
    std::vector<int8_t> vals_;
};

void lift_sub(Assign& a, const LocalPattern& sub, int k, bool with_boundary) {
    if (!with_boundary) return;
    for (const auto& r : sub.boundary()) a.set(lift(r, k), sub.value(r));
}

void lift_kernel(Assign& a, const LocalPattern& sub, int k, Dir v, const std::vector<Point>& skip = {}) {
    for (const auto& r : sub.kernel()) {
        Point p = lift(r, k);
        if (std::find(skip.begin(), skip.end(), p) != skip.end()) continue;
        a.set(p, v);
    }
}

LocalPattern build(int d, Dir s1, Dir s2) {
    if (!is_canonical_pair(d, s1, s2)) throw std::invalid_argument("local_pattern: pair not canonical");
    LocalPattern pat;
    pat.d = d;
    pat.s1 = s1;
    pat.s2 = s2;
    std::vector<Point> K, B;
    pattern_sets(d, s1, s2, K, B);
    pat.cell.assign(cells(d), LocalPattern::kOut);
    for (const auto& k : K) pat.cell[LocalPattern::index(k)] = LocalPattern::kKernel;
    if (B.empty()) return pat;

    if (d == 2) {
        for (const auto& b : B) pat.cell[LocalPattern::index(b)] = static_cast<int8_t>(side_value(s1, s2, b).index());
        return pat;
    }

    Assign a(d);
    Dir ed = E(d), ep = E(d - 1);
    Point vd = ed.vec(d), vp = ep.vec(d);
    auto base = [&](int k, bool plus) {
        for (const auto& r : base_cube(d - 1)) a.set(lift(r, k), f_base(d - 1, plus, r));
    };

    bool along_d = (s1 == ed || s1.none()) && (s2 == ed || s2.none());
    if (along_d || (s1 == -ed && s2 == -ed)) {
        bool plus = s1 != -ed;
        for (const auto& b : B) {
            Point r = drop_last(b);
            if (linf_norm(r) == 0 || linf_norm(r) > 1) throw std::logic_error("pattern along e_d: bad slice point");
            a.set(b, f_base(d - 1, plus, r));
        }
    } else if (s1.axis < d && s2.axis < d) {
        const LocalPattern& sub = local_pattern(d - 1, s1, s2);
        for (int k : {-1, 0, 1}) lift_sub(a, sub, k, true);
        lift_kernel(a, sub, -1, -ep);
        lift_kernel(a, sub, 1, ep);
    } else if (s1 == ep && s2 == ed) {
        const LocalPattern& sub = local_pattern(d - 1, ep, kNo);
        base(2, true);
        for (int k : {-1, 0, 1}) lift_sub(a, sub, k, true);
        a.set(vp + vd, -ep);
        a.set(vp, -ep);
        lift_kernel(a, sub, -1, -ep);
        lift_kernel(a, sub, 1, ep, {vd, vp + vd});
    } else if (s1 == -ed && s2 == ep) {
        const LocalPattern& sub = local_pattern(d - 1, kNo, ep);
        base(2, false);
        for (int k : {-1, 0, 1}) lift_sub(a, sub, k, true);
        lift_kernel(a, sub, -1, -ep);
        a.set(vp * -1 + vd, -ep);
        a.set(vp * -1, -ep);
        lift_kernel(a, sub, 1, ep, {vp * -1 + vd, vd});
    } else if (s1 == ep && s2 == -ed) {
        const LocalPattern& sub = local_pattern(d - 1, ep, kNo);
        base(-2, false);
        for (int k : {-1, 0, 1}) lift_sub(a, sub, k, true);
        lift_kernel(a, sub, 1, ep);
        a.set(vp, ep);
        a.set(vp - vd, ep);
        lift_kernel(a, sub, -1, -ep, {vd * -1, vp - vd});
    } else if (s1 == ed && s2 == ep) {
        const LocalPattern& sub = local_pattern(d - 1, kNo, ep);
        base(-2, true);
        for (int k : {-1, 0, 1}) lift_sub(a, sub, k, true);
        lift_kernel(a, sub, 1, ep);
        a.set(vp * -1, ep);
        a.set(vp * -1 - vd, ep);
        lift_kernel(a, sub, -1, -ep, {vd * -1, vp * -1 - vd});
    } else {
        throw std::logic_error("local_pattern: no construction case for " + to_string(s1) + "," + to_string(s2));
    }

    // the rules must cover exactly the boundary of the definition
    std::vector<int8_t> vals = a.vals();
    for (int i = 0; i < int(vals.size()); ++i) {
        bool in_b = std::find(B.begin(), B.end(), unindex(i, d)) != B.end();
        if (in_b != (vals[i] != LocalPattern::kOut))
            throw std::logic_error("local_pattern: rule domain differs from the boundary at " + to_string(unindex(i, d)));
        if (in_b) pat.cell[i] = vals[i];
    }
    return pat;
}

}  // namespace

const LocalPattern& local_pattern(int d, Dir s1, Dir s2) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<LocalPattern>> cache;
    auto key = std::make_tuple(d, s1.none() ? -1 : s1.index(), s2.none() ? -1 : s2.index());
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto p = std::make_unique<LocalPattern>(build(d, s1, s2));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, fresh] = cache.emplace(key, std::move(p));
    return *it->second;
}

Brouwer::Brouwer(GraphOracle& g) : g_(g), d_(g.dim()), p_(g.start() * 4) {
    if (g.start()[d_ - 1] != 1) throw std::invalid_argument("Brouwer: start vertex must have last coordinate 1");
}

std::optional<Point> Brouwer::owner(const Point& r) const {
    Point u(d_);
    for (int i = 0; i < d_; ++i) {
        int32_t c = std::max<int32_t>(1, (r[i] + 1) / 4);
        if (c > g_.side() || std::abs(r[i] - 4 * c) > 2) return std::nullopt;
        u[i] = c;
    }
    return u;
}

static int first_diff(const Point& r, const Point& p, int upto) {
    for (int k = 0; k < upto; ++k)
        if (r[k] != p[k]) return k;
    return -1;
}

Dir Brouwer::default_value(const Point& r) const {
    int rd = r[d_ - 1];
    if (rd == 1 || rd == 2) {
        int64_t dist = 0;
        for (int k = 0; k < d_ - 1; ++k) dist = std::max<int64_t>(dist, std::abs(r[k] - p_[k]));
        if (dist == 0) return E(d_);
        int k = first_diff(r, p_, d_ - 1);
        if (dist == 1) return Dir(k + 1, p_[k] - r[k]);
        if (rd == 1) return Dir(k + 1, p_[k] > r[k] ? 1 : -1);
    }
    return -E(d_);
}

Dir Brouwer::eval(const Point& r) {
    ++evals;
    if (!overrides.empty()) {
        auto it = overrides.find(r);
        if (it != overrides.end()) return it->second;
    }
    int rd = r[d_ - 1];
    if (rd == 1 || rd == 2) {
        int64_t dist = 0;
        for (int k = 0; k < d_ - 1; ++k) dist = std::max<int64_t>(dist, std::abs(r[k] - p_[k]));
        if (dist <= 1) return default_value(r);
    }
    auto u = owner(r);
    if (u) {
        uint64_t before = g_.queries;
        GraphAnswer pi = g_.query(*u);
        max_queries_per_eval = std::max(max_queries_per_eval, g_.queries - before);
        if (!pi.empty()) {
            Point off = r - *u * 4;
            if (pi.pred && !pi.succ) {
                if (linf_norm(off) == 0) return kNo;
                if (off == E(d_).vec(d_)) return -E(d_);
            }
            const LocalPattern& pat = local_pattern(d_, pi.pred, pi.succ);
            int8_t c = pat.at(off);
            if (c == LocalPattern::kKernel) return E(d_);
            if (c >= 0) return Dir::from_index(c);
        }
    }
    return default_value(r);
}

Region Brouwer::region(const Point& r) {
    auto u = owner(r);
    if (!u) return Region::Outside;
    GraphAnswer pi = g_.query(*u);
    if (pi.empty()) return Region::Outside;
    int8_t c = local_pattern(d_, pi.pred, pi.succ).at(r - *u * 4);
    if (c == LocalPattern::kKernel) return Region::Kernel;
    return c >= 0 ? Region::Boundary : Region::Outside;
}

Point invert_to_gstar(const Point& zero) {
    int d = zero.d;
    Point w(d), u(d), g(d);
    for (int i = 0; i < d; ++i) {
        if (zero[i] % 4) throw std::invalid_argument("invert_chain: zero is not on the 4-lattice");
        w[i] = zero[i] / 4;
    }
    for (int i = 0; i < d; ++i) {
        int c = (w[i] + 5) / 6;
        if (std::abs(w[i] - (6 * c - 2)) > 2) throw std::logic_error("invert_chain: no canonical vertex near the zero");
        u[i] = c;
    }
    for (int i = 0; i < d; ++i) {
        int c = (u[i] + 3) / 4;
        if (std::abs(u[i] - (4 * c - 1)) > 1) throw std::logic_error("invert_chain: no G* vertex near the canonical end");
        g[i] = c;
    }
    return g;
}

Name invert_chain(const Point& zero) { return nt_unembed(f_unembed(invert_to_gstar(zero))); }

}  // namespace dbf
