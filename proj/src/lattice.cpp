#include "dbf/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace dbf {

Point::Point(std::initializer_list<int32_t> xs) : d(static_cast<int>(xs.size())) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension out of range");
    int i = 0;
    for (int32_t x : xs) c[i++] = x;
}

Point Point::from(const std::vector<int32_t>& xs) {
    Point p(static_cast<int>(xs.size()));
    for (int i = 0; i < p.d; ++i) p.c[i] = xs[i];
    return p;
}

bool Point::operator==(const Point& o) const {
    if (d != o.d) return false;
    for (int i = 0; i < d; ++i)
        if (c[i] != o.c[i]) return false;
    return true;
}

static void same_dim(const Point& a, const Point& b) {
    if (a.d != b.d) throw std::invalid_argument("dimension mismatch");
}

Point Point::operator+(const Point& o) const {
    same_dim(*this, o);
    Point r(d);
    for (int i = 0; i < d; ++i) r.c[i] = c[i] + o.c[i];
    return r;
}

Point Point::operator-(const Point& o) const {
    same_dim(*this, o);
    Point r(d);
    for (int i = 0; i < d; ++i) r.c[i] = c[i] - o.c[i];
    return r;
}

Point Point::operator*(int32_t k) const {
    Point r(d);
    for (int i = 0; i < d; ++i) {
        int64_t v = int64_t(c[i]) * k;
        if (v > INT32_MAX || v < INT32_MIN) throw std::overflow_error("coordinate overflow");
        r.c[i] = static_cast<int32_t>(v);
    }
    return r;
}

Point Dir::vec(int d) const {
    Point p(d);
    if (axis) p.c[axis - 1] = sign;
    return p;
}

bool GridSpec::contains(const Point& p) const {
    if (p.d != d) return false;
    for (int i = 0; i < d; ++i)
        if (p.c[i] < 1 || p.c[i] > n) return false;
    return true;
}

int64_t GridSpec::cells() const {
    int64_t r = 1;
    for (int i = 0; i < d; ++i) {
        if (r > INT64_MAX / n) throw std::overflow_error("grid too large");
        r *= n;
    }
    return r;
}

Ordering lex_cmp(const Point& a, const Point& b) {
    same_dim(a, b);
    for (int i = 0; i < a.d; ++i) {
        if (a.c[i] < b.c[i]) return Ordering::Less;
        if (a.c[i] > b.c[i]) return Ordering::Greater;
    }
    return Ordering::Equal;
}

bool lex_less(const Point& a, const Point& b) { return lex_cmp(a, b) == Ordering::Less; }

int64_t linf_dist(const Point& a, const Point& b) {
    same_dim(a, b);
    int64_t m = 0;
    for (int i = 0; i < a.d; ++i) m = std::max<int64_t>(m, std::llabs(int64_t(a.c[i]) - b.c[i]));
    return m;
}

int64_t linf_norm(const Point& a) {
    int64_t m = 0;
    for (int i = 0; i < a.d; ++i) m = std::max<int64_t>(m, std::llabs(int64_t(a.c[i])));
    return m;
}

Point step(const Point& p, Dir s) {
    Point r = p;
    if (s.axis) r.c[s.axis - 1] += s.sign;
    return r;
}

Point step(const Point& p, Dir s, int times) {
    Point r = p;
    if (s.axis) r.c[s.axis - 1] += s.sign * times;
    return r;
}

// vector lex order: -e1 < -e2 < ... < -ed < ed < ... < e1
bool dir_lex_less(Dir a, Dir b) {
    auto key = [](Dir s) { return s.sign < 0 ? s.axis : 100 - s.axis; };
    return key(a) < key(b);
}

Dir as_dir(const Point& v) {
    Dir r;
    for (int i = 0; i < v.d; ++i) {
        if (v.c[i] == 0) continue;
        if (r.axis || (v.c[i] != 1 && v.c[i] != -1)) return kNo;
        r = Dir(i + 1, v.c[i]);
    }
    return r;
}

Point drop_last(const Point& p) {
    Point r(p.d - 1);
    for (int i = 0; i < p.d - 1; ++i) r.c[i] = p.c[i];
    return r;
}

Point lift(const Point& p, int32_t last) {
    Point r(p.d + 1);
    for (int i = 0; i < p.d; ++i) r.c[i] = p.c[i];
    r.c[p.d] = last;
    return r;
}

Dir drop_last(Dir s, int d) { return s.axis == d ? kNo : s; }

std::string to_string(const Point& p) {
    std::string s = "(";
    for (int i = 0; i < p.d; ++i) {
        if (i) s += ",";
        s += std::to_string(p.c[i]);
    }
    return s + ")";
}

std::string to_string(Dir s) {
    if (s.none()) return "no";
    return std::string(s.sign > 0 ? "+e" : "-e") + std::to_string(s.axis);
}

Point parse_point(const std::string& s) {
    std::vector<int32_t> xs;
    std::string t;
    for (char ch : s) {
        if (ch == '(' || ch == ')' || ch == ' ') continue;
        if (ch == ',') {
            xs.push_back(std::stoi(t));
            t.clear();
        } else {
            t += ch;
        }
    }
    if (!t.empty()) xs.push_back(std::stoi(t));
    return Point::from(xs);
}

Dir parse_dir(const std::string& s) {
    if (s == "no") return kNo;
    if (s.size() < 3 || (s[0] != '+' && s[0] != '-') || s[1] != 'e')
        throw std::invalid_argument("bad direction: " + s);
    return Dir(std::stoi(s.substr(2)), s[0] == '+' ? 1 : -1);
}

size_t PointHash::operator()(const Point& p) const noexcept {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ uint64_t(p.d);
    for (int i = 0; i < p.d; ++i) {
        h ^= uint64_t(uint32_t(p.c[i])) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

int64_t lex_rank(const Point& p, int64_t side, int32_t lo) {
    int64_t r = 0;
    for (int i = 0; i < p.d; ++i) r = r * side + (p.c[i] - lo);
    return r;
}

Point lex_unrank(int64_t rank, int d, int64_t side, int32_t lo) {
    Point p(d);
    for (int i = d - 1; i >= 0; --i) {
        p.c[i] = static_cast<int32_t>(rank % side) + lo;
        rank /= side;
    }
    return p;
}

void for_each_in_box(const Point& lo, const Point& hi, const std::function<void(const Point&)>& fn) {
    int d = lo.d;
    for (int i = 0; i < d; ++i)
        if (lo.c[i] > hi.c[i]) return;
    Point p = lo;
    while (true) {
        fn(p);
        int i = d - 1;
        while (i >= 0 && p.c[i] == hi.c[i]) {
            p.c[i] = lo.c[i];
            --i;
        }
        if (i < 0) return;
        ++p.c[i];
    }
}

void for_each_in_box(int d, int32_t lo, int32_t hi, const std::function<void(const Point&)>& fn) {
    Point a(d), b(d);
    for (int i = 0; i < d; ++i) {
        a.c[i] = lo;
        b.c[i] = hi;
    }
    for_each_in_box(a, b, fn);
}

std::vector<Dir> all_dirs(int d) {
    std::vector<Dir> r;
    for (int k = 1; k <= d; ++k) r.push_back(Dir(k, -1));
    for (int k = d; k >= 1; --k) r.push_back(Dir(k, 1));
    return r;
}

}  // namespace dbf
