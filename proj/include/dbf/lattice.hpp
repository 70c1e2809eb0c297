#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbf {

constexpr int kMaxDim = 8;

struct Point {
    std::array<int32_t, kMaxDim> c{};
    int d = 0;

    Point() = default;
    explicit Point(int dim) : d(dim) {
        if (dim < 1 || dim > kMaxDim)
            throw std::invalid_argument("dimension out of range");
    }
    Point(std::initializer_list<int32_t> xs);
    static Point from(const std::vector<int32_t>& xs);

    int32_t& operator[](int i) { return c[i]; }
    int32_t operator[](int i) const { return c[i]; }

    bool operator==(const Point& o) const;
    bool operator!=(const Point& o) const { return !(*this == o); }
    Point operator+(const Point& o) const;
    Point operator-(const Point& o) const;
    Point operator*(int32_t k) const;
    std::vector<int32_t> vec() const { return {c.begin(), c.begin() + d}; }
};

// axis is 1-based; axis 0 stands for "no"
struct Dir {
    int8_t axis = 0;
    int8_t sign = 0;

    constexpr Dir() = default;
    constexpr Dir(int a, int s) : axis(static_cast<int8_t>(a)), sign(static_cast<int8_t>(s)) {}

    bool none() const { return axis == 0; }
    explicit operator bool() const { return axis != 0; }
    Dir operator-() const { return Dir(axis, -sign); }
    bool operator==(const Dir& o) const { return axis == o.axis && sign == o.sign; }
    bool operator!=(const Dir& o) const { return !(*this == o); }
    Point vec(int d) const;
    int index() const { return 2 * (axis - 1) + (sign > 0 ? 1 : 0); }
    static Dir from_index(int i) { return Dir(i / 2 + 1, (i % 2) ? 1 : -1); }
};

inline constexpr Dir kNo{};
inline Dir E(int axis) { return Dir(axis, 1); }

struct GridSpec {
    int d = 1;
    int64_t n = 1;
    bool contains(const Point& p) const;
    int64_t cells() const;
};

enum class Ordering { Less, Equal, Greater };

Ordering lex_cmp(const Point& a, const Point& b);
bool lex_less(const Point& a, const Point& b);
int64_t linf_dist(const Point& a, const Point& b);
int64_t linf_norm(const Point& a);
Point step(const Point& p, Dir s);
Point step(const Point& p, Dir s, int times);

// directions compared by their expanded vectors
bool dir_lex_less(Dir a, Dir b);
// the vector a point must be, if it is a unit vector; kNo otherwise
Dir as_dir(const Point& v);

// first d-1 coordinates, and its inverse lift with a chosen last coordinate
Point drop_last(const Point& p);
Point lift(const Point& p, int32_t last = 0);
Dir drop_last(Dir s, int d);  // kNo for ±e_d

std::string to_string(const Point& p);
std::string to_string(Dir s);
Point parse_point(const std::string& s);
Dir parse_dir(const std::string& s);

struct PointHash {
    size_t operator()(const Point& p) const noexcept;
};

// dense index of a point in [lo, lo+side)^d, lex order
int64_t lex_rank(const Point& p, int64_t side, int32_t lo = 1);
Point lex_unrank(int64_t rank, int d, int64_t side, int32_t lo = 1);

// visits every point of [lo, hi]^d in lex order
void for_each_in_box(int d, int32_t lo, int32_t hi, const std::function<void(const Point&)>& fn);
void for_each_in_box(const Point& lo, const Point& hi, const std::function<void(const Point&)>& fn);

// all 2d unit directions in vector lex order
std::vector<Dir> all_dirs(int d);

}  // namespace dbf
