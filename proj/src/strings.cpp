#include "dbf/strings.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dbf {

std::string to_string(const StringAnswer& a) {
    auto f = [](int32_t x) { return x ? std::to_string(x) : std::string("no"); };
    return "(" + f(a.left) + "," + f(a.right) + ")";
}

bool is_d_non_repeating(const Symbols& s, int d) {
    if (d < 1) return false;
    if (s.empty() || s.size() % d != 0) return false;
    for (size_t i = 0; i < s.size(); ++i) {
        bool odd = (s[i] % 2) != 0;
        bool boundary = (i + 1) % d == 0;
        if (odd != boundary) return false;
    }
    std::vector<Symbols> windows;
    for (size_t i = 0; i + d <= s.size(); ++i) windows.emplace_back(s.begin() + i, s.begin() + i + d);
    std::sort(windows.begin(), windows.end());
    return std::adjacent_find(windows.begin(), windows.end()) == windows.end();
}

Symbols end_d(const Symbols& s, int d) {
    if (!is_d_non_repeating(s, d)) throw std::invalid_argument("end_d: string is not d-non-repeating");
    return Symbols(s.end() - d, s.end());
}

StringAnswer string_oracle(const Symbols& s, int d, const Symbols& w) {
    int64_t m = static_cast<int64_t>(s.size());
    for (int64_t k = 0; k + d <= m; ++k) {
        if (!std::equal(w.begin(), w.end(), s.begin() + k)) continue;
        StringAnswer a;
        if (k > 0) a.left = s[k - 1];
        if (k + d < m) a.right = s[k + d];
        return a;
    }
    return {};
}

IndexedString::IndexedString(Symbols s, int d, int alphabet) : s_(std::move(s)), d_(d), n_(alphabet) {
    if (n_ == 0)
        for (int32_t x : s_) n_ = std::max(n_, int(x));
    double cap = 1;
    for (int i = 0; i < d_; ++i) cap *= double(n_ + 1);
    if (cap > 9e18) throw std::invalid_argument("window key does not fit in 64 bits");
    for (int32_t x : s_)
        if (x < 1 || x > n_) throw std::invalid_argument("symbol out of alphabet");
    for (int64_t k = 0; k + d_ <= int64_t(s_.size()); ++k) pos_.emplace(key(s_.data() + k), k);
}

uint64_t IndexedString::key(const int32_t* w) const {
    uint64_t k = 0;
    for (int i = 0; i < d_; ++i) k = k * uint64_t(n_ + 1) + uint64_t(w[i]);
    return k;
}

StringAnswer IndexedString::query(const int32_t* w) {
    for (int i = 0; i < d_; ++i)
        if (w[i] < 1 || w[i] > n_) return {};
    auto it = pos_.find(key(w));
    if (it == pos_.end()) return {};
    int64_t k = it->second;
    StringAnswer a;
    if (k > 0) a.left = s_[k - 1];
    if (k + d_ < int64_t(s_.size())) a.right = s_[k + d_];
    return a;
}

std::string format_string_file(const Symbols& s, int d, int n) {
    std::ostringstream os;
    os << "d=" << d << " n=" << n << "\n";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << "\n";
    return os.str();
}

bool parse_string_file(const std::string& text, Symbols& s, int& d, int& n) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) return false;
    if (std::sscanf(header.c_str(), "d=%d n=%d", &d, &n) != 2) return false;
    s.clear();
    long x;
    while (is >> x) s.push_back(static_cast<int32_t>(x));
    return !s.empty();
}

}  // namespace dbf
