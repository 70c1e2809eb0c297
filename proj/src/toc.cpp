#include "dbf/toc.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dbf {

namespace {

uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

uint64_t prf(uint64_t seed, const Name& v, uint64_t salt) {
    uint64_t h = splitmix(seed ^ 0x5bd1e995u);
    h = splitmix(h ^ salt);
    h = splitmix(h ^ v.size());
    for (int32_t x : v) h = splitmix(h ^ uint64_t(uint32_t(x)));
    return h;
}

Name child(const Name& v, int32_t a) {
    Name c = v;
    c.push_back(a);
    return c;
}

}  // namespace

std::string name_key(const Name& v) {
    std::string s;
    s.reserve(v.size());
    for (int32_t x : v) s.push_back(static_cast<char>(x));
    return s;
}

std::string to_string(const Name& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

Connector Connector::from_perm(const std::vector<int>& perm) {
    Connector c;
    c.perm = perm;
    int n = static_cast<int>(perm.size());
    std::vector<int> seen(n + 1, 0);
    c.str.push_back(2);
    for (int k : perm) {
        if (k < 1 || k > n || seen[k]++) throw std::invalid_argument("connector: not a permutation");
        c.str.push_back(2 * k + 1);
        c.str.push_back(2 * k + 2);
    }
    c.pos.assign(2 * n + 3, -1);
    for (size_t i = 0; i < c.str.size(); ++i) c.pos[c.str[i]] = static_cast<int>(i);
    return c;
}

Connector Connector::from_string(const Symbols& s) {
    if (s.empty() || s.size() % 2 == 0 || s[0] != 2) throw std::invalid_argument("connector: bad string");
    std::vector<int> perm;
    for (size_t i = 1; i < s.size(); i += 2) {
        if (s[i] % 2 == 0 || s[i + 1] != s[i] + 1) throw std::invalid_argument("connector: bad block");
        perm.push_back((s[i] - 1) / 2);
    }
    return from_perm(perm);
}

Connector Connector::identity(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    return from_perm(p);
}

int32_t Connector::phi(int32_t s) const {
    if (s < 2 || s >= int32_t(pos.size()) || pos[s] < 0) throw std::invalid_argument("symbol out of J_n");
    int i = pos[s];
    if (s == r()) return 0;
    if (s % 2 == 0) return str[i + 1];
    return str[i - 1];
}

ToC::ToC(int n, int d, uint64_t seed) : n_(n), d_(d), seed_(seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("ToC: need n >= 1 and d >= 1");
    if (2 * n + 2 > 127) throw std::invalid_argument("ToC: n too large for name keys");
}

ToC::ToC(int n, int d, std::map<Name, Connector> table) : n_(n), d_(d), explicit_(true) {
    for (auto& [v, c] : table) {
        if (c.n() != n) throw std::invalid_argument("ToC: connector size mismatch");
        conn_.emplace(name_key(v), c);
    }
}

ToC ToC::identity(int n, int d) {
    std::map<Name, Connector> table;
    std::function<void(const Name&)> walk = [&](const Name& v) {
        if (int(v.size()) == d) return;
        table.emplace(v, Connector::identity(n));
        for (int a = 2; a <= 2 * n + 2; ++a) walk(child(v, a));
    };
    walk({});
    return ToC(n, d, std::move(table));
}

const std::optional<Name>& ToC::constraint(const Name& v) const {
    std::string key = name_key(v);
    auto it = cons_.find(key);
    if (it != cons_.end()) return it->second;
    std::optional<Name> c;
    if (!v.empty()) {
        Name parent(v.begin(), v.end() - 1);
        int32_t a = v.back();
        const Connector& pc = connector(parent);
        int height = d_ - static_cast<int>(v.size());
        if (a == pc.r()) {
            const auto& up = constraint(parent);
            if (up) c = Name(up->begin() + 1, up->end());
        } else if (height >= 1) {
            int32_t key_sym = std::min(a, pc.phi(a));
            std::mt19937_64 rng(prf(seed_, parent, 0x7a11u + uint64_t(key_sym)));
            std::uniform_int_distribution<int> pick(1, n_);
            Name tail(height);
            for (auto& x : tail) x = 2 * pick(rng) + 2;
            c = std::move(tail);
        }
    }
    return cons_.emplace(std::move(key), std::move(c)).first->second;
}

Connector ToC::generate(const Name& v) const {
    const auto& c = constraint(v);
    std::mt19937_64 rng(prf(seed_, v, 0xc0));
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 1);
    if (c) {
        int last = ((*c)[0] - 2) / 2;
        perm.erase(std::find(perm.begin(), perm.end(), last));
        std::shuffle(perm.begin(), perm.end(), rng);
        perm.push_back(last);
    } else {
        std::shuffle(perm.begin(), perm.end(), rng);
    }
    return Connector::from_perm(perm);
}

const Connector& ToC::connector(const Name& v) const {
    if (int(v.size()) >= d_) throw std::invalid_argument("connector: not an internal node");
    std::string key = name_key(v);
    auto it = conn_.find(key);
    if (it != conn_.end()) return it->second;
    if (explicit_) throw std::invalid_argument("connector: node missing from table " + to_string(v));
    for (int32_t x : v)
        if (x < 2 || x > 2 * n_ + 2) throw std::invalid_argument("connector: invalid node name");
    Connector c = generate(v);
    return conn_.emplace(std::move(key), std::move(c)).first->second;
}

Name ToC::tail_name(const Name& v) const {
    if (int(v.size()) > d_) throw std::invalid_argument("tail_name: invalid node name");
    for (int32_t x : v)
        if (x < 2 || x > 2 * n_ + 2) throw std::invalid_argument("tail_name: invalid node name");
    Name u = v;
    while (int(u.size()) < d_) u.push_back(connector(u).r());
    return u;
}

TocAnswer ToC::oracle(const Name& q) const {
    ++queries;
    return answer(q);
}

TocAnswer ToC::answer(const Name& q) const {
    if (q.empty() || int(q.size()) > d_) throw std::invalid_argument("toc_oracle: bad query length");
    for (int32_t x : q)
        if (x < 2 || x > 2 * n_ + 2) throw std::invalid_argument("toc_oracle: symbol out of J_n");
    Name u = tail_name(q);
    // smallest level j such that u is the tail of its level-j ancestor
    int j = d_;
    while (j > 0) {
        Name anc(u.begin(), u.begin() + (j - 1));
        if (connector(anc).r() != u[j - 1]) break;
        --j;
    }
    TocAnswer a;
    if (j == 0) {
        a.whole = true;
        a.h = d_;
        return a;
    }
    a.h = d_ - j;
    Name v(u.begin(), u.begin() + (j - 1));
    int32_t s = u[j - 1];
    a.phi = connector(v).phi(s);
    a.t1 = child(v, s);
    a.t2 = child(v, a.phi);
    return a;
}

bool ToC::is_valid() const {
    std::function<bool(const Name&)> walk = [&](const Name& v) {
        int height = d_ - static_cast<int>(v.size());
        if (height == 0) return true;
        const Connector& c = connector(v);
        for (int32_t s : c.str) {
            int32_t t = c.phi(s);
            if (t == 0 || s > t) continue;
            Name us = tail_name(child(v, s)), ut = tail_name(child(v, t));
            if (!std::equal(us.end() - (height - 1), us.end(), ut.end() - (height - 1))) return false;
        }
        for (int32_t s : c.str)
            if (!walk(child(v, s))) return false;
        return true;
    };
    return walk({});
}

int64_t count_internal_nodes(int n, int d) {
    int64_t total = 0, level = 1;
    for (int j = 0; j < d; ++j) {
        total += level;
        level *= 2 * n + 1;
    }
    return total;
}

std::vector<ToC> enumerate_tocs(int n, int d, int64_t cap, bool valid_only) {
    std::vector<Name> nodes;
    std::function<void(const Name&)> walk = [&](const Name& v) {
        if (int(v.size()) == d) return;
        nodes.push_back(v);
        for (int a = 2; a <= 2 * n + 2; ++a) walk(child(v, a));
    };
    walk({});
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    double total = 1;
    for (size_t i = 0; i < nodes.size(); ++i) total *= double(perms.size());
    if (total > double(cap)) throw std::length_error("enumerate_tocs: assignment count exceeds cap");
    std::vector<ToC> out;
    std::vector<size_t> digit(nodes.size(), 0);
    while (true) {
        std::map<Name, Connector> table;
        for (size_t i = 0; i < nodes.size(); ++i) table.emplace(nodes[i], Connector::from_perm(perms[digit[i]]));
        ToC t(n, d, std::move(table));
        if (!valid_only || t.is_valid()) out.push_back(std::move(t));
        size_t i = 0;
        while (i < digit.size() && ++digit[i] == perms.size()) digit[i++] = 0;
        if (i == digit.size()) break;
    }
    return out;
}

Symbols insert_d(const Symbols& s, int d, int32_t t) {
    if (d < 1 || s.size() % d != 0) throw std::invalid_argument("insert_d: length not divisible by d");
    Symbols r;
    r.reserve(s.size() + s.size() / d);
    for (size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && i % d == 0) r.push_back(t);
        r.push_back(s[i]);
    }
    return r;
}

Symbols concat_d(const Symbols& a, const Symbols& b, int d) {
    if (int(a.size()) < d || int(b.size()) < d || !std::equal(a.end() - d, a.end(), b.begin()))
        throw std::invalid_argument("concat_d: overlap mismatch");
    Symbols r = a;
    r.insert(r.end(), b.begin() + d, b.end());
    return r;
}

Symbols nt_embed(const Name& p) {
    Symbols x(p.size());
    for (size_t i = 0; i < p.size(); ++i) x[i] = 2 * p[i];
    x.back() -= 1;
    return x;
}

Name nt_unembed(const Symbols& x) {
    Name p(x.size());
    for (size_t i = 0; i + 1 < x.size(); ++i) p[i] = x[i] / 2;
    p.back() = (x.back() + 1) / 2;
    return p;
}

Symbols start_block(int d) {
    Symbols s(d, 2);
    s.back() = 1;
    return s;
}

namespace {

std::pair<Symbols, Symbols> build_pair(const ToC& t, const Name& root) {
    int h = t.d() - static_cast<int>(root.size());
    const Connector& c = t.connector(root);
    int len = static_cast<int>(c.str.size());
    if (h == 1) {
        Symbols s{1}, q;
        for (int32_t a : c.str) s.push_back(2 * a - 1);
        q.assign(s.rbegin(), s.rend() - 1);
        q.push_back(1);
        return {s, q};
    }
    std::vector<Symbols> sp(len), qp(len);
    for (int i = 1; i <= len; ++i) {
        int32_t a = c.str[i - 1];
        auto [cs, cq] = build_pair(t, child(root, a));
        if (i % 2 == 1) {
            sp[i - 1] = insert_d(cs, h - 1, 2 * a);
            qp[i - 1] = insert_d(cq, h - 1, 2 * a);
        } else {
            sp[i - 1] = insert_d(cq, h - 1, 2 * a);
            qp[i - 1] = insert_d(cs, h - 1, 2 * a);
        }
    }
    Symbols s = start_block(h);
    for (int i = 0; i < len; ++i) s = concat_d(s, sp[i], h - 1);
    Symbols q{2 * c.r()};
    q.insert(q.end(), qp[len - 1].begin(), qp[len - 1].end());
    for (int i = len - 2; i >= 0; --i) q = concat_d(q, qp[i], h - 1);
    Symbols tail = start_block(h);
    q.insert(q.end(), tail.begin(), tail.end());
    return {s, q};
}

}  // namespace

Symbols build_S(const ToC& t, const Name& root) { return build_pair(t, root).first; }
Symbols build_Q(const ToC& t, const Name& root) { return build_pair(t, root).second; }
Symbols build_S(const ToC& t) { return build_S(t, {}); }
Symbols build_Q(const ToC& t) { return build_Q(t, {}); }

TocStrings::TocStrings(const ToC& t) : t_(t) {
    ToC id = ToC::identity(t.n(), t.d());
    auto [s, q] = build_pair(id, {});
    id_s_ = std::make_unique<IndexedString>(s, t.d(), 4 * t.n() + 4);
    id_q_ = std::make_unique<IndexedString>(q, t.d(), 4 * t.n() + 4);
}

namespace {

// what one ToC answer reveals about the symbol q_{level+1} at each level
struct PathInfo {
    const TocAnswer& ans;
    int d;
    int n;

    // 1: q_{l+1} is the last symbol, 0: it is not, -1: unknown
    int is_last(int level) const {
        if (ans.whole) return 1;
        int head = d - ans.h;
        if (level >= head) return 1;
        if (level == head - 1) return 0;
        return -1;
    }
    int32_t phi(int level) const {
        if (ans.whole || level != d - ans.h - 1)
            throw std::logic_error("ToC answer does not determine the partner at this level");
        return ans.phi;
    }
    // connector neighbours of a = q_{level+1}; 0 when absent
    int32_t next(int level, int32_t a) const {
        if (a % 2 == 1) return a + 1;
        int last = is_last(level);
        if (last == 1) return 0;
        return phi(level);
    }
    int32_t prev(int level, int32_t a) const {
        if (a % 2 == 1) return phi(level);
        return a == 2 ? 0 : a - 1;
    }
};

StringAnswer answer_rec(const PathInfo& info, int level, bool q_kind, const Symbols& w) {
    int h = static_cast<int>(w.size());
    if (h == 1) {
        int32_t a = (w[0] + 1) / 2;
        int32_t p = info.prev(level, a), nx = info.next(level, a);
        int32_t before = p ? 2 * p - 1 : 1;
        int32_t after = nx ? 2 * nx - 1 : 0;
        if (!q_kind) return {before, after};
        return {after, before};
    }
    int t = 0;
    for (int i = 0; i < h; ++i)
        if (w[i] % 2) t = i + 1;
    int k = (t == h) ? 1 : t + 1;
    int32_t c = w[k - 1];
    int32_t a = c / 2;
    bool child_q = (a % 2 == 0) ? q_kind : !q_kind;
    Symbols v;
    for (int i = 0; i < h; ++i)
        if (i != k - 1) v.push_back(w[i]);
    StringAnswer sub = answer_rec(info, level + 1, child_q, v);
    if (sub.absent()) return {};
    int32_t x = sub.left, y = sub.right;
    if (!q_kind) {
        if (k == 1) {
            if (!x) return {};
            if (y) return {x, c};
            int32_t nx = info.next(level, a);
            return {x, nx ? 2 * nx : 0};
        }
        if (k == h) {
            if (!y) return {};
            if (x) return {c, y};
            int32_t p = info.prev(level, a);
            return {p ? 2 * p : 2, y};
        }
        return sub;
    }
    if (k == 1) {
        int32_t left = x;
        if (!x) {
            if (a % 2 == 1) return {};
            int last = info.is_last(level);
            if (last < 0) throw std::logic_error("ToC answer does not determine the last symbol");
            if (!last) return {};
        }
        if (y) return {left, c};
        int32_t p = info.prev(level, a);
        return {left, p ? 2 * p : 2};
    }
    if (k == h) {
        if (!y) return {};
        if (x) return {c, y};
        int32_t nx = info.next(level, a);
        return {nx ? 2 * nx : c, y};
    }
    return sub;
}

}  // namespace

StringPair TocStrings::answers(const Symbols& u) const {
    int d = t_.d(), n = t_.n();
    if (int(u.size()) != d) throw std::invalid_argument("string_answers_from_toc: window length");
    int odd = 0, odd_pos = -1;
    bool small = false;
    for (int i = 0; i < d; ++i) {
        if (u[i] < 1 || u[i] > 4 * n + 4) return {};
        if (u[i] % 2) {
            ++odd;
            odd_pos = i;
        }
        if (u[i] <= 2) small = true;
    }
    if (odd != 1) return {};
    if (small) return {id_s_->query(u), id_q_->query(u)};
    int t = odd_pos + 1;
    int k = (t == d) ? 1 : t + 1;
    Symbols rot(d);
    for (int j = 0; j < d; ++j) rot[j] = u[(k - 1 + j) % d];
    Name q(d);
    for (int j = 0; j < d - 1; ++j) q[j] = rot[j] / 2;
    q[d - 1] = (rot[d - 1] + 1) / 2;
    TocAnswer ans = t_.oracle(q);
    PathInfo info{ans, d, n};
    return {answer_rec(info, 0, false, u), answer_rec(info, 0, true, u)};
}

StringAnswer TocStringOracle::query(const int32_t* w) {
    uint64_t before = strings_.toc().queries;
    Symbols u(w, w + window());
    StringPair p = strings_.answers(u);
    max_toc_per_answer = std::max(max_toc_per_answer, strings_.toc().queries - before);
    return use_q_ ? p.q : p.s;
}

}  // namespace dbf
