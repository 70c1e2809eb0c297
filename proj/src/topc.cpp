#include "dbf/topc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dbf {

namespace {

int block_of(int32_t s) { return s == 2 ? 0 : (s - 1) / 2; }
int32_t first_symbol(int b) { return b == 0 ? 2 : 2 * b + 1; }
int32_t last_symbol(int b) { return b == 0 ? 2 : 2 * b + 2; }

Name child(const Name& v, int32_t a) {
    Name c = v;
    c.push_back(a);
    return c;
}

bool near(double a, double b) { return std::fabs(a - b) < 1e-9; }

}  // namespace

PartialConnector PartialConnector::empty(int n) {
    PartialConnector p;
    p.n_ = n;
    for (int b = 0; b <= n; ++b) p.segs_.push_back({b});
    return p;
}

PartialConnector PartialConnector::from_connector(const Connector& c) {
    PartialConnector p;
    p.n_ = c.n();
    std::vector<int> seg{0};
    seg.insert(seg.end(), c.perm.begin(), c.perm.end());
    p.segs_.push_back(seg);
    return p;
}

int32_t PartialConnector::r() const { return last_symbol(segs_[0].back()); }

std::set<int32_t> PartialConnector::L() const {
    std::set<int32_t> out;
    for (size_t i = 1; i < segs_.size(); ++i) out.insert(first_symbol(segs_[i].front()));
    return out;
}

std::set<int32_t> PartialConnector::R() const {
    std::set<int32_t> out;
    for (size_t i = 1; i < segs_.size(); ++i) out.insert(last_symbol(segs_[i].back()));
    return out;
}

bool PartialConnector::is_endpoint(int32_t s) const {
    if (s == r()) return true;
    int b = block_of(s);
    for (size_t i = 1; i < segs_.size(); ++i) {
        if (segs_[i].front() == b && s == first_symbol(b)) return true;
        if (segs_[i].back() == b && s == last_symbol(b)) return true;
    }
    return false;
}

int32_t PartialConnector::phi(int32_t s) const {
    int b = block_of(s);
    for (const auto& seg : segs_) {
        auto it = std::find(seg.begin(), seg.end(), b);
        if (it == seg.end()) continue;
        bool goes_right = (s % 2 == 0);
        if (goes_right) {
            if (it + 1 == seg.end()) return 0;
            return first_symbol(*(it + 1));
        }
        if (it == seg.begin()) return 0;
        return last_symbol(*(it - 1));
    }
    throw std::invalid_argument("partial connector: symbol out of J_n");
}

bool PartialConnector::consistent_with(const Connector& c) const {
    if (c.n() != n_) return false;
    std::vector<int> order{0};
    order.insert(order.end(), c.perm.begin(), c.perm.end());
    std::vector<int> where(n_ + 1);
    for (int i = 0; i <= n_; ++i) where[order[i]] = i;
    for (const auto& seg : segs_)
        for (size_t i = 1; i < seg.size(); ++i)
            if (where[seg[i]] != where[seg[i - 1]] + 1) return false;
    return true;
}

void PartialConnector::merge(int32_t end, int32_t start) {
    int eb = block_of(end), sb = block_of(start);
    if (last_symbol(eb) != end || first_symbol(sb) != start)
        throw std::logic_error("partial connector: merge symbols are not segment ends");
    int ei = -1, si = -1;
    for (size_t i = 0; i < segs_.size(); ++i) {
        if (segs_[i].back() == eb) ei = int(i);
        if (segs_[i].front() == sb) si = int(i);
    }
    if (ei < 0 || si < 0 || ei == si || si == 0)
        throw std::logic_error("partial connector: inconsistent merge");
    segs_[ei].insert(segs_[ei].end(), segs_[si].begin(), segs_[si].end());
    segs_.erase(segs_.begin() + si);
}

std::string PartialConnector::to_string() const {
    std::string s = "{";
    for (size_t i = 0; i < segs_.size(); ++i) {
        if (i) s += " | ";
        for (size_t j = 0; j < segs_[i].size(); ++j) {
            int b = segs_[i][j];
            if (j) s += " ";
            s += b == 0 ? "2" : std::to_string(first_symbol(b)) + " " + std::to_string(last_symbol(b));
        }
    }
    return s + "}";
}

ToPC::ToPC(int n, int d, const ToC* source) : n_(n), d_(d), source_(source) {}

bool ToPC::is_grafted(const Name& v) const {
    for (size_t k = 0; k <= v.size(); ++k)
        if (grafted_.count(Name(v.begin(), v.begin() + k))) return true;
    return false;
}

PartialConnector ToPC::at(const Name& v) const {
    if (is_grafted(v)) {
        if (!source_) throw std::logic_error("ToPC: grafted node without a source tree");
        return PartialConnector::from_connector(source_->connector(v));
    }
    auto it = partials_.find(v);
    return it == partials_.end() ? PartialConnector::empty(n_) : it->second;
}

void ToPC::graft(const Name& v) {
    if (is_grafted(v)) return;
    for (auto it = grafted_.begin(); it != grafted_.end();) {
        bool below = it->size() > v.size() && std::equal(v.begin(), v.end(), it->begin());
        it = below ? grafted_.erase(it) : std::next(it);
    }
    for (auto it = partials_.begin(); it != partials_.end();) {
        bool below = it->first.size() >= v.size() && std::equal(v.begin(), v.end(), it->first.begin());
        it = below ? partials_.erase(it) : std::next(it);
    }
    grafted_.insert(v);
}

void ToPC::merge(const Name& v, int32_t end, int32_t start) {
    if (is_grafted(v)) throw std::logic_error("ToPC: merge inside a known subtree");
    auto it = partials_.find(v);
    if (it == partials_.end()) it = partials_.emplace(v, PartialConnector::empty(n_)).first;
    it->second.merge(end, start);
}

bool ToPC::consistent(const ToC& t) const {
    bool ok = true;
    std::function<void(const Name&)> walk = [&](const Name& v) {
        if (!ok || int(v.size()) == d_) return;
        if (is_grafted(v)) {
            ok = t.connector(v).perm == source_->connector(v).perm;
        } else {
            ok = at(v).consistent_with(t.connector(v));
        }
        for (int a = 2; ok && a <= 2 * n_ + 2; ++a) walk(child(v, a));
    };
    walk({});
    return ok;
}

bool ToPC::is_valid() const {
    for (const auto& [v, c] : partials_) {
        int height = d_ - static_cast<int>(v.size());
        if (height < 2) continue;
        for (const auto& seg : c.segments()) {
            for (size_t i = 0; i < seg.size(); ++i) {
                int32_t s = last_symbol(seg[i]);
                int32_t t = c.phi(s);
                if (t == 0) continue;
                Name vs = child(v, s), vt = child(v, t);
                if (!is_grafted(vs) || !is_grafted(vt)) return false;
                Name us = source_->tail_name(vs), ut = source_->tail_name(vt);
                if (!std::equal(us.end() - (height - 1), us.end(), ut.end() - (height - 1))) return false;
            }
        }
    }
    return true;
}

bool ToPC::is_beta_valid(double beta) const {
    if (!is_valid()) return false;
    auto beta_partial = [&](const PartialConnector& c) {
        return c.segment_count() + 1e-9 >= (1 - beta) * n_ + 1;
    };
    if (!beta_partial(at({}))) return false;
    std::set<Name> nodes{Name{}};
    auto add_prefixes = [&](const Name& v) {
        for (size_t k = 0; k <= v.size(); ++k)
            if (int(k) <= d_ - 2) nodes.insert(Name(v.begin(), v.begin() + k));
    };
    for (const auto& [v, c] : partials_) add_prefixes(v);
    for (const Name& v : grafted_) add_prefixes(v);
    for (const Name& v : nodes) {
        PartialConnector c = at(v);
        if (!beta_partial(c)) continue;
        std::set<int32_t> ends = c.L();
        for (int32_t x : c.R()) ends.insert(x);
        ends.insert(c.r());
        for (int32_t s : ends)
            if (!beta_partial(at(child(v, s)))) return false;
    }
    return true;
}

std::vector<ToC> enumerate_consistent(const ToPC& p, int64_t cap) {
    int n = p.n(), d = p.d();
    std::vector<Name> nodes;
    std::function<void(const Name&)> walk = [&](const Name& v) {
        if (int(v.size()) == d) return;
        nodes.push_back(v);
        for (int a = 2; a <= 2 * n + 2; ++a) walk(child(v, a));
    };
    walk({});
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<std::vector<Connector>> options(nodes.size());
    double total = 1;
    for (size_t i = 0; i < nodes.size(); ++i) {
        PartialConnector c = p.at(nodes[i]);
        for (const auto& pm : perms) {
            Connector full = Connector::from_perm(pm);
            if (c.consistent_with(full)) options[i].push_back(full);
        }
        total *= double(options[i].size());
        if (total > double(cap)) throw std::length_error("enumerate_consistent: assignment count exceeds cap");
    }
    std::vector<ToC> out;
    std::vector<size_t> digit(nodes.size(), 0);
    while (true) {
        std::map<Name, Connector> table;
        for (size_t i = 0; i < nodes.size(); ++i) table.emplace(nodes[i], options[i][digit[i]]);
        ToC t(n, d, std::move(table));
        if (t.is_valid()) out.push_back(std::move(t));
        size_t i = 0;
        while (i < digit.size() && ++digit[i] == options[i].size()) digit[i++] = 0;
        if (i == digit.size()) break;
    }
    return out;
}

int64_t TailCounts::min_count() const {
    int64_t m = INT64_MAX;
    for (auto& [p, c] : N) m = std::min(m, c);
    return N.empty() ? 0 : m;
}

int64_t TailCounts::max_count() const {
    int64_t m = 0;
    for (auto& [p, c] : N) m = std::max(m, c);
    return m;
}

TailCounts count_tails(const ToPC& p, int64_t cap) {
    TailCounts out;
    for (const ToC& t : enumerate_consistent(p, cap)) {
        ++out.N[t.tail()];
        ++out.total;
    }
    return out;
}

KnowledgeState::KnowledgeState(const ToC& truth, double b)
    : topc(truth.n(), truth.d(), &truth),
      beta(b),
      A(truth.d() + 1, 0),
      B(truth.d() + 1),
      B_mk(truth.d() + 1, std::vector<std::vector<uint8_t>>(truth.d())) {}

int64_t KnowledgeState::ones(int m) const { return std::count(B[m].begin(), B[m].end(), 1); }

int64_t KnowledgeState::ones(int m, int k) const { return std::count(B_mk[m][k].begin(), B_mk[m][k].end(), 1); }

bool KnowledgeState::at_threshold(const Name& v) const {
    if (topc.is_grafted(v)) return false;
    return near(double(topc.at(v).R().size()), (1 - beta) * topc.n());
}

Grant query_and_update(KnowledgeState& ks, const ToC& truth, const Name& q) {
    int d = truth.d();
    if (int(q.size()) != d) throw std::invalid_argument("query_and_update: query must name a leaf");
    Grant g;
    if (ks.done) {
        g.answer = truth.answer(q);
        return g;
    }
    bool open = true;
    for (int i = 0; i < d && open; ++i) {
        Name u(q.begin(), q.begin() + i);
        open = !ks.topc.is_grafted(u) && ks.topc.at(u).is_endpoint(q[i]);
    }
    if (!open) {
        g.answer = truth.answer(q);
        return g;
    }
    int m = d;
    for (int i = 0; i < d; ++i)
        if (ks.at_threshold(Name(q.begin(), q.begin() + i))) {
            m = i;
            break;
        }
    g.m = m;
    if (m == 0) {
        ks.I = 1;
        ks.done = true;
        ks.topc.graft({});
        g.kind = Grant::Everything;
        g.answer.whole = true;
        g.answer.h = d;
        return g;
    }
    Name asked(q.begin(), q.begin() + m);
    g.kind = Grant::Answer;
    g.answer = truth.oracle(asked);
    ++ks.A[m];
    ks.B[m].push_back(0);
    for (int k = 0; k < m; ++k) ks.B_mk[m][k].push_back(0);
    if (g.answer.whole) {
        ks.B[m].back() = 1;
        ks.done = true;
        ks.topc.graft({});
        return g;
    }
    int level = d - g.answer.h - 1;
    if (level < 0 || level >= m) throw std::logic_error("query_and_update: answer height out of range");
    Name v(q.begin(), q.begin() + level);
    int32_t a = q[level], partner = g.answer.phi;
    if (a % 2 == 0)
        ks.topc.merge(v, a, partner);
    else
        ks.topc.merge(v, partner, a);
    ks.B_mk[m][level].back() = 1;
    ks.topc.graft(g.answer.t1);
    ks.topc.graft(g.answer.t2);
    return g;
}

double alpha_value(int d, double beta) {
    if (d < 1) throw std::invalid_argument("alpha: d must be >= 1");
    double a = 1;
    for (int k = 2; k <= d; ++k) a = std::pow(a, 7) / std::pow(2 * std::pow(1 - beta, k - 1) - 1, 3);
    return a;
}

AlphaBound alpha_bound(int d, double beta) {
    if (d < 1) throw std::invalid_argument("alpha: d must be >= 1");
    if (beta < 0 || beta > std::pow(24.0, -d)) throw std::domain_error("alpha: beta outside [0, 24^-d]");
    return {alpha_value(d, beta), std::exp(2 * std::pow(24.0, d - 1) * beta)};
}

std::vector<ProbeRecord> key_lemma_probe(int n, int d, double beta, uint64_t seed, int queries, int64_t cap) {
    ToC truth(n, d, seed);
    KnowledgeState ks(truth, beta);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<int> sym(2, 2 * n + 2);
    std::vector<ProbeRecord> out;
    auto record = [&](int step) {
        ProbeRecord r;
        r.step = step;
        r.beta_valid = !ks.done && ks.I == 0 && ks.topc.is_beta_valid(beta);
        TailCounts tc = count_tails(ks.topc, cap);
        r.tails = static_cast<int64_t>(tc.N.size());
        r.min_count = tc.min_count();
        r.max_count = tc.max_count();
        out.push_back(r);
    };
    record(0);
    for (int step = 1; step <= queries && !ks.done; ++step) {
        Name q(d);
        for (auto& x : q) x = sym(rng);
        Grant g = query_and_update(ks, truth, q);
        if (g.kind != Grant::Known) record(step);
    }
    return out;
}

}  // namespace dbf
