#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "dbf/brouwer.hpp"
#include "dbf/graph.hpp"
#include "dbf/toc.hpp"

namespace dbf {

enum class Layer { NT, ES, GP, CGP, ZP };

Layer parse_layer(const std::string& s);  // throws std::invalid_argument
std::string to_string(Layer l);

struct LayerCounts {
    uint64_t toc = 0;        // ToC oracle calls
    uint64_t strings = 0;    // string oracle calls
    uint64_t gstar = 0;      // G* H-set computations
    uint64_t gprime = 0;     // G' queries
    uint64_t canonical = 0;  // canonical graph queries
    uint64_t brouwer = 0;    // f_G evaluations
};

LayerCounts operator-(const LayerCounts& a, const LayerCounts& b);

// ToC -> strings -> G* -> G' -> canonical graph -> Brouwer function, with a counter per layer
class ReductionStack {
public:
    static std::unique_ptr<ReductionStack> from_toc(int n, int depth, uint64_t seed);
    static std::unique_ptr<ReductionStack> from_toc(ToC t);
    // an explicit d-non-repeating string with window w over [1, alphabet]
    static std::unique_ptr<ReductionStack> from_string(Symbols s, int window, int alphabet);

    ReductionStack(const ReductionStack&) = delete;
    ReductionStack& operator=(const ReductionStack&) = delete;

    const ToC* toc() const { return toc_.get(); }
    StringOracle& strings() { return *counted_; }
    GStar& gstar() { return *gstar_; }
    GPrime& gprime() { return *gprime_; }
    Canonical& canonical() { return *canonical_; }
    Brouwer& brouwer() { return *brouwer_; }
    GraphOracle& graph(Layer l);  // GP or CGP

    int dim() const { return gstar_->dim(); }
    int window() const { return counted_->window(); }
    int alphabet() const { return counted_->alphabet(); }
    // the whole string behind the oracle; S[T] for ToC instances
    const Symbols& explicit_string();
    // F(end_w(S)), the last vertex of G*
    Point gstar_end();

    LayerCounts counts() const;
    uint64_t max_toc_per_answer() const;

private:
    ReductionStack() = default;
    void wire(const Symbols& first_block);

    std::unique_ptr<ToC> toc_;
    std::unique_ptr<StringOracle> base_;
    std::unique_ptr<CountingString> counted_;
    std::unique_ptr<GStar> gstar_;
    std::unique_ptr<GPrime> gprime_;
    std::unique_ptr<Canonical> canonical_;
    std::unique_ptr<Brouwer> brouwer_;
    Symbols string_;
    bool have_string_ = false;
};

}  // namespace dbf
