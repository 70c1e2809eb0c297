#include "dbf/pipeline.hpp"

#include <stdexcept>

namespace dbf {

Layer parse_layer(const std::string& s) {
    if (s == "NT") return Layer::NT;
    if (s == "ES") return Layer::ES;
    if (s == "GP") return Layer::GP;
    if (s == "CGP") return Layer::CGP;
    if (s == "ZP") return Layer::ZP;
    throw std::invalid_argument("unknown layer '" + s + "'");
}

std::string to_string(Layer l) {
    switch (l) {
        case Layer::NT: return "NT";
        case Layer::ES: return "ES";
        case Layer::GP: return "GP";
        case Layer::CGP: return "CGP";
        case Layer::ZP: return "ZP";
    }
    return "?";
}

LayerCounts operator-(const LayerCounts& a, const LayerCounts& b) {
    return {a.toc - b.toc,         a.strings - b.strings,     a.gstar - b.gstar,
            a.gprime - b.gprime, a.canonical - b.canonical, a.brouwer - b.brouwer};
}

std::unique_ptr<ReductionStack> ReductionStack::from_toc(int n, int depth, uint64_t seed) {
    return from_toc(ToC(n, depth, seed));
}

std::unique_ptr<ReductionStack> ReductionStack::from_toc(ToC t) {
    std::unique_ptr<ReductionStack> r(new ReductionStack());
    r->toc_ = std::make_unique<ToC>(std::move(t));
    r->base_ = std::make_unique<TocStringOracle>(*r->toc_);
    r->wire(start_block(r->toc_->d()));
    return r;
}

std::unique_ptr<ReductionStack> ReductionStack::from_string(Symbols s, int window, int alphabet) {
    if (!is_d_non_repeating(s, window)) throw std::invalid_argument("from_string: string is not non-repeating");
    if (int(s.size()) < window) throw std::invalid_argument("from_string: string shorter than the window");
    std::unique_ptr<ReductionStack> r(new ReductionStack());
    Symbols first(s.begin(), s.begin() + window);
    r->base_ = std::make_unique<IndexedString>(s, window, alphabet);
    r->string_ = std::move(s);
    r->have_string_ = true;
    r->wire(first);
    return r;
}

void ReductionStack::wire(const Symbols& first_block) {
    counted_ = std::make_unique<CountingString>(*base_);
    gstar_ = std::make_unique<GStar>(*counted_, first_block);
    gprime_ = std::make_unique<GPrime>(*gstar_);
    canonical_ = std::make_unique<Canonical>(*gprime_);
    brouwer_ = std::make_unique<Brouwer>(*canonical_);
}

GraphOracle& ReductionStack::graph(Layer l) {
    if (l == Layer::GP) return *gprime_;
    if (l == Layer::CGP) return *canonical_;
    throw std::invalid_argument("graph: layer " + to_string(l) + " is not a graph layer");
}

const Symbols& ReductionStack::explicit_string() {
    if (!have_string_) {
        string_ = build_S(*toc_);
        have_string_ = true;
    }
    return string_;
}

Point ReductionStack::gstar_end() { return f_embed(end_d(explicit_string(), window())); }

LayerCounts ReductionStack::counts() const {
    LayerCounts c;
    c.toc = toc_ ? toc_->queries : 0;
    c.strings = counted_->count;
    c.gstar = gstar_->queries;
    c.gprime = gprime_->queries;
    c.canonical = canonical_->queries;
    c.brouwer = brouwer_->evals;
    return c;
}

uint64_t ReductionStack::max_toc_per_answer() const {
    auto* t = dynamic_cast<TocStringOracle*>(base_.get());
    return t ? t->max_toc_per_answer : 0;
}

}  // namespace dbf
