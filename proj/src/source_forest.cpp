#include "bdp/source_forest.hpp"

#include <string>
#include <utility>

namespace bdp {

SourceForest::SourceForest(Pos n) : parent_(n), rank_(n, 0), source_(n) {
    for (Pos x = 0; x < n; ++x) {
        parent_[x] = x;
        source_[x] = x + 1;
    }
}

void SourceForest::check(Pos x) const {
    if (x < 1 || x > size()) {
        throw std::out_of_range("position " + std::to_string(x) + " outside 1.." + std::to_string(size()));
    }
}

Pos SourceForest::root(Pos x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
        ++counters_.parent_steps;
    }
    return x;
}

Pos SourceForest::find_source(Pos x) {
    check(x);
    ++counters_.finds;
    return source_[root(x - 1)];
}

void SourceForest::commit_union(Pos copied, Pos referenced) {
    check(copied);
    check(referenced);
    Pos a = root(copied - 1);
    Pos b = root(referenced - 1);
    if (a == b) {
        throw CycleError("positions " + std::to_string(copied) + " and " + std::to_string(referenced) +
                         " already share source " + std::to_string(source_[a]));
    }
    ++counters_.unions;
    const Pos src = source_[b];
    if (rank_[a] > rank_[b]) std::swap(a, b);
    parent_[a] = b;
    if (rank_[a] == rank_[b]) ++rank_[b];
    source_[b] = src;
}

std::vector<Pos> SourceForest::sources() {
    std::vector<Pos> out(size());
    for (Pos x = 0; x < size(); ++x) out[x] = source_[root(x)];
    return out;
}

ScratchOverlay::ScratchOverlay(Pos n) : w_(n, kUnset) {}

void ScratchOverlay::open(Pos window_start) {
    window_start_ = window_start;
    window_end_ = window_start;
}

std::uint32_t ScratchOverlay::make_set(Pos x) {
    const auto id = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(id);
    rank_.push_back(0);
    source_.push_back(x);
    w_[x - 1] = id;
    touched_.push_back(x);
    return id;
}

std::uint32_t ScratchOverlay::root(std::uint32_t id) {
    while (parent_[id] != id) {
        parent_[id] = parent_[parent_[id]];
        id = parent_[id];
    }
    return id;
}

Pos ScratchOverlay::source(SourceForest& forest, Pos x) {
    const Pos y = forest.find_source(x);
    if (y < window_start_ || y >= window_end_) return y;
    // Every covered position was registered when the window grew over it.
    return source_[root(static_cast<std::uint32_t>(w_[y - 1]))];
}

void ScratchOverlay::unite(SourceForest& forest, Pos copied, Pos referenced) {
    if (copied != window_end_) {
        throw std::logic_error("overlay extension at " + std::to_string(copied) + ", expected " +
                               std::to_string(window_end_));
    }
    const Pos src = source(forest, referenced);
    if (src == copied) {
        throw CycleError("tentative copy " + std::to_string(copied) + " <- " + std::to_string(referenced) +
                         " closes a cycle");
    }
    // `copied` is still a character phrase here, so it is its own base source.
    std::uint32_t a = w_[copied - 1] == kUnset ? make_set(copied) : root(static_cast<std::uint32_t>(w_[copied - 1]));
    std::uint32_t b = w_[src - 1] == kUnset ? make_set(src) : root(static_cast<std::uint32_t>(w_[src - 1]));
    if (rank_[a] > rank_[b]) std::swap(a, b);
    parent_[a] = b;
    if (rank_[a] == rank_[b]) ++rank_[b];
    source_[b] = src;
    ++window_end_;
}

void ScratchOverlay::reset() {
    last_touched_ = touched_.size();
    for (Pos x : touched_) w_[x - 1] = kUnset;
    touched_.clear();
    parent_.clear();
    rank_.clear();
    source_.clear();
    window_end_ = window_start_;
}

bool ScratchOverlay::clean() const {
    for (auto v : w_) {
        if (v != kUnset) return false;
    }
    return touched_.empty();
}

}  // namespace bdp
