#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bdp/text.hpp"

namespace bdp {

/// Thrown when a union would join two positions that already share a source,
/// i.e. when committing the copy would close a reference cycle.
class CycleError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct ForestCounters {
    std::uint64_t finds = 0;
    std::uint64_t unions = 0;
    std::uint64_t parent_steps = 0;
};

/**
 * Disjoint sets over positions 1..n where positions in one set resolve to the
 * same source, the one position of the set that is still a character phrase.
 *
 * Union by rank with path halving. The representative of a set is an internal
 * detail; find_source() reports the source position, which is tracked per root
 * and re-pointed on every union to the referenced side's source.
 */
class SourceForest {
public:
    explicit SourceForest(Pos n);

    Pos size() const { return parent_.size(); }

    Pos find_source(Pos x);

    /// `copied` now copies its character from `referenced`: merge the two sets,
    /// keeping the source of `referenced`. Throws CycleError if they already
    /// share a source.
    void commit_union(Pos copied, Pos referenced);

    /// Sources of every position, 1..n.
    std::vector<Pos> sources();

    const ForestCounters& counters() const { return counters_; }

private:
    Pos root(Pos x);
    void check(Pos x) const;

    std::vector<Pos> parent_;
    std::vector<std::uint8_t> rank_;
    std::vector<Pos> source_;
    ForestCounters counters_;
};

/**
 * Scratch union-find used to evaluate a tentative phrase <j, l> at start i
 * without touching the committed forest.
 *
 * Only positions on the tentative phrase and their sources change source, so
 * those are the only ones mirrored here. W maps a text position to an overlay
 * id (ids are allocated consecutively); every W slot written is recorded so
 * reset() runs in time proportional to the work done since the last reset.
 */
class ScratchOverlay {
public:
    explicit ScratchOverlay(Pos n);

    /// Starts a tentative phrase at position i with length 0.
    void open(Pos window_start);

    Pos window_start() const { return window_start_; }
    Pos window_end() const { return window_end_; }  // exclusive

    /// Source of x under the committed parse followed by the tentative phrase.
    Pos source(SourceForest& forest, Pos x);

    /// Extends the tentative phrase by one: position `copied` (the current
    /// window end) now copies from `referenced`.
    void unite(SourceForest& forest, Pos copied, Pos referenced);

    /// Restores W to all-sentinel and drops the overlay sets.
    void reset();

    std::size_t touched() const { return touched_.size(); }
    std::size_t last_touched() const { return last_touched_; }
    bool clean() const;

private:
    std::uint32_t make_set(Pos x);
    std::uint32_t root(std::uint32_t id);

    static constexpr std::int64_t kUnset = -1;

    std::vector<std::int64_t> w_;
    std::vector<Pos> touched_;
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint8_t> rank_;
    std::vector<Pos> source_;
    Pos window_start_ = 1;
    Pos window_end_ = 1;
    std::size_t last_touched_ = 0;
};

}  // namespace bdp
