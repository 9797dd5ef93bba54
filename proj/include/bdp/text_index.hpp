#pragma once

#include <optional>
#include <vector>

#include "bdp/text.hpp"

namespace bdp {

class TextIndex;

/// One step of an SA_k traversal: a suffix start and its lcp with T[k..].
struct Neighbor {
    Pos pos;
    Pos lcp;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/**
 * Online enumeration of SA_k: every position of the text, ordered by
 * non-increasing lcp with the suffix starting at k.
 *
 * The cursor keeps a window of suffix-array ranks around ISA[k] and the lcp
 * of T[k..] with both window ends, so each step costs O(1). When both sides
 * tie, the smaller rank is taken first.
 */
class SuffixNeighborhood {
public:
    SuffixNeighborhood(const TextIndex& index, Pos k);

    /// Next (position, lcp) pair, or nullopt once all n positions were yielded.
    std::optional<Neighbor> next();

private:
    const TextIndex* index_;
    Pos origin_;
    // 0-based inclusive rank window [lo_, hi_]; p_/q_ are lcp(k, SA[lo_]) and lcp(k, SA[hi_]).
    Pos lo_ = 0;
    Pos hi_ = 0;
    Pos p_ = 0;
    Pos q_ = 0;
    bool started_ = false;
};

/// Suffix array, inverse suffix array, LCP and LPF arrays over one text.
///
/// All accessors take and return 1-based positions and ranks.
class TextIndex {
public:
    explicit TextIndex(Text text);

    const Text& text() const { return text_; }
    Pos size() const { return text_.size(); }

    Pos sa(Pos rank) const { return sa_[rank - 1] + 1; }
    Pos isa(Pos pos) const { return isa_[pos - 1] + 1; }
    /// lcp of the suffixes of rank r and r-1; 0 for r = 1.
    Pos lcp(Pos rank) const { return lcp_[rank - 1]; }
    /// Longest prefix of T[i..] that also starts at some p < i.
    Pos lpf(Pos pos) const { return lpf_[pos - 1]; }
    /// A previous start p < i with lcp(i, p) = lpf(i); 0 when lpf(i) = 0.
    Pos lpf_source(Pos pos) const { return lpf_src_[pos - 1]; }

    /// Length of the longest common prefix of T[i..] and T[j..], by direct comparison.
    Pos lcp_of(Pos i, Pos j) const;

    SuffixNeighborhood neighborhood(Pos k) const { return SuffixNeighborhood(*this, k); }

    std::vector<Pos> sa_array() const;
    std::vector<Pos> isa_array() const;
    std::vector<Pos> lcp_array() const { return lcp_; }
    std::vector<Pos> lpf_array() const { return lpf_; }

private:
    friend class SuffixNeighborhood;

    Text text_;
    // 0-based internal layout: sa_[r] and isa_[p] hold 0-based values.
    std::vector<Pos> sa_;
    std::vector<Pos> isa_;
    std::vector<Pos> lcp_;
    std::vector<Pos> lpf_;
    std::vector<Pos> lpf_src_;
};

/// Factor lengths together with the occurrence each length was taken from.
struct FactorArray {
    std::vector<Pos> length;  ///< indexed by position - 1
    std::vector<Pos> source;  ///< 1-based start of the occurrence, 0 when length is 0
};

/// LNF[i]: longest prefix of T[i..] that occurs starting in T[i+1..].
FactorArray longest_next_factors(const Text& text);

/// LPF'[i]: longest substring ending at i that occurs inside T[1..i-1].
/// source holds the 1-based end of that earlier occurrence.
FactorArray longest_previous_factors_ending(const Text& text);

std::vector<Pos> lnf(const Text& text);
std::vector<Pos> lpf_prime(const Text& text);

namespace detail {

/// 0-based suffix array of `s` over the integer alphabet [0, upper].
std::vector<Pos> suffix_array(const std::vector<Pos>& s, Pos upper);

}  // namespace detail

}  // namespace bdp
