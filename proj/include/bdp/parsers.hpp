#pragma once

#include <functional>
#include <string_view>

#include "bdp/parse.hpp"
#include "bdp/source_forest.hpp"
#include "bdp/text_index.hpp"

namespace bdp {

enum class Algorithm { lz77, lz_prime, lzor, lex, lzrr };

/// CLI names: lz77, lzp, lzor, lex, lzrr.
std::string_view name_of(Algorithm a);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

/// Greedy left-to-right, each phrase the longest previous factor.
Parse lz77(const TextIndex& index);

/// Greedy right-to-left, each phrase the longest substring ending at the
/// current end that occurs entirely before it.
Parse lz_prime(const Text& text);

/// Greedy left-to-right, each phrase the longest factor occurring later.
Parse lzor(const Text& text);

/// Each phrase copies from the lexicographically preceding suffix.
Parse lex_parse(const TextIndex& index);

/**
 * Incremental LZRR parsing state: the committed phrases, the source forest of
 * the committed parse, and the scratch overlay used to test tentative phrases.
 *
 * The index must outlive the session.
 */
class LzrrSession {
public:
    explicit LzrrSession(const TextIndex& index);

    /// Start of the next phrase.
    Pos next_start() const { return next_; }
    bool done() const { return next_ > index_->size(); }

    /// Longest l <= lcp(i, j) such that committed phrases followed by <j, l>
    /// stay valid. The committed forest is left unchanged.
    Pos lf(Pos j);

    /// Longest valid phrase at next_start(), or the literal there if none.
    Phrase lp();

    /// Appends a phrase. Throws std::invalid_argument if it does not match the
    /// text and CycleError if it would make the parse invalid.
    void commit(const Phrase& phrase);

    const Parse& parse() const { return parse_; }
    SourceForest& forest() { return forest_; }
    const ScratchOverlay& overlay() const { return overlay_; }

    /// Number of lf evaluations so far.
    std::uint64_t lf_calls() const { return lf_calls_; }

private:
    const TextIndex* index_;
    Pos next_ = 1;
    Parse parse_;
    SourceForest forest_;
    ScratchOverlay overlay_;
    std::uint64_t lf_calls_ = 0;
};

Parse lzrr(const TextIndex& index);
Parse lzrr(const Text& text);

/// Runs any algorithm on a text, building whatever index it needs.
Parse run(Algorithm algorithm, const Text& text);

struct DirectedParse {
    Parse parse;
    bool reversed = false;
};

/// Parses T and its reversal and keeps the one with fewer phrases; ties keep T.
DirectedParse best_of_reverse(const std::function<Parse(const Text&)>& algorithm, const Text& text);
DirectedParse best_of_reverse(Algorithm algorithm, const Text& text);

}  // namespace bdp
