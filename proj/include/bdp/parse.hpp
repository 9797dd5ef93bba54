#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdp/text.hpp"

namespace bdp {

/// A bidirectional phrase: either a copy <ref, len> of T[ref..ref+len-1] or a
/// single literal byte.
class Phrase {
public:
    static Phrase literal(std::uint8_t ch) { return Phrase(0, 1, ch); }
    static Phrase target(Pos ref, Pos len) { return Phrase(ref, len, 0); }

    bool is_literal() const { return ref_ == 0; }
    Pos ref() const { return ref_; }
    Pos length() const { return len_; }
    std::uint8_t ch() const { return ch_; }

    friend bool operator==(const Phrase&, const Phrase&) = default;

private:
    Phrase(Pos ref, Pos len, std::uint8_t ch) : ref_(ref), len_(len), ch_(ch) {}

    Pos ref_;
    Pos len_;
    std::uint8_t ch_;
};

/// Phrases f_1..f_b over a text of length n. The phrases may cover only a
/// prefix of the text; uncovered positions count as literal phrases.
struct Parse {
    std::vector<Phrase> phrases;
    Pos n = 0;

    std::size_t size() const { return phrases.size(); }
    Pos covered() const;

    friend bool operator==(const Parse&, const Parse&) = default;
};

enum class Verdict {
    valid,
    cyclic,             ///< some reference chain never reaches a literal
    length_mismatch,    ///< phrases overrun n, or n differs from the text
    self_reference,     ///< a target phrase copies from its own start
    out_of_range,       ///< reference outside 1..n, or zero-length target
    content_mismatch,   ///< a phrase does not spell the text it claims to cover
};

const char* to_string(Verdict v);

struct Validation {
    Verdict verdict = Verdict::valid;
    /// Smallest position on the detected cycle, or the start of the offending
    /// phrase for structural failures. 0 when valid.
    Pos witness = 0;

    bool ok() const { return verdict == Verdict::valid; }
    bool structural() const { return verdict != Verdict::valid && verdict != Verdict::cyclic; }
};

/// Checks structure first, then that every reference chain ends in a literal.
/// Linear time: each position is resolved once.
Validation validate(const Parse& parse, const Text& text);

/// Structure-only checks that need no text (lengths, ranges, self copies).
Validation check_structure(const Parse& parse);

class DecodeError : public std::runtime_error {
public:
    DecodeError(Verdict v, Pos witness, const std::string& what)
        : std::runtime_error(what), verdict_(v), witness_(witness) {}
    Verdict verdict() const { return verdict_; }
    Pos witness() const { return witness_; }

private:
    Verdict verdict_;
    Pos witness_;
};

/// Rebuilds the text. The parse must cover all n positions and be acyclic.
Text decode(const Parse& parse);

/// The literal position whose byte ultimately supplies position x.
Pos source_of(const Parse& parse, Pos x);

/// Sources of all positions 1..n, or the cycle witness if some chain loops.
struct Resolution {
    std::vector<Pos> source;
    std::optional<Pos> cycle;
};
Resolution resolve_sources(const Parse& parse);

// --- serialization ---------------------------------------------------------

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parse as stored on disk, plus whether it was computed over the reversed text.
struct ParseFile {
    Parse parse;
    bool reversed = false;

    friend bool operator==(const ParseFile&, const ParseFile&) = default;
};

enum class Format { binary, json };

/// BDP1 binary layout: "BDP1", version 0x01, flags (bit 0 = reversed),
/// n (u64 LE), b (u64 LE), then b records of tag 0x00 + byte, or tag 0x01 +
/// ref (u64 LE) + len (u64 LE).
std::vector<std::uint8_t> serialize(const ParseFile& file, Format format = Format::binary);
std::vector<std::uint8_t> serialize(const Parse& parse);

/// Detects the format from the leading bytes. Throws FormatError.
ParseFile deserialize(std::span<const std::uint8_t> bytes);
ParseFile deserialize(std::span<const std::uint8_t> bytes, Format format);

}  // namespace bdp
