#include "bdp/parse.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

namespace bdp {

namespace {

constexpr Pos kInProgress = std::numeric_limits<Pos>::max();

// g0 for every position: the referenced position for a copied character, 0
// for a literal (covered or not).
std::vector<Pos> reference_links(const Parse& parse) {
    std::vector<Pos> link(parse.n + 1, 0);
    Pos s = 1;
    for (const Phrase& f : parse.phrases) {
        if (!f.is_literal()) {
            for (Pos k = 0; k < f.length(); ++k) link[s + k] = f.ref() + k;
        }
        s += f.length();
    }
    return link;
}

}  // namespace

Pos Parse::covered() const {
    Pos total = 0;
    for (const Phrase& f : phrases) total += f.length();
    return total;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::valid: return "valid";
        case Verdict::cyclic: return "cyclic reference";
        case Verdict::length_mismatch: return "length mismatch";
        case Verdict::self_reference: return "self reference";
        case Verdict::out_of_range: return "reference out of range";
        case Verdict::content_mismatch: return "content mismatch";
    }
    return "unknown";
}

Validation check_structure(const Parse& parse) {
    const Pos n = parse.n;
    Pos s = 1;
    for (const Phrase& f : parse.phrases) {
        if (f.length() == 0 || f.length() > n || s > n - f.length() + 1) {
            return {f.length() == 0 ? Verdict::out_of_range : Verdict::length_mismatch, s};
        }
        if (!f.is_literal()) {
            if (f.ref() == s) return {Verdict::self_reference, s};
            if (f.ref() > n - f.length() + 1) return {Verdict::out_of_range, s};
        }
        s += f.length();
    }
    return {};
}

Resolution resolve_sources(const Parse& parse) {
    const Pos n = parse.n;
    const std::vector<Pos> link = reference_links(parse);
    Resolution out;
    out.source.assign(n + 1, 0);
    auto& src = out.source;
    std::vector<Pos> chain;

    for (Pos x = 1; x <= n; ++x) {
        if (src[x] != 0) continue;
        chain.clear();
        Pos y = x;
        while (src[y] == 0) {
            if (link[y] == 0) {
                src[y] = y;
                break;
            }
            src[y] = kInProgress;
            chain.push_back(y);
            y = link[y];
        }
        if (src[y] == kInProgress) {
            // y was entered while unresolved: the cycle is chain[pos(y)..].
            auto first = std::find(chain.begin(), chain.end(), y);
            out.cycle = *std::min_element(first, chain.end());
            return out;
        }
        const Pos root = src[y];
        for (Pos c : chain) src[c] = root;
    }
    return out;
}

Validation validate(const Parse& parse, const Text& text) {
    if (parse.n != text.size()) return {Verdict::length_mismatch, 0};
    if (Validation v = check_structure(parse); !v.ok()) return v;

    auto t = text.bytes();
    Pos s = 1;
    for (const Phrase& f : parse.phrases) {
        if (f.is_literal()) {
            if (t[s - 1] != f.ch()) return {Verdict::content_mismatch, s};
        } else if (!std::equal(t.begin() + (s - 1), t.begin() + (s - 1 + f.length()), t.begin() + (f.ref() - 1))) {
            return {Verdict::content_mismatch, s};
        }
        s += f.length();
    }

    Resolution r = resolve_sources(parse);
    if (r.cycle) return {Verdict::cyclic, *r.cycle};
    return {};
}

Text decode(const Parse& parse) {
    if (Validation v = check_structure(parse); !v.ok()) {
        throw DecodeError(v.verdict, v.witness, std::string("malformed parse: ") + to_string(v.verdict) +
                                                    " at position " + std::to_string(v.witness));
    }
    if (parse.covered() != parse.n) {
        throw DecodeError(Verdict::length_mismatch, parse.covered() + 1,
                          "parse covers " + std::to_string(parse.covered()) + " of " + std::to_string(parse.n) +
                              " positions");
    }
    Resolution r = resolve_sources(parse);
    if (r.cycle) {
        throw DecodeError(Verdict::cyclic, *r.cycle, "cyclic reference through position " + std::to_string(*r.cycle));
    }

    std::vector<std::uint8_t> literal(parse.n + 1, 0);
    Pos s = 1;
    for (const Phrase& f : parse.phrases) {
        if (f.is_literal()) literal[s] = f.ch();
        s += f.length();
    }
    std::vector<std::uint8_t> out(parse.n);
    for (Pos x = 1; x <= parse.n; ++x) out[x - 1] = literal[r.source[x]];
    return Text(std::move(out));
}

Pos source_of(const Parse& parse, Pos x) {
    if (x < 1 || x > parse.n) {
        throw std::out_of_range("position " + std::to_string(x) + " outside 1.." + std::to_string(parse.n));
    }
    if (Validation v = check_structure(parse); !v.ok()) {
        throw DecodeError(v.verdict, v.witness, std::string("malformed parse: ") + to_string(v.verdict));
    }
    // starts[k] is the first position of phrase k; positions past the last
    // phrase are implicit literals.
    std::vector<Pos> starts;
    starts.reserve(parse.size());
    Pos s = 1;
    for (const Phrase& f : parse.phrases) {
        starts.push_back(s);
        s += f.length();
    }
    const Pos covered_end = s;

    Pos y = x;
    for (Pos step = 0; step <= parse.n; ++step) {
        if (y >= covered_end) return y;
        auto it = std::upper_bound(starts.begin(), starts.end(), y) - 1;
        const Phrase& f = parse.phrases[static_cast<std::size_t>(it - starts.begin())];
        if (f.is_literal()) return y;
        y = f.ref() + (y - *it);
    }
    throw DecodeError(Verdict::cyclic, x, "position " + std::to_string(x) + " never reaches a literal");
}

// --- serialization ---------------------------------------------------------

namespace {

constexpr std::uint8_t kMagic[4] = {'B', 'D', 'P', '1'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::uint8_t kFlagReversed = 0x01;
constexpr std::uint8_t kTagLiteral = 0x00;
constexpr std::uint8_t kTagTarget = 0x01;
constexpr std::size_t kHeaderSize = 4 + 1 + 1 + 8 + 8;

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t remaining() const { return bytes_.size() - at_; }

    std::uint8_t u8() {
        need(1);
        return bytes_[at_++];
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(bytes_[at_ + k]) << (8 * k);
        at_ += 8;
        return v;
    }

private:
    void need(std::size_t k) const {
        if (remaining() < k) throw FormatError("truncated parse file at byte " + std::to_string(at_));
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t at_ = 0;
};

std::vector<std::uint8_t> to_binary(const ParseFile& file) {
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + file.parse.size() * 17);
    for (std::uint8_t m : kMagic) out.push_back(m);
    out.push_back(kVersion);
    out.push_back(file.reversed ? kFlagReversed : 0);
    put_u64(out, file.parse.n);
    put_u64(out, file.parse.size());
    for (const Phrase& f : file.parse.phrases) {
        if (f.is_literal()) {
            out.push_back(kTagLiteral);
            out.push_back(f.ch());
        } else {
            out.push_back(kTagTarget);
            put_u64(out, f.ref());
            put_u64(out, f.length());
        }
    }
    return out;
}

ParseFile from_binary(std::span<const std::uint8_t> bytes) {
    Reader in(bytes);
    for (std::uint8_t m : kMagic) {
        if (in.u8() != m) throw FormatError("bad magic, expected BDP1");
    }
    if (std::uint8_t v = in.u8(); v != kVersion) throw FormatError("unsupported version " + std::to_string(v));
    const std::uint8_t flags = in.u8();
    if ((flags & ~kFlagReversed) != 0) throw FormatError("unknown flag bits " + std::to_string(flags));

    ParseFile file;
    file.reversed = (flags & kFlagReversed) != 0;
    file.parse.n = in.u64();
    const std::uint64_t count = in.u64();
    // Every record takes at least two bytes.
    if (count > in.remaining() / 2) throw FormatError("phrase count exceeds file size");
    file.parse.phrases.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint8_t tag = in.u8();
        if (tag == kTagLiteral) {
            file.parse.phrases.push_back(Phrase::literal(in.u8()));
        } else if (tag == kTagTarget) {
            const std::uint64_t ref = in.u64();
            const std::uint64_t len = in.u64();
            if (ref == 0 || len == 0) throw FormatError("target record " + std::to_string(k) + " has zero field");
            file.parse.phrases.push_back(Phrase::target(ref, len));
        } else {
            throw FormatError("unknown record tag " + std::to_string(tag));
        }
    }
    if (in.remaining() != 0) throw FormatError("trailing bytes after last record");
    return file;
}

std::vector<std::uint8_t> to_json(const ParseFile& file) {
    nlohmann::json phrases = nlohmann::json::array();
    for (const Phrase& f : file.parse.phrases) {
        if (f.is_literal()) {
            phrases.push_back({{"literal", f.ch()}});
        } else {
            phrases.push_back({{"ref", f.ref()}, {"len", f.length()}});
        }
    }
    nlohmann::json doc = {{"format", "BDP1"},
                          {"version", kVersion},
                          {"reversed", file.reversed},
                          {"n", file.parse.n},
                          {"phrases", std::move(phrases)}};
    std::string s = doc.dump(1);
    s.push_back('\n');
    return {s.begin(), s.end()};
}

ParseFile from_json(std::span<const std::uint8_t> bytes) {
    try {
        auto doc = nlohmann::json::parse(bytes.begin(), bytes.end());
        if (doc.at("format").get<std::string>() != "BDP1") throw FormatError("bad format tag");
        if (doc.at("version").get<int>() != kVersion) throw FormatError("unsupported version");
        ParseFile file;
        file.reversed = doc.at("reversed").get<bool>();
        file.parse.n = doc.at("n").get<std::uint64_t>();
        for (const auto& p : doc.at("phrases")) {
            if (p.contains("literal")) {
                file.parse.phrases.push_back(Phrase::literal(p.at("literal").get<std::uint8_t>()));
            } else {
                const auto ref = p.at("ref").get<std::uint64_t>();
                const auto len = p.at("len").get<std::uint64_t>();
                if (ref == 0 || len == 0) throw FormatError("target phrase has zero field");
                file.parse.phrases.push_back(Phrase::target(ref, len));
            }
        }
        return file;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON parse: ") + e.what());
    }
}

}  // namespace

std::vector<std::uint8_t> serialize(const ParseFile& file, Format format) {
    return format == Format::binary ? to_binary(file) : to_json(file);
}

std::vector<std::uint8_t> serialize(const Parse& parse) { return to_binary(ParseFile{parse, false}); }

ParseFile deserialize(std::span<const std::uint8_t> bytes, Format format) {
    return format == Format::binary ? from_binary(bytes) : from_json(bytes);
}

ParseFile deserialize(std::span<const std::uint8_t> bytes) {
    auto first = std::find_if(bytes.begin(), bytes.end(), [](std::uint8_t c) {
        return c != ' ' && c != '\n' && c != '\r' && c != '\t';
    });
    if (first != bytes.end() && *first == '{') return from_json(bytes);
    return from_binary(bytes);
}

}  // namespace bdp
