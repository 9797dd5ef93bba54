#include "bdp/bdp.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "bdp/generate.hpp"
#include "bdp/parse.hpp"
#include "bdp/parsers.hpp"

struct bdp_parse {
    bdp::ParseFile file;
};

namespace {

thread_local std::string last_error;

bdp_status fail(bdp_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

bdp_status status_of(bdp::Verdict v) {
    switch (v) {
        case bdp::Verdict::valid: return BDP_OK;
        case bdp::Verdict::cyclic: return BDP_ERR_CYCLE;
        default: return BDP_ERR_STRUCTURE;
    }
}

// Runs `body`, mapping exceptions to status codes.
template <class F>
bdp_status guarded(F&& body) {
    try {
        last_error.clear();
        return body();
    } catch (const bdp::FormatError& e) {
        return fail(BDP_ERR_FORMAT, e.what());
    } catch (const bdp::DecodeError& e) {
        return fail(status_of(e.verdict()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(BDP_ERR_MEMORY, "out of memory");
    } catch (const std::invalid_argument& e) {
        return fail(BDP_ERR_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(BDP_ERR_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(BDP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(BDP_ERR_INTERNAL, "unknown exception");
    }
}

bdp_status to_buffer(const std::vector<std::uint8_t>& bytes, bdp_buffer* out) {
    auto* data = static_cast<std::uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
    if (data == nullptr) return fail(BDP_ERR_MEMORY, "out of memory");
    if (!bytes.empty()) std::memcpy(data, bytes.data(), bytes.size());
    out->data = data;
    out->size = bytes.size();
    return BDP_OK;
}

bdp::Text oriented(const bdp_parse& p, const std::uint8_t* text, std::size_t n) {
    bdp::Text t(std::span<const std::uint8_t>(text, n));
    return p.file.reversed ? t.reversed() : t;
}

}  // namespace

extern "C" {

const char* bdp_version(void) { return "1.0.0"; }

const char* bdp_status_string(bdp_status status) {
    switch (status) {
        case BDP_OK: return "ok";
        case BDP_ERR_ARGUMENT: return "invalid argument";
        case BDP_ERR_FORMAT: return "format error";
        case BDP_ERR_STRUCTURE: return "malformed parse";
        case BDP_ERR_CYCLE: return "cyclic reference";
        case BDP_ERR_MISMATCH: return "decoded text differs";
        case BDP_ERR_MEMORY: return "out of memory";
        case BDP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* bdp_last_error(void) { return last_error.c_str(); }

bdp_status bdp_algorithm_from_name(const char* name, bdp_algorithm* out) {
    if (name == nullptr || out == nullptr) return fail(BDP_ERR_ARGUMENT, "null argument");
    auto a = bdp::algorithm_from_name(name);
    if (!a) return fail(BDP_ERR_ARGUMENT, std::string("unknown algorithm '") + name + "'");
    *out = static_cast<bdp_algorithm>(*a);
    return BDP_OK;
}

const char* bdp_algorithm_name(bdp_algorithm algorithm) {
    if (algorithm < BDP_ALGO_LZ77 || algorithm > BDP_ALGO_LZRR) return nullptr;
    return bdp::name_of(static_cast<bdp::Algorithm>(algorithm)).data();
}

bdp_status bdp_parse_text(bdp_algorithm algorithm, const uint8_t* text, size_t n, int best_of_reverse,
                          bdp_parse** out) {
    if ((text == nullptr && n > 0) || out == nullptr) return fail(BDP_ERR_ARGUMENT, "null argument");
    if (algorithm < BDP_ALGO_LZ77 || algorithm > BDP_ALGO_LZRR) return fail(BDP_ERR_ARGUMENT, "unknown algorithm");
    return guarded([&] {
        const auto algo = static_cast<bdp::Algorithm>(algorithm);
        bdp::Text t(std::span<const std::uint8_t>(text, n));
        auto handle = std::make_unique<bdp_parse>();
        if (best_of_reverse) {
            bdp::DirectedParse d = bdp::best_of_reverse(algo, t);
            handle->file = {std::move(d.parse), d.reversed};
        } else {
            handle->file = {bdp::run(algo, t), false};
        }
        *out = handle.release();
        return BDP_OK;
    });
}

bdp_status bdp_parse_create(uint64_t n, int reversed, const bdp_phrase* phrases, size_t count, bdp_parse** out) {
    if ((phrases == nullptr && count > 0) || out == nullptr) return fail(BDP_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        auto handle = std::make_unique<bdp_parse>();
        handle->file.reversed = reversed != 0;
        handle->file.parse.n = n;
        handle->file.parse.phrases.reserve(count);
        for (size_t k = 0; k < count; ++k) {
            const bdp_phrase& p = phrases[k];
            if (p.is_literal) {
                handle->file.parse.phrases.push_back(bdp::Phrase::literal(p.literal));
            } else {
                if (p.ref == 0 || p.length == 0) return fail(BDP_ERR_ARGUMENT, "target phrase with zero field");
                handle->file.parse.phrases.push_back(bdp::Phrase::target(p.ref, p.length));
            }
        }
        *out = handle.release();
        return BDP_OK;
    });
}

void bdp_parse_free(bdp_parse* parse) { delete parse; }

uint64_t bdp_parse_phrase_count(const bdp_parse* parse) { return parse ? parse->file.parse.size() : 0; }

uint64_t bdp_parse_text_length(const bdp_parse* parse) { return parse ? parse->file.parse.n : 0; }

int bdp_parse_is_reversed(const bdp_parse* parse) { return parse && parse->file.reversed ? 1 : 0; }

bdp_status bdp_parse_get_phrase(const bdp_parse* parse, uint64_t index, bdp_phrase* out) {
    if (parse == nullptr || out == nullptr) return fail(BDP_ERR_ARGUMENT, "null argument");
    if (index >= parse->file.parse.size()) return fail(BDP_ERR_ARGUMENT, "phrase index out of range");
    const bdp::Phrase& f = parse->file.parse.phrases[index];
    out->is_literal = f.is_literal() ? 1 : 0;
    out->literal = f.ch();
    out->ref = f.ref();
    out->length = f.length();
    return BDP_OK;
}

bdp_status bdp_parse_serialize(const bdp_parse* parse, bdp_format format, bdp_buffer* out) {
    if (parse == nullptr || out == nullptr) return fail(BDP_ERR_ARGUMENT, "null argument");
    if (format != BDP_FORMAT_BINARY && format != BDP_FORMAT_JSON) return fail(BDP_ERR_ARGUMENT, "bad format");
    return guarded([&] {
        auto f = format == BDP_FORMAT_JSON ? bdp::Format::json : bdp::Format::binary;
        return to_buffer(bdp::serialize(parse->file, f), out);
    });
}

bdp_status bdp_parse_deserialize(const uint8_t* data, size_t size, bdp_format format, bdp_parse** out) {
    if ((data == nullptr && size > 0) || out == nullptr) return fail(BDP_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        std::span<const std::uint8_t> bytes(data, size);
        auto handle = std::make_unique<bdp_parse>();
        switch (format) {
            case BDP_FORMAT_BINARY: handle->file = bdp::deserialize(bytes, bdp::Format::binary); break;
            case BDP_FORMAT_JSON: handle->file = bdp::deserialize(bytes, bdp::Format::json); break;
            case BDP_FORMAT_AUTO: handle->file = bdp::deserialize(bytes); break;
            default: return fail(BDP_ERR_ARGUMENT, "bad format");
        }
        *out = handle.release();
        return BDP_OK;
    });
}

bdp_status bdp_parse_decode(const bdp_parse* parse, bdp_buffer* out) {
    if (parse == nullptr || out == nullptr) return fail(BDP_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        bdp::Text t = bdp::decode(parse->file.parse);
        if (parse->file.reversed) t = t.reversed();
        return to_buffer({t.bytes().begin(), t.bytes().end()}, out);
    });
}

bdp_status bdp_parse_verify(const bdp_parse* parse, const uint8_t* text, size_t n, uint64_t* witness) {
    if (parse == nullptr || (text == nullptr && n > 0)) return fail(BDP_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        bdp::Validation v = bdp::validate(parse->file.parse, oriented(*parse, text, n));
        if (v.ok()) return BDP_OK;
        if (witness != nullptr) *witness = v.witness;
        if (v.verdict == bdp::Verdict::content_mismatch) {
            return fail(BDP_ERR_MISMATCH, "phrase at position " + std::to_string(v.witness) +
                                              " does not match the text");
        }
        std::string what = bdp::to_string(v.verdict);
        if (v.verdict == bdp::Verdict::length_mismatch && v.witness == 0) {
            what += ": parse length " + std::to_string(parse->file.parse.n) + ", text length " + std::to_string(n);
        } else {
            what += " at position " + std::to_string(v.witness);
        }
        return fail(status_of(v.verdict), what);
    });
}

bdp_status bdp_generate(bdp_generator kind, uint64_t size, unsigned sigma, uint64_t seed, bdp_buffer* out) {
    if (out == nullptr) return fail(BDP_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        bdp::Text t;
        switch (kind) {
            case BDP_GEN_FIBONACCI: t = bdp::gen::fibonacci(static_cast<unsigned>(size)); break;
            case BDP_GEN_THUE_MORSE: t = bdp::gen::thue_morse(static_cast<unsigned>(size)); break;
            case BDP_GEN_RUN: t = bdp::gen::run(size); break;
            case BDP_GEN_RANDOM: t = bdp::gen::random(size, sigma, seed); break;
            default: return fail(BDP_ERR_ARGUMENT, "unknown generator");
        }
        return to_buffer({t.bytes().begin(), t.bytes().end()}, out);
    });
}

void bdp_buffer_free(bdp_buffer* buffer) {
    if (buffer == nullptr) return;
    std::free(buffer->data);
    buffer->data = nullptr;
    buffer->size = 0;
}

}  // extern "C"
