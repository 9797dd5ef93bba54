/*
 * C interface to the bidirectional parsing library.
 *
 * All positions are 1-based. Functions returning bdp_status leave outputs
 * untouched on failure; bdp_last_error() then describes the failure on the
 * calling thread.
 */
#ifndef BDP_BDP_H
#define BDP_BDP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(BDP_BUILDING_LIBRARY)
#define BDP_API __declspec(dllexport)
#else
#define BDP_API __declspec(dllimport)
#endif
#else
#define BDP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bdp_status {
    BDP_OK = 0,
    BDP_ERR_ARGUMENT = 1,  /* null pointer, unknown name, index out of range */
    BDP_ERR_FORMAT = 2,    /* unreadable parse file */
    BDP_ERR_STRUCTURE = 3, /* lengths, ranges, self copies or phrase contents are wrong */
    BDP_ERR_CYCLE = 4,     /* some reference chain never reaches a literal */
    BDP_ERR_MISMATCH = 5,  /* parse decodes, but not to the expected text */
    BDP_ERR_MEMORY = 6,
    BDP_ERR_INTERNAL = 7
} bdp_status;

typedef enum bdp_algorithm {
    BDP_ALGO_LZ77 = 0,
    BDP_ALGO_LZP = 1,
    BDP_ALGO_LZOR = 2,
    BDP_ALGO_LEX = 3,
    BDP_ALGO_LZRR = 4
} bdp_algorithm;

typedef enum bdp_format {
    BDP_FORMAT_BINARY = 0,
    BDP_FORMAT_JSON = 1,
    BDP_FORMAT_AUTO = 2 /* deserialization only */
} bdp_format;

typedef enum bdp_generator {
    BDP_GEN_FIBONACCI = 0,  /* size = order */
    BDP_GEN_THUE_MORSE = 1, /* size = order, length 2^order */
    BDP_GEN_RUN = 2,        /* size = length */
    BDP_GEN_RANDOM = 3      /* size = length, over sigma letters, seeded */
} bdp_generator;

/* Owning handle to a parse and its direction flag. */
typedef struct bdp_parse bdp_parse;

typedef struct bdp_buffer {
    uint8_t* data;
    size_t size;
} bdp_buffer;

typedef struct bdp_phrase {
    int is_literal;
    uint8_t literal; /* valid when is_literal */
    uint64_t ref;    /* valid when !is_literal */
    uint64_t length;
} bdp_phrase;

BDP_API const char* bdp_version(void);
BDP_API const char* bdp_status_string(bdp_status status);
BDP_API const char* bdp_last_error(void);

BDP_API bdp_status bdp_algorithm_from_name(const char* name, bdp_algorithm* out);
BDP_API const char* bdp_algorithm_name(bdp_algorithm algorithm);

/* Parses text[0..n). With best_of_reverse, also parses the reversal and keeps
 * the parse with fewer phrases (ties keep the forward one). */
BDP_API bdp_status bdp_parse_text(bdp_algorithm algorithm, const uint8_t* text, size_t n, int best_of_reverse,
                                  bdp_parse** out);

/* Builds a parse from explicit phrases; no validation is performed. */
BDP_API bdp_status bdp_parse_create(uint64_t n, int reversed, const bdp_phrase* phrases, size_t count,
                                    bdp_parse** out);

BDP_API void bdp_parse_free(bdp_parse* parse);

BDP_API uint64_t bdp_parse_phrase_count(const bdp_parse* parse);
BDP_API uint64_t bdp_parse_text_length(const bdp_parse* parse);
BDP_API int bdp_parse_is_reversed(const bdp_parse* parse);
BDP_API bdp_status bdp_parse_get_phrase(const bdp_parse* parse, uint64_t index, bdp_phrase* out);

BDP_API bdp_status bdp_parse_serialize(const bdp_parse* parse, bdp_format format, bdp_buffer* out);
BDP_API bdp_status bdp_parse_deserialize(const uint8_t* data, size_t size, bdp_format format, bdp_parse** out);

/* Recovers the original text, undoing the reversal if the parse is flagged. */
BDP_API bdp_status bdp_parse_decode(const bdp_parse* parse, bdp_buffer* out);

/* BDP_OK iff the parse is well formed, acyclic, and decodes to text. On
 * BDP_ERR_STRUCTURE or BDP_ERR_CYCLE, *witness (if non-null) receives the
 * offending position. */
BDP_API bdp_status bdp_parse_verify(const bdp_parse* parse, const uint8_t* text, size_t n, uint64_t* witness);

BDP_API bdp_status bdp_generate(bdp_generator kind, uint64_t size, unsigned sigma, uint64_t seed, bdp_buffer* out);

BDP_API void bdp_buffer_free(bdp_buffer* buffer);

#ifdef __cplusplus
}
#endif

#endif /* BDP_BDP_H */
