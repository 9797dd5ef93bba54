// Batch front end: parse, decode, verify, stats, gen.
//
// Exit codes: 0 success, 1 usage, 2 I/O, 3 verification or format failure.

#include <sys/resource.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bdp/bdp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;

struct ExitError : std::runtime_error {
    ExitError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

using ParsePtr = std::unique_ptr<bdp_parse, decltype(&bdp_parse_free)>;

ParsePtr own(bdp_parse* p) { return {p, &bdp_parse_free}; }

struct Buffer {
    bdp_buffer raw{nullptr, 0};
    ~Buffer() { bdp_buffer_free(&raw); }
    const std::uint8_t* data() const { return raw.data; }
    std::size_t size() const { return raw.size; }
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ExitError(kExitIo, "cannot open '" + path + "' for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw ExitError(kExitIo, "error reading '" + path + "'");
    return bytes;
}

void write_file(const std::string& path, const std::uint8_t* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ExitError(kExitIo, "cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw ExitError(kExitIo, "error writing '" + path + "'");
}

void write_file(const std::string& path, const std::string& s) {
    write_file(path, reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

[[noreturn]] void raise(bdp_status status, const std::string& context) {
    const int code = status == BDP_ERR_ARGUMENT ? kExitUsage : kExitVerify;
    std::string detail = bdp_last_error();
    if (detail.empty()) detail = bdp_status_string(status);
    throw ExitError(code, context + ": " + detail);
}

bdp_algorithm algorithm_named(const std::string& name) {
    bdp_algorithm a{};
    if (bdp_algorithm_from_name(name.c_str(), &a) != BDP_OK) {
        throw ExitError(kExitUsage, "unknown algorithm '" + name + "' (expected lz77, lzp, lzor, lex or lzrr)");
    }
    return a;
}

ParsePtr load_parse(const std::string& path) {
    std::vector<std::uint8_t> bytes = read_file(path);
    bdp_parse* p = nullptr;
    if (bdp_status s = bdp_parse_deserialize(bytes.data(), bytes.size(), BDP_FORMAT_AUTO, &p); s != BDP_OK) {
        raise(s, "cannot read parse '" + path + "'");
    }
    return own(p);
}

const char* direction(const bdp_parse* p) { return bdp_parse_is_reversed(p) ? "reverse" : "forward"; }

// Process-wide high-water mark; absent where the platform does not report it.
std::optional<std::uint64_t> peak_rss_bytes() {
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) != 0 || usage.ru_maxrss <= 0) return std::nullopt;
    return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
}

// --- parse -------------------------------------------------------------------

struct ParseOptions {
    std::string input;
    std::string output;
    std::string algo = "lzrr";
    std::string format = "bin";
    bool best_of_reverse = false;
};

int cmd_parse(const ParseOptions& o) {
    const bdp_algorithm algo = algorithm_named(o.algo);
    std::vector<std::uint8_t> text = read_file(o.input);
    bdp_parse* raw = nullptr;
    if (bdp_status s = bdp_parse_text(algo, text.data(), text.size(), o.best_of_reverse ? 1 : 0, &raw); s != BDP_OK) {
        raise(s, "parsing failed");
    }
    ParsePtr parse = own(raw);
    Buffer out;
    const bdp_format format = o.format == "json" ? BDP_FORMAT_JSON : BDP_FORMAT_BINARY;
    if (bdp_status s = bdp_parse_serialize(parse.get(), format, &out.raw); s != BDP_OK) raise(s, "serialization failed");
    write_file(o.output, out.data(), out.size());
    std::cout << "algo=" << o.algo << " n=" << text.size() << " phrases=" << bdp_parse_phrase_count(parse.get())
              << " direction=" << direction(parse.get()) << "\n";
    return kExitOk;
}

// --- decode / verify -----------------------------------------------------------

int cmd_decode(const std::string& input, const std::string& output) {
    ParsePtr parse = load_parse(input);
    Buffer text;
    if (bdp_status s = bdp_parse_decode(parse.get(), &text.raw); s != BDP_OK) raise(s, "decoding failed");
    if (output.empty() || output == "-") {
        std::cout.write(reinterpret_cast<const char*>(text.data()), static_cast<std::streamsize>(text.size()));
        std::cout.flush();
    } else {
        write_file(output, text.data(), text.size());
    }
    return kExitOk;
}

int cmd_verify(const std::string& parse_path, const std::string& text_path) {
    ParsePtr parse = load_parse(parse_path);
    std::vector<std::uint8_t> text = read_file(text_path);
    std::uint64_t witness = 0;
    if (bdp_status s = bdp_parse_verify(parse.get(), text.data(), text.size(), &witness); s != BDP_OK) {
        raise(s, "verification failed");
    }
    std::cout << "ok phrases=" << bdp_parse_phrase_count(parse.get()) << " n=" << text.size() << "\n";
    return kExitOk;
}

// --- stats ---------------------------------------------------------------------

struct Row {
    std::string file;
    std::uint64_t n = 0;
    std::string algo;
    std::string direction;
    std::uint64_t phrases = 0;
    double seconds = 0;
    std::optional<std::uint64_t> peak_bytes;
};

struct StatsOptions {
    std::vector<std::string> inputs;
    std::vector<std::string> algos{"lz77", "lex", "lzrr"};
    std::string output;
    std::string format = "csv";
    bool forward_only = false;
    unsigned threads = 1;
};

std::vector<Row> stats_for_file(const std::string& path, const std::vector<bdp_algorithm>& algos,
                                const StatsOptions& o) {
    std::vector<std::uint8_t> text = read_file(path);
    std::vector<Row> rows;
    for (bdp_algorithm a : algos) {
        const auto start = std::chrono::steady_clock::now();
        bdp_parse* raw = nullptr;
        if (bdp_status s = bdp_parse_text(a, text.data(), text.size(), o.forward_only ? 0 : 1, &raw); s != BDP_OK) {
            raise(s, "parsing '" + path + "' failed");
        }
        ParsePtr parse = own(raw);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        Row r;
        r.file = std::filesystem::path(path).filename().string();
        r.n = text.size();
        r.algo = bdp_algorithm_name(a);
        r.direction = direction(parse.get());
        r.phrases = bdp_parse_phrase_count(parse.get());
        r.seconds = elapsed.count();
        if (o.threads == 1) r.peak_bytes = peak_rss_bytes();
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string format_seconds(double s) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(6) << s;
    return out.str();
}

// |LZRR| / |LZ77| per file, for files where both were computed.
std::vector<std::pair<std::string, double>> ratios(const std::vector<std::vector<Row>>& per_file) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& rows : per_file) {
        const Row* lz = nullptr;
        const Row* rr = nullptr;
        for (const Row& r : rows) {
            if (r.algo == "lz77") lz = &r;
            if (r.algo == "lzrr") rr = &r;
        }
        if (lz != nullptr && rr != nullptr && lz->phrases > 0) {
            out.emplace_back(lz->file, static_cast<double>(rr->phrases) / static_cast<double>(lz->phrases));
        } else if (lz != nullptr && rr != nullptr) {
            out.emplace_back(lz->file, 1.0);
        }
    }
    return out;
}

int cmd_stats(const StatsOptions& o) {
    std::vector<bdp_algorithm> algos;
    for (const std::string& name : o.algos) algos.push_back(algorithm_named(name));
    if (o.format != "csv" && o.format != "json") throw ExitError(kExitUsage, "format must be csv or json");

    std::vector<std::vector<Row>> per_file(o.inputs.size());
    std::vector<std::string> errors(o.inputs.size());
    std::vector<int> codes(o.inputs.size(), kExitOk);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < o.inputs.size(); k = next++) {
            try {
                per_file[k] = stats_for_file(o.inputs[k], algos, o);
            } catch (const ExitError& e) {
                errors[k] = e.what();
                codes[k] = e.code;
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(o.threads, static_cast<unsigned>(o.inputs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (std::size_t k = 0; k < o.inputs.size(); ++k) {
        if (codes[k] != kExitOk) throw ExitError(codes[k], errors[k]);
    }

    const auto ratio = ratios(per_file);
    std::ostringstream report;
    if (o.format == "csv") {
        report << "file,n,algo,direction,phrases,seconds\n";
        for (const auto& rows : per_file) {
            for (const Row& r : rows) {
                report << r.file << ',' << r.n << ',' << r.algo << ',' << r.direction << ',' << r.phrases << ','
                       << format_seconds(r.seconds) << '\n';
            }
        }
    } else {
        nlohmann::json doc;
        doc["timing"] = "wall";
        doc["best_of_reverse"] = !o.forward_only;
        doc["rows"] = nlohmann::json::array();
        for (const auto& rows : per_file) {
            for (const Row& r : rows) {
                nlohmann::json row = {{"file", r.file},       {"n", r.n},
                                      {"algo", r.algo},       {"direction", r.direction},
                                      {"phrases", r.phrases}, {"seconds", r.seconds}};
                row["peak_memory_bytes"] = r.peak_bytes ? nlohmann::json(*r.peak_bytes) : nlohmann::json(nullptr);
                doc["rows"].push_back(std::move(row));
            }
        }
        doc["ratio_lzrr_lz77"] = nlohmann::json::array();
        for (const auto& [file, value] : ratio) doc["ratio_lzrr_lz77"].push_back({{"file", file}, {"ratio", value}});
        report << doc.dump(2) << '\n';
    }

    if (o.output.empty() || o.output == "-") {
        std::cout << report.str();
    } else {
        write_file(o.output, report.str());
        for (const auto& rows : per_file) {
            for (const Row& r : rows) {
                std::cout << r.file << " " << r.algo << " " << r.direction << " phrases=" << r.phrases
                          << " seconds=" << format_seconds(r.seconds) << "\n";
            }
        }
        for (const auto& [file, value] : ratio) {
            std::cout << file << " |LZRR|/|LZ77|=" << std::fixed << std::setprecision(3) << value << "\n";
        }
    }
    return kExitOk;
}

// --- gen -----------------------------------------------------------------------

struct GenOptions {
    std::string kind;
    std::string output;
    std::uint64_t order = 0;
    std::uint64_t length = 0;
    unsigned sigma = 2;
    std::uint64_t seed = 1;
};

int cmd_gen(const GenOptions& o) {
    bdp_generator kind{};
    std::uint64_t size = 0;
    if (o.kind == "fibonacci") {
        kind = BDP_GEN_FIBONACCI;
        size = o.order;
    } else if (o.kind == "thue-morse") {
        kind = BDP_GEN_THUE_MORSE;
        size = o.order;
    } else if (o.kind == "run") {
        kind = BDP_GEN_RUN;
        size = o.length;
    } else if (o.kind == "random") {
        kind = BDP_GEN_RANDOM;
        size = o.length;
    } else {
        throw ExitError(kExitUsage, "unknown generator '" + o.kind + "'");
    }
    Buffer text;
    if (bdp_status s = bdp_generate(kind, size, o.sigma, o.seed, &text.raw); s != BDP_OK) raise(s, "generation failed");
    write_file(o.output, text.data(), text.size());
    std::cout << "kind=" << o.kind << " n=" << text.size() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bidirectional parsing toolkit: LZ77, LZ', LZOR, lex-parse and LZRR"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bdp_version()));

    ParseOptions parse_opts;
    auto* parse = app.add_subcommand("parse", "Parse a file and write the phrases");
    parse->add_option("input", parse_opts.input, "Text file")->required();
    parse->add_option("-a,--algo", parse_opts.algo, "lz77, lzp, lzor, lex or lzrr")->capture_default_str();
    parse->add_option("-o,--output", parse_opts.output, "Parse file to write")->required();
    parse->add_flag("-r,--best-of-reverse", parse_opts.best_of_reverse,
                    "Also parse the reversed text and keep the shorter parse");
    parse->add_option("-f,--format", parse_opts.format, "bin or json")
        ->check(CLI::IsMember({"bin", "json"}))
        ->capture_default_str();

    std::string decode_in;
    std::string decode_out;
    auto* decode = app.add_subcommand("decode", "Rebuild the text from a parse file");
    decode->add_option("parse", decode_in, "Parse file")->required();
    decode->add_option("-o,--output", decode_out, "Output file (default: stdout)");

    std::string verify_parse;
    std::string verify_text;
    auto* verify = app.add_subcommand("verify", "Check that a parse is valid and decodes to a text");
    verify->add_option("parse", verify_parse, "Parse file")->required();
    verify->add_option("text", verify_text, "Text file")->required();

    StatsOptions stats_opts;
    auto* stats = app.add_subcommand("stats", "Phrase counts and timings for several files");
    stats->add_option("inputs", stats_opts.inputs, "Text files")->required();
    stats->add_option("-a,--algos", stats_opts.algos, "Algorithms")->delimiter(',')->capture_default_str();
    stats->add_option("-o,--output", stats_opts.output, "Report file (default: stdout)");
    stats->add_option("-f,--format", stats_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    stats->add_flag("--forward-only", stats_opts.forward_only, "Skip the reversed text");
    stats->add_option("-j,--threads", stats_opts.threads, "Files processed concurrently")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    GenOptions gen_opts;
    auto* gen = app.add_subcommand("gen", "Write a generated test string");
    gen->add_option("kind", gen_opts.kind, "fibonacci, thue-morse, run or random")
        ->required()
        ->check(CLI::IsMember({"fibonacci", "thue-morse", "run", "random"}));
    gen->add_option("-o,--output", gen_opts.output, "Output file")->required();
    gen->add_option("--order", gen_opts.order, "Order for fibonacci / thue-morse");
    gen->add_option("-n,--length", gen_opts.length, "Length for run / random");
    gen->add_option("--sigma", gen_opts.sigma, "Alphabet size for random (1..26)")->capture_default_str();
    gen->add_option("--seed", gen_opts.seed, "Seed for random")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*parse) return cmd_parse(parse_opts);
        if (*decode) return cmd_decode(decode_in, decode_out);
        if (*verify) return cmd_verify(verify_parse, verify_text);
        if (*stats) return cmd_stats(stats_opts);
        if (*gen) return cmd_gen(gen_opts);
    } catch (const ExitError& e) {
        std::cerr << "bdp: " << e.what() << "\n";
        return e.code;
    }
    return kExitUsage;
}
