// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.
//
// Usage: acceptance [repetitive-file ...]
// Extra files (or BDP_ACCEPTANCE_FILES, colon separated) join the large-input
// check; without them a generated 1 MiB repetitive file is used.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bdp/generate.hpp"
#include "bdp/parsers.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

using bdp::Parse;
using bdp::Phrase;
using bdp::Pos;
using bdp::Text;
using bdp::TextIndex;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double t = seconds_since(start);
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %-32s %9.3fs%s%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), t,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
}

std::string str(const std::vector<Pos>& v) {
    std::string out;
    for (Pos x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
    return out;
}

// Exhaustive binary strings n <= 12 plus 2,000 random strings (n <= 512,
// sigma in {2, 4, 26}).
const std::vector<std::string>& corpus() {
    static const std::vector<std::string> texts = [] {
        std::vector<std::string> out;
        for (Pos n = 1; n <= 12; ++n) {
            for (auto& s : oracle::all_binary(n)) out.push_back(std::move(s));
        }
        std::mt19937_64 rng(20240601);
        for (int k = 0; k < 2000; ++k) {
            const unsigned sigma = std::array{2u, 4u, 26u}[k % 3];
            out.push_back(oracle::random_string(rng, 1 + rng() % 512, sigma));
        }
        return out;
    }();
    return texts;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, std::string& out) {
    const std::string cmd = std::string("\"") + BDP_CLI_PATH + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return -1;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    const int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Copies of a random block, each with a few point mutations.
std::string mutated_copies(Pos target, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::string block = oracle::random_string(rng, 16384, 4);
    std::string out;
    while (out.size() < target) {
        std::string copy = block;
        for (int m = 0; m < 16; ++m) copy[rng() % copy.size()] = static_cast<char>('a' + rng() % 4);
        out += copy;
    }
    return out;
}

Outcome golden_arrays() {
    Outcome o;
    const auto start = Clock::now();
    TextIndex idx{Text("abababaabb")};
    const double build = seconds_since(start);
    o.check(idx.sa_array() == std::vector<Pos>{7, 5, 3, 1, 8, 10, 6, 4, 2, 9}, "SA " + str(idx.sa_array()));
    o.check(idx.isa_array() == std::vector<Pos>{4, 9, 3, 8, 2, 7, 1, 5, 10, 6}, "ISA " + str(idx.isa_array()));
    o.check(idx.lcp_array() == std::vector<Pos>{0, 1, 3, 5, 2, 0, 1, 2, 4, 1}, "LCP " + str(idx.lcp_array()));
    o.check(idx.lpf_array() == std::vector<Pos>{0, 0, 5, 4, 3, 2, 1, 2, 1, 1}, "LPF " + str(idx.lpf_array()));
    std::vector<Pos> order;
    auto nb = idx.neighborhood(1);
    while (auto e = nb.next()) order.push_back(e->pos);
    o.check(order == std::vector<Pos>{1, 3, 5, 8, 7, 10, 6, 4, 2, 9}, "SA_1 " + str(order));
    o.check(build < 1e-3, "index build took " + std::to_string(build) + "s");
    return o;
}

Outcome golden_validity() {
    Outcome o;
    const auto start = Clock::now();
    const Text t("ababbab");
    const Parse b{{Phrase::target(3, 2), Phrase::literal('a'), Phrase::literal('b'), Phrase::target(2, 3)}, 7};
    const Parse b_prime{{Phrase::target(3, 2), Phrase::target(1, 2), Phrase::literal('b'), Phrase::literal('a'),
                         Phrase::literal('b')},
                        7};
    const Parse pbp{{Phrase::target(3, 2), Phrase::target(6, 2)}, 7};
    o.check(bdp::validate(b, t).ok(), "B rejected");
    o.check(bdp::decode(b) == t, "B decodes wrongly");
    o.check(bdp::validate(b_prime, t).verdict == bdp::Verdict::cyclic, "B' not reported cyclic");
    o.check(bdp::source_of(pbp, 1) == 6, "source_of(P, 1) != 6");
    const double t_all = seconds_since(start);
    o.check(t_all < 1e-3, "took " + std::to_string(t_all) + "s");
    return o;
}

Outcome golden_lf_lp() {
    Outcome o;
    const auto start = Clock::now();
    const std::string s = "abababaababa";
    TextIndex idx{Text(s)};
    bdp::LzrrSession fixed(idx);
    fixed.commit(Phrase::target(3, 5));
    std::vector<Pos> lf;
    for (Pos j = 1; j <= s.size(); ++j) lf.push_back(fixed.lf(j));
    o.check(lf == std::vector<Pos>{0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 2, 0}, "LF " + str(lf));
    bdp::LzrrSession greedy(idx);
    const Phrase first = greedy.lp();
    o.check(!first.is_literal() && first.length() == 5, "first phrase length " + std::to_string(first.length()));
    greedy.commit(first);
    const Phrase second = greedy.lp();
    o.check(second.length() == 2 && (second.ref() == 9 || second.ref() == 11),
            "second phrase <" + std::to_string(second.ref()) + "," + std::to_string(second.length()) + ">");
    const double t_all = seconds_since(start);
    o.check(t_all < 1e-3, "took " + std::to_string(t_all) + "s");
    return o;
}

Outcome lzrr_vs_reverse_lz77() {
    Outcome o;
    const auto start = Clock::now();
    std::size_t violations = 0;
    std::string first;
    for (const auto& s : corpus()) {
        const Text t(s);
        const std::size_t rr = bdp::lzrr(t).size();
        const std::size_t lz_rev = bdp::lz77(TextIndex(t.reversed())).size();
        if (rr > lz_rev) {
            if (violations++ == 0) first = s;
        }
    }
    o.check(violations == 0, std::to_string(violations) + " violations, first " + first);
    o.check(seconds_since(start) < 60, "over 60 s");
    return o;
}

Outcome count_identities() {
    Outcome o;
    std::size_t violations = 0;
    std::string first;
    for (const auto& s : corpus()) {
        const Text t(s);
        const Text rev = t.reversed();
        const std::size_t lz = bdp::lz77(TextIndex(t)).size();
        const std::size_t lzp = bdp::lz_prime(t).size();
        const std::size_t lzor = bdp::lzor(t).size();
        const std::size_t lzp_rev = bdp::lz_prime(rev).size();
        const std::size_t rr = bdp::lzrr(t).size();
        if (lzp != lz || lzor != lzp_rev || rr > lzor) {
            if (violations++ == 0) first = s;
        }
    }
    o.check(violations == 0, std::to_string(violations) + " violations, first " + first);
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    const auto start = Clock::now();
    std::size_t mismatches = 0;
    std::string first;
    auto note = [&](const std::string& what) {
        if (mismatches++ == 0) first = what;
    };
    for (Pos n = 1; n <= 12; ++n) {
        for (const auto& s : oracle::all_binary(n)) {
            const Text t(s);
            TextIndex idx(t);
            const auto sa = oracle::naive_sa(s);
            if (idx.sa_array() != sa) note("SA " + s);
            if (idx.lcp_array() != oracle::naive_lcp_array(s, sa)) note("LCP " + s);
            if (idx.lpf_array() != oracle::naive_lpf(s)) note("LPF " + s);
            if (bdp::lnf(t) != oracle::naive_lnf(s)) note("LNF " + s);
            if (bdp::lpf_prime(t) != oracle::naive_lpf_prime(s)) note("LPF' " + s);
            bdp::LzrrSession session(idx);
            while (!session.done()) {
                const Pos expected = oracle::brute_force_lp_length(s, session.parse());
                const Phrase f = session.lp();
                if ((f.is_literal() ? 0 : f.length()) != expected) {
                    note("LZRR " + s + " at " + std::to_string(session.next_start()));
                    break;
                }
                session.commit(f);
            }
        }
    }
    o.check(mismatches == 0, std::to_string(mismatches) + " mismatches, first " + first);
    o.check(seconds_since(start) < 120, "over 120 s");
    return o;
}

Outcome overlay_non_interference() {
    Outcome o;
    std::mt19937_64 rng(4242);
    std::size_t instances = 0;
    std::size_t mutations = 0;
    while (instances < 1000) {
        const std::string s = oracle::random_string(rng, 2 + rng() % 200, std::array{2u, 4u, 26u}[instances % 3]);
        TextIndex idx{Text(s)};
        bdp::LzrrSession session(idx);
        const Pos steps = rng() % 6;
        for (Pos k = 0; k < steps && !session.done(); ++k) session.commit(session.lp());
        if (session.done()) continue;
        const std::vector<Pos> before = session.forest().sources();
        session.lf(1 + rng() % s.size());
        if (session.forest().sources() != before) ++mutations;
        ++instances;
    }
    o.check(mutations == 0, std::to_string(mutations) + " of " + std::to_string(instances) + " mutated");
    return o;
}

Outcome round_trip() {
    Outcome o;
    std::size_t failures_seen = 0;
    std::string first;
    for (const auto& s : corpus()) {
        const Text t(s);
        for (bdp::Algorithm a : {bdp::Algorithm::lz77, bdp::Algorithm::lz_prime, bdp::Algorithm::lzor,
                                 bdp::Algorithm::lex, bdp::Algorithm::lzrr}) {
            const Parse p = bdp::run(a, t);
            if (!bdp::validate(p, t).ok() || bdp::decode(p) != t) {
                if (failures_seen++ == 0) first = std::string(bdp::name_of(a)) + " on " + s;
            }
        }
    }
    o.check(failures_seen == 0, std::to_string(failures_seen) + " failures, first " + first);
    return o;
}

Outcome desk_scale_trend(const std::vector<fs::path>& user_files) {
    Outcome o;
    std::vector<std::pair<std::string, Text>> inputs;
    for (unsigned k = 1; k <= 25; ++k) inputs.emplace_back("fib" + std::to_string(k), bdp::gen::fibonacci(k));
    for (unsigned k = 0; k <= 16; ++k) inputs.emplace_back("tm" + std::to_string(k), bdp::gen::thue_morse(k));
    for (const auto& p : user_files) inputs.emplace_back(p.filename().string(), Text(read_file(p)));
    const fs::path dir = fs::temp_directory_path() / ("bdp_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::vector<fs::path> large = user_files;
    if (large.empty()) {
        const fs::path gen = dir / "mutated_copies.txt";
        std::ofstream(gen, std::ios::binary) << mutated_copies(Pos{1} << 20, 7);
        inputs.emplace_back(gen.filename().string(), Text(read_file(gen)));
        large.push_back(gen);
    }

    for (const auto& [name, t] : inputs) {
        const auto start = Clock::now();
        const std::size_t rr = bdp::best_of_reverse(bdp::Algorithm::lzrr, t).parse.size();
        const double secs = seconds_since(start);
        const std::size_t lz = bdp::best_of_reverse(bdp::Algorithm::lz77, t).parse.size();
        o.check(rr <= lz, name + ": |LZRR| " + std::to_string(rr) + " > |LZ77| " + std::to_string(lz));
        if (t.size() >= (Pos{1} << 20)) {
            o.check(secs < 60, name + ": LZRR took " + std::to_string(secs) + "s");
            std::printf("       %s n=%zu |LZ77|=%zu |LZRR|=%zu lzrr=%.2fs\n", name.c_str(), t.size(), lz, rr, secs);
        }
    }

    // The stats command must produce a well formed CSV report for the large files.
    std::string args = "stats";
    for (const auto& p : large) args += " \"" + p.string() + "\"";
    const fs::path report = dir / "report.csv";
    std::string out;
    const int rc = run_cli(args + " -a lz77,lzrr -o \"" + report.string() + "\"", out);
    o.check(rc == 0, "stats exited " + std::to_string(rc) + ": " + out);
    std::istringstream csv(read_file(report));
    std::string line;
    std::getline(csv, line);
    o.check(line == "file,n,algo,direction,phrases,seconds", "bad CSV header '" + line + "'");
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        const bool shaped = cells.size() == 6 && (cells[2] == "lz77" || cells[2] == "lzrr") &&
                            (cells[3] == "forward" || cells[3] == "reverse") &&
                            cells[4].find_first_not_of("0123456789") == std::string::npos &&
                            std::strtod(cells[5].c_str(), nullptr) >= 0;
        o.check(shaped, "malformed CSV row '" + line + "'");
    }
    o.check(rows == 2 * large.size(), "expected " + std::to_string(2 * large.size()) + " rows");
    fs::remove_all(dir);
    return o;
}

Outcome validator_is_linear() {
    Outcome o;
    const Pos n = 1'000'000;
    const Text t(std::string(n, 'a'));
    Parse literals;
    literals.n = n;
    literals.phrases.assign(n, Phrase::literal('a'));
    Parse chain{{Phrase::literal('a'), Phrase::target(1, n - 1)}, n};
    for (const auto& [name, p] : {std::pair{"all-literal", &literals}, std::pair{"chain", &chain}}) {
        const auto start = Clock::now();
        const bool ok = bdp::validate(*p, t).ok();
        const double secs = seconds_since(start);
        o.check(ok, std::string(name) + " rejected");
        o.check(secs < 1.0, std::string(name) + " took " + std::to_string(secs) + "s");
        std::printf("       %s n=%zu validate=%.3fs\n", name, n, secs);
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<fs::path> user_files(argv + 1, argv + argc);
    if (const char* env = std::getenv("BDP_ACCEPTANCE_FILES")) {
        std::stringstream ss(env);
        for (std::string p; std::getline(ss, p, ':');) {
            if (!p.empty()) user_files.emplace_back(p);
        }
    }

    criterion(1, "golden index arrays", golden_arrays);
    criterion(2, "golden parse validity", golden_validity);
    criterion(3, "golden LF and LP", golden_lf_lp);
    criterion(4, "|LZRR(T)| <= |LZ77(T^R)|", lzrr_vs_reverse_lz77);
    criterion(5, "phrase count identities", count_identities);
    criterion(6, "brute-force oracle equivalence", oracle_equivalence);
    criterion(7, "overlay non-interference", overlay_non_interference);
    criterion(8, "round trip of every parser", round_trip);
    criterion(9, "desk-scale trend and stats CSV", [&] { return desk_scale_trend(user_files); });
    criterion(10, "linear-time validation", validator_is_linear);

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
