#include "bdp/generate.hpp"

#include <bit>
#include <random>
#include <stdexcept>
#include <string>

namespace bdp::gen {

Text fibonacci(unsigned order) {
    if (order == 0) throw std::invalid_argument("fibonacci order starts at 1");
    if (order > 60) throw std::invalid_argument("fibonacci order " + std::to_string(order) + " too large");
    std::string prev = "b";
    std::string cur = "a";
    if (order == 1) return Text(prev);
    for (unsigned k = 3; k <= order; ++k) {
        std::string next = cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return Text(cur);
}

Text thue_morse(unsigned order) {
    if (order > 40) throw std::invalid_argument("thue-morse order " + std::to_string(order) + " too large");
    const std::uint64_t n = std::uint64_t{1} << order;
    std::vector<std::uint8_t> out(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = (std::popcount(i) & 1) ? 'b' : 'a';
    return Text(std::move(out));
}

Text run(Pos length, std::uint8_t ch) { return Text(std::vector<std::uint8_t>(length, ch)); }

Text random(Pos length, unsigned sigma, std::uint64_t seed) {
    if (sigma < 1 || sigma > 26) throw std::invalid_argument("alphabet size must be in 1..26");
    // mt19937_64 output is fixed by the standard; the reduction below keeps
    // the text identical across standard libraries.
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out(length);
    for (auto& c : out) c = static_cast<std::uint8_t>('a' + rng() % sigma);
    return Text(std::move(out));
}

}  // namespace bdp::gen
