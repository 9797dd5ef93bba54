#pragma once

#include <cstdint>

#include "bdp/text.hpp"

namespace bdp::gen {

/// F_1 = "b", F_2 = "a", F_k = F_{k-1} F_{k-2}; |F_k| is the k-th Fibonacci number.
Text fibonacci(unsigned order);

/// Prefix of length 2^order of the Thue-Morse word over {a, b}.
Text thue_morse(unsigned order);

/// `length` copies of `ch`.
Text run(Pos length, std::uint8_t ch = 'a');

/// Seeded uniform text over the first `sigma` lowercase letters.
Text random(Pos length, unsigned sigma, std::uint64_t seed);

}  // namespace bdp::gen
