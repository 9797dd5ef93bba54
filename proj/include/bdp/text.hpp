#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bdp {

/// A text position or length. Positions are 1-based in every public interface.
using Pos = std::size_t;

/// Immutable byte string. `at(i)` addresses the i-th byte, 1 <= i <= size().
class Text {
public:
    Text() = default;
    explicit Text(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}
    explicit Text(std::string_view s) : bytes_(s.begin(), s.end()) {}
    explicit Text(std::span<const std::uint8_t> s) : bytes_(s.begin(), s.end()) {}

    Pos size() const { return bytes_.size(); }
    bool empty() const { return bytes_.empty(); }

    std::uint8_t at(Pos i) const { return bytes_[i - 1]; }

    std::span<const std::uint8_t> bytes() const { return bytes_; }
    std::string str() const { return {bytes_.begin(), bytes_.end()}; }

    Text reversed() const { return Text(std::vector<std::uint8_t>(bytes_.rbegin(), bytes_.rend())); }

    friend bool operator==(const Text&, const Text&) = default;

private:
    std::vector<std::uint8_t> bytes_;
};

}  // namespace bdp
