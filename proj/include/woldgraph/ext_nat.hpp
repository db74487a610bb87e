#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace wold {

// Element of N u {0, INF}. Finite values fit in uint64; INF compares above all of them.
class ExtNat {
 public:
  constexpr ExtNat() noexcept = default;
  constexpr ExtNat(std::uint64_t v) noexcept : value_(v) {}  // NOLINT: implicit from integers is intended

  static constexpr ExtNat inf() noexcept {
    ExtNat r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_inf() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }
  constexpr bool is_zero() const noexcept { return !infinite_ && value_ == 0; }

  constexpr std::uint64_t value() const {
    if (infinite_) throw std::logic_error("ExtNat: INF has no finite value");
    return value_;
  }

  constexpr bool operator==(const ExtNat& o) const noexcept {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }
  constexpr std::strong_ordering operator<=>(const ExtNat& o) const noexcept {
    if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
    return value_ <=> o.value_;
  }

  std::string str() const { return infinite_ ? "INF" : std::to_string(value_); }

  // Accepts "INF", "inf", "oo" or a decimal literal that fits in uint64.
  static ExtNat parse(const std::string& text) {
    if (text == "INF" || text == "inf" || text == "Inf" || text == "oo") return inf();
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("not an extended natural: '" + text + "'");
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t v = 0;
    for (char c : text) {
      auto d = static_cast<std::uint64_t>(c - '0');
      if (v > (max - d) / 10) throw std::out_of_range("extended natural exceeds word size: " + text);
      v = v * 10 + d;
    }
    return ExtNat(v);
  }

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

inline constexpr ExtNat INF = ExtNat::inf();

// |a - b| with INF - INF = 0 and INF - n = INF.
constexpr ExtNat extnat_absdiff(ExtNat a, ExtNat b) noexcept {
  if (a.is_inf() && b.is_inf()) return ExtNat(0);
  if (a.is_inf() || b.is_inf()) return INF;
  return a > b ? ExtNat(a.value() - b.value()) : ExtNat(b.value() - a.value());
}

inline std::ostream& operator<<(std::ostream& os, const ExtNat& n) { return os << n.str(); }

}  // namespace wold
