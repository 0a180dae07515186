// Values of cost functions: natural numbers extended with infinity, and the
// result of a capped evaluation.

#ifndef CLTL_VALUE_HPP
#define CLTL_VALUE_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace cltl {

class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t v) : value_(v) {}  // NOLINT: implicit by design
  static constexpr ExtNat infinity() {
    ExtNat e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Only meaningful when finite.
  constexpr std::uint64_t value() const { return value_; }

  constexpr bool operator==(const ExtNat& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }
  constexpr std::strong_ordering operator<=>(const ExtNat& o) const {
    if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
    return value_ <=> o.value_;
  }

  std::string to_string() const {
    return infinite_ ? "inf" : std::to_string(value_);
  }

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

/// Outcome of an evaluation that gives up above a cap.
struct CappedValue {
  enum class Kind { Exact, AboveCap, NoRun };

  Kind kind = Kind::Exact;
  std::uint64_t value = 0;  // Exact only

  static CappedValue exact(std::uint64_t v) { return {Kind::Exact, v}; }
  static CappedValue above_cap() { return {Kind::AboveCap, 0}; }
  static CappedValue no_run() { return {Kind::NoRun, 0}; }

  bool operator==(const CappedValue&) const = default;

  std::string to_string() const {
    switch (kind) {
      case Kind::Exact: return std::to_string(value);
      case Kind::AboveCap: return "above-cap";
      case Kind::NoRun: return "no-run";
    }
    return "?";
  }
};

}  // namespace cltl

#endif  // CLTL_VALUE_HPP
