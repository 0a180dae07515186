// Atomic propositions and letters of the alphabet 2^AP.
//
// Proposition names are interned process-wide so that formulas, cubes and
// words can refer to them by a small integer.  Interning is thread-safe;
// ids are handed out in first-seen order.

#ifndef CLTL_PROPOSITION_HPP
#define CLTL_PROPOSITION_HPP

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace cltl {

using PropId = std::uint32_t;

PropId intern_prop(std::string_view name);
const std::string& prop_name(PropId id);

/// True when `name` is a legal proposition identifier and not a keyword.
bool is_valid_prop_name(std::string_view name);

/// A letter of 2^AP, stored as the sorted set of propositions that hold.
/// Propositions not listed are false.
class Letter {
 public:
  Letter() = default;
  explicit Letter(std::vector<PropId> props);
  Letter(std::initializer_list<std::string_view> names);

  bool holds(PropId p) const;
  const std::vector<PropId>& props() const { return props_; }

  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;

 private:
  std::vector<PropId> props_;
};

}  // namespace cltl

#endif  // CLTL_PROPOSITION_HPP
