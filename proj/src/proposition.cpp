#include "cltl/proposition.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace cltl {

namespace {

struct PropTable {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, PropId> ids;
};

PropTable& table() {
  static PropTable t;
  return t;
}

}  // namespace

PropId intern_prop(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  auto it = t.ids.find(std::string(name));
  if (it != t.ids.end()) return it->second;
  auto id = static_cast<PropId>(t.names.size());
  t.names.emplace_back(name);
  t.ids.emplace(t.names.back(), id);
  return id;
}

const std::string& prop_name(PropId id) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  if (id >= t.names.size()) throw std::out_of_range("unknown proposition id");
  return t.names[id];
}

bool is_valid_prop_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
    return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  static constexpr std::string_view keywords[] = {"X", "F", "G", "U",
                                                  "R", "true", "false"};
  return std::find(std::begin(keywords), std::end(keywords), name) ==
         std::end(keywords);
}

Letter::Letter(std::vector<PropId> props) : props_(std::move(props)) {
  std::sort(props_.begin(), props_.end());
  props_.erase(std::unique(props_.begin(), props_.end()), props_.end());
}

Letter::Letter(std::initializer_list<std::string_view> names) {
  for (auto n : names) props_.push_back(intern_prop(n));
  std::sort(props_.begin(), props_.end());
  props_.erase(std::unique(props_.begin(), props_.end()), props_.end());
}

bool Letter::holds(PropId p) const {
  return std::binary_search(props_.begin(), props_.end(), p);
}

}  // namespace cltl
