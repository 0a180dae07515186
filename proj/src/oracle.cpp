#include "cltl/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cltl/error.hpp"

namespace cltl {

namespace {

using Row = std::vector<char>;

class SatTable {
 public:
  explicit SatTable(const LassoWord& u) : u_(u), n_(u.size()) {
    if (u.cycle.empty()) throw std::invalid_argument("lasso with empty cycle");
  }

  const Row& row(Formula f) {
    if (auto it = rows_.find(f.node()); it != rows_.end()) return it->second;
    Row r(n_, 0);
    switch (f.op()) {
      case Op::True: std::fill(r.begin(), r.end(), 1); break;
      case Op::False: break;
      case Op::Literal:
        for (std::size_t p = 0; p < n_; ++p)
          r[p] = u_.at(p).holds(f.prop()) == f.positive();
        break;
      case Op::Next: {
        const Row& c = row(f.child());
        for (std::size_t p = 0; p < n_; ++p) r[p] = c[u_.succ(p)];
        break;
      }
      case Op::And:
      case Op::Or: {
        const Row l = row(f.lhs());
        const Row& rr = row(f.rhs());
        for (std::size_t p = 0; p < n_; ++p)
          r[p] = f.op() == Op::And ? (l[p] && rr[p]) : (l[p] || rr[p]);
        break;
      }
      case Op::Until:
      case Op::Release: {
        const Row l = row(f.lhs());
        const Row& rr = row(f.rhs());
        const bool until = f.op() == Op::Until;
        // U: least fixpoint of  r | (l & X S),  starting from false.
        // R: greatest fixpoint of  r & (l | X S), starting from true.
        std::fill(r.begin(), r.end(), until ? 0 : 1);
        for (bool changed = true; changed;) {
          changed = false;
          for (std::size_t q = n_; q-- > 0;) {
            char nx = r[u_.succ(q)];
            char v = until ? (rr[q] || (l[q] && nx)) : (rr[q] && (l[q] || nx));
            if (v != r[q]) {
              r[q] = v;
              changed = true;
            }
          }
        }
        break;
      }
      case Op::CostUntil:
      case Op::CostRelease:
        throw FragmentError("LTL evaluation of a formula with cost operators");
    }
    return rows_.emplace(f.node(), std::move(r)).first->second;
  }

 private:
  const LassoWord& u_;
  std::size_t n_;
  std::unordered_map<const void*, Row> rows_;
};

}  // namespace

bool eval_ltl_on_lasso(Formula phi, const LassoWord& u) {
  if (phi.has_cost_until() || phi.has_cost_release())
    throw FragmentError("LTL evaluation of a formula with cost operators");
  SatTable t(u);
  return t.row(phi)[0];
}

CappedValue value_inf(Formula phi, const LassoWord& u, std::uint64_t cap) {
  if (cap == 0) throw std::invalid_argument("value_inf: cap must be > 0");
  if (phi.has_cost_release())
    throw FragmentError("value_inf expects an LTL<= formula");
  for (std::uint64_t n = 0; n <= cap; ++n)
    if (eval_ltl_on_lasso(instantiate(phi, static_cast<std::uint32_t>(n)), u))
      return CappedValue::exact(n);
  return CappedValue::above_cap();
}

CappedValue value_sup(Formula phi, const LassoWord& u, std::uint64_t cap) {
  if (cap == 0) throw std::invalid_argument("value_sup: cap must be > 0");
  if (phi.has_cost_until())
    throw FragmentError("value_sup expects an LTL> formula");
  // Satisfaction is downward closed in n; phi[0] is skipped because the
  // value is at least 0 regardless.
  for (std::uint64_t n = 1; n <= cap; ++n)
    if (!eval_ltl_on_lasso(instantiate(phi, static_cast<std::uint32_t>(n)), u))
      return CappedValue::exact(n - 1);
  return CappedValue::above_cap();
}

CappedValue oracle_value(Formula phi, const LassoWord& u, std::uint64_t cap) {
  switch (classify_fragment(phi)) {
    case Fragment::CostGT: return value_sup(phi, u, cap);
    case Fragment::LTL:
    case Fragment::CostLE: return value_inf(phi, u, cap);
    case Fragment::Mixed: break;
  }
  throw FragmentError("formula mixes U<= and R>");
}

}  // namespace cltl
