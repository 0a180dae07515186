#include "cltl/formula.hpp"

#include <cassert>
#include <deque>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "cltl/error.hpp"

namespace cltl {

namespace detail {

struct Node {
  Op op;
  bool positive;
  PropId prop;
  std::uint32_t counter;
  const Node* lhs;
  const Node* rhs;
  std::uint32_t height;
  bool cost_until;
  bool cost_release;
  bool unlabeled;
  std::size_t hash;
};

}  // namespace detail

using detail::Node;

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t node_hash(Op op, PropId prop, bool positive, std::uint32_t counter,
                      const Node* lhs, const Node* rhs) {
  std::size_t h = static_cast<std::size_t>(op);
  h = mix(h, prop);
  h = mix(h, positive);
  h = mix(h, counter);
  h = mix(h, lhs ? lhs->hash : 0x51);
  h = mix(h, rhs ? rhs->hash : 0x73);
  return h;
}

struct NodePtrHash {
  std::size_t operator()(const Node* n) const { return n->hash; }
};

struct NodePtrEq {
  bool operator()(const Node* a, const Node* b) const {
    return a->op == b->op && a->prop == b->prop &&
           a->positive == b->positive && a->counter == b->counter &&
           a->lhs == b->lhs && a->rhs == b->rhs;
  }
};

struct NodeTable {
  std::mutex mutex;
  std::deque<Node> storage;
  std::unordered_set<const Node*, NodePtrHash, NodePtrEq> index;
};

NodeTable& node_table() {
  static NodeTable t;
  return t;
}

}  // namespace

Formula Formula::make(Op op, PropId prop, bool positive, std::uint32_t counter,
                      const Node* lhs, const Node* rhs) {
  Node probe{};
  probe.op = op;
  probe.prop = prop;
  probe.positive = positive;
  probe.counter = counter;
  probe.lhs = lhs;
  probe.rhs = rhs;
  probe.hash = node_hash(op, prop, positive, counter, lhs, rhs);

  std::uint32_t h = 0;
  bool cu = op == Op::CostUntil;
  bool cr = op == Op::CostRelease;
  bool unl = (cu || cr) && counter == 0;
  for (const Node* c : {lhs, rhs}) {
    if (!c) continue;
    h = std::max(h, c->height + 1);
    cu = cu || c->cost_until;
    cr = cr || c->cost_release;
    unl = unl || c->unlabeled;
  }
  probe.height = h;
  probe.cost_until = cu;
  probe.cost_release = cr;
  probe.unlabeled = unl;

  auto& t = node_table();
  std::lock_guard lock(t.mutex);
  if (auto it = t.index.find(&probe); it != t.index.end()) return Formula(*it);
  t.storage.push_back(probe);
  const Node* stored = &t.storage.back();
  t.index.insert(stored);
  return Formula(stored);
}

Formula Formula::top() { return make(Op::True, 0, true, 0, nullptr, nullptr); }
Formula Formula::bottom() {
  return make(Op::False, 0, true, 0, nullptr, nullptr);
}
Formula Formula::literal(PropId prop, bool positive) {
  return make(Op::Literal, prop, positive, 0, nullptr, nullptr);
}
Formula Formula::literal(std::string_view name, bool positive) {
  return literal(intern_prop(name), positive);
}
Formula Formula::conj(Formula l, Formula r) {
  return make(Op::And, 0, true, 0, l.node_, r.node_);
}
Formula Formula::disj(Formula l, Formula r) {
  return make(Op::Or, 0, true, 0, l.node_, r.node_);
}
Formula Formula::next(Formula c) {
  return make(Op::Next, 0, true, 0, c.node_, nullptr);
}
Formula Formula::until(Formula l, Formula r) {
  return make(Op::Until, 0, true, 0, l.node_, r.node_);
}
Formula Formula::release(Formula l, Formula r) {
  return make(Op::Release, 0, true, 0, l.node_, r.node_);
}
Formula Formula::cost_until(Formula l, Formula r, std::uint32_t counter) {
  return make(Op::CostUntil, 0, true, counter, l.node_, r.node_);
}
Formula Formula::cost_release(Formula l, Formula r, std::uint32_t counter) {
  return make(Op::CostRelease, 0, true, counter, l.node_, r.node_);
}

Op Formula::op() const { return node_->op; }
PropId Formula::prop() const { return node_->prop; }
bool Formula::positive() const { return node_->positive; }
std::uint32_t Formula::counter() const { return node_->counter; }
Formula Formula::lhs() const {
  assert(node_->lhs && node_->rhs);
  return Formula(node_->lhs);
}
Formula Formula::rhs() const {
  assert(node_->rhs);
  return Formula(node_->rhs);
}
Formula Formula::child() const {
  assert(node_->op == Op::Next);
  return Formula(node_->lhs);
}
bool Formula::is_binary() const { return node_->rhs != nullptr; }
std::uint32_t Formula::height() const { return node_->height; }
bool Formula::has_cost_until() const { return node_->cost_until; }
bool Formula::has_cost_release() const { return node_->cost_release; }
bool Formula::has_unlabeled_cost() const { return node_->unlabeled; }
std::size_t Formula::hash() const { return node_->hash; }

const char* to_string(Fragment f) {
  switch (f) {
    case Fragment::LTL: return "LTL";
    case Fragment::CostLE: return "LTL<=";
    case Fragment::CostGT: return "LTL>";
    case Fragment::Mixed: return "mixed";
  }
  return "?";
}

namespace {

int compare_nodes(const Node* a, const Node* b) {
  while (a != b) {
    if (a->height != b->height) return a->height < b->height ? -1 : 1;
    if (a->op != b->op) return a->op < b->op ? -1 : 1;
    if (a->op == Op::Literal) {
      if (a->prop != b->prop) {
        int c = prop_name(a->prop).compare(prop_name(b->prop));
        return c < 0 ? -1 : 1;
      }
      return a->positive ? 1 : -1;  // positive after negative
    }
    if (a->counter != b->counter) return a->counter < b->counter ? -1 : 1;
    if (a->lhs != b->lhs) {
      if (int c = compare_nodes(a->lhs, b->lhs); c != 0) return c;
    }
    a = a->rhs;
    b = b->rhs;
    if (!a || !b) return 0;
  }
  return 0;
}

}  // namespace

int compare(Formula a, Formula b) { return compare_nodes(a.node(), b.node()); }

// ── Duality ─────────────────────────────────────────────────────────────────

namespace {

Formula negate_rec(Formula f, std::unordered_map<const Node*, Formula>& memo) {
  if (auto it = memo.find(f.node()); it != memo.end()) return it->second;
  Formula out = Formula::top();
  switch (f.op()) {
    case Op::True: out = Formula::bottom(); break;
    case Op::False: out = Formula::top(); break;
    case Op::Literal: out = Formula::literal(f.prop(), !f.positive()); break;
    case Op::Next: out = Formula::next(negate_rec(f.child(), memo)); break;
    default: {
      Formula l = negate_rec(f.lhs(), memo);
      Formula r = negate_rec(f.rhs(), memo);
      switch (f.op()) {
        case Op::And: out = Formula::disj(l, r); break;
        case Op::Or: out = Formula::conj(l, r); break;
        case Op::Until: out = Formula::release(l, r); break;
        case Op::Release: out = Formula::until(l, r); break;
        case Op::CostUntil: out = Formula::cost_release(l, r, f.counter()); break;
        case Op::CostRelease: out = Formula::cost_until(l, r, f.counter()); break;
        default: assert(false);
      }
    }
  }
  memo.emplace(f.node(), out);
  return out;
}

}  // namespace

Formula negate_dual(Formula f) {
  std::unordered_map<const Node*, Formula> memo;
  return negate_rec(f, memo);
}

Fragment classify_fragment(Formula f) {
  bool le = f.has_cost_until();
  bool gt = f.has_cost_release();
  if (le && gt) return Fragment::Mixed;
  if (le) return Fragment::CostLE;
  if (gt) return Fragment::CostGT;
  return Fragment::LTL;
}

// ── Unfolding ───────────────────────────────────────────────────────────────
//
// Only these rewrites are applied to the produced nodes:
//   false U f => f,   true R f => f,   true & f => f,   false | f => f.

namespace {

Formula s_until(Formula l, Formula r) {
  return l.op() == Op::False ? r : Formula::until(l, r);
}
Formula s_release(Formula l, Formula r) {
  return l.op() == Op::True ? r : Formula::release(l, r);
}
Formula s_and(Formula l, Formula r) {
  if (l.op() == Op::True) return r;
  if (r.op() == Op::True) return l;
  return Formula::conj(l, r);
}
Formula s_or(Formula l, Formula r) {
  if (l.op() == Op::False) return r;
  if (r.op() == Op::False) return l;
  return Formula::disj(l, r);
}

class Unfolder {
 public:
  explicit Unfolder(std::uint32_t n) : n_(n) {}

  Formula run(Formula f) {
    if (!f.has_cost_until() && !f.has_cost_release()) return f;
    if (auto it = memo_.find(f.node()); it != memo_.end()) return it->second;
    Formula out = f;
    switch (f.op()) {
      case Op::Next: out = Formula::next(run(f.child())); break;
      case Op::And: out = s_and(run(f.lhs()), run(f.rhs())); break;
      case Op::Or: out = s_or(run(f.lhs()), run(f.rhs())); break;
      case Op::Until: out = s_until(run(f.lhs()), run(f.rhs())); break;
      case Op::Release: out = s_release(run(f.lhs()), run(f.rhs())); break;
      case Op::CostUntil: out = unfold(run(f.lhs()), run(f.rhs())); break;
      default: throw FragmentError("instantiate: unexpected cost release");
    }
    memo_.emplace(f.node(), out);
    return out;
  }

 private:
  // (l U<= r)[0] = l U r,  (l U<= r)[k+1] = (l | X (l U<= r)[k]) U r
  Formula unfold(Formula l, Formula r) const {
    Formula acc = s_until(l, r);
    for (std::uint32_t k = 0; k < n_; ++k)
      acc = s_until(s_or(l, Formula::next(acc)), r);
    return acc;
  }

  std::uint32_t n_;
  std::unordered_map<const Node*, Formula> memo_;
};

}  // namespace

Formula instantiate(Formula f, std::uint32_t n) {
  switch (classify_fragment(f)) {
    case Fragment::LTL: return f;
    case Fragment::CostLE: return Unfolder(n).run(f);
    case Fragment::CostGT: return negate_dual(Unfolder(n).run(negate_dual(f)));
    case Fragment::Mixed: break;
  }
  throw FragmentError("instantiate: formula mixes U<= and R>");
}

// ── Labels ──────────────────────────────────────────────────────────────────

namespace {

Formula label_rec(Formula f, std::uint32_t& next_label) {
  if (!f.has_cost_until() && !f.has_cost_release()) return f;
  switch (f.op()) {
    case Op::Next: return Formula::next(label_rec(f.child(), next_label));
    case Op::CostUntil:
    case Op::CostRelease: {
      std::uint32_t mine = next_label++;
      Formula l = label_rec(f.lhs(), next_label);
      Formula r = label_rec(f.rhs(), next_label);
      return f.op() == Op::CostUntil ? Formula::cost_until(l, r, mine)
                                     : Formula::cost_release(l, r, mine);
    }
    default: {
      Formula l = label_rec(f.lhs(), next_label);
      Formula r = label_rec(f.rhs(), next_label);
      switch (f.op()) {
        case Op::And: return Formula::conj(l, r);
        case Op::Or: return Formula::disj(l, r);
        case Op::Until: return Formula::until(l, r);
        case Op::Release: return Formula::release(l, r);
        default: assert(false); return f;
      }
    }
  }
}

}  // namespace

Formula label_counters(Formula f) {
  std::uint32_t next_label = 1;
  return label_rec(f, next_label);
}

std::uint32_t count_cost_operators(Formula f) {
  if (!f.has_cost_until() && !f.has_cost_release()) return 0;
  if (f.op() == Op::Next) return count_cost_operators(f.child());
  return (f.is_cost() ? 1u : 0u) + count_cost_operators(f.lhs()) +
         count_cost_operators(f.rhs());
}

std::vector<Formula> until_subformulas(Formula f) {
  std::vector<Formula> out;
  std::unordered_set<const Node*> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.node()).second) continue;
    if (g.op() == Op::Until) out.push_back(g);
    if (g.op() == Op::Next) {
      stack.push_back(g.child());
    } else if (g.is_binary()) {
      stack.push_back(g.rhs());
      stack.push_back(g.lhs());
    }
  }
  return out;
}

std::size_t dag_size(Formula f) {
  std::unordered_set<const Node*> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.node()).second) continue;
    if (g.op() == Op::Next) {
      stack.push_back(g.child());
    } else if (g.is_binary()) {
      stack.push_back(g.lhs());
      stack.push_back(g.rhs());
    }
  }
  return seen.size();
}

}  // namespace cltl
