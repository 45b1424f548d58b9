// Exhaustive reference search for small instances, independent of the
// cycle-canceling code paths. Every integer assignment of request flows
// (within [0, cap]) and signed social flows (within [-cap_ji, cap_ij]) is
// considered; conservation at every node decides acceptance.
//
// Two exact cuts keep the search tractable without changing its answer:
//  - variables are grouped so that each node's incident edges finish as
//    early as possible, and a branch dies once a node's balance can no
//    longer reach zero within the bounds of its unassigned edges;
//  - the optimum search additionally drops branches whose remaining request
//    edges cannot lift the utility above the best complete assignment.
#include "star/oracle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace star {

namespace {

struct Variable {
  bool is_request = false;
  Amount lo = 0;
  Amount hi = 0;
  int a = 0;  // node slot receiving +value
  int b = 0;  // node slot receiving -value
  std::int64_t utility = 0;
};

class Enumerator {
 public:
  Enumerator(const SocialRequestGraph& g, const SmallInstanceLimits& limits, bool saturate_requests)
      : limits_(limits) {
    if (g.precision != 0)
      fail(ErrorCode::TooLarge, "oracle requires an integral instance (precision 0)");
    if (static_cast<int>(g.nodes.size()) > limits.max_nodes)
      fail(ErrorCode::TooLarge, "instance has more than " + std::to_string(limits.max_nodes) + " nodes");

    std::map<NodeId, int> slot;
    for (NodeId id : g.nodes) slot.emplace(id, static_cast<int>(slot.size()));
    balance_.assign(slot.size(), 0);
    rem_lo_.assign(slot.size(), 0);
    rem_hi_.assign(slot.size(), 0);

    for (const auto& e : g.requests) {
      if (e.capacity > limits.max_capacity)
        fail(ErrorCode::TooLarge, "request capacity beyond oracle limit");
      Variable v;
      v.is_request = true;
      v.a = slot.at(e.provider);
      v.b = slot.at(e.requester);
      v.utility = e.utility_per_unit;
      if (saturate_requests && !e.is_virtual) {
        v.lo = v.hi = e.capacity;
      } else {
        v.lo = 0;
        v.hi = e.capacity;
      }
      vars_.push_back(v);
    }
    for (const auto& p : g.social) {
      if (p.cap_ij > limits.max_capacity || p.cap_ji > limits.max_capacity)
        fail(ErrorCode::TooLarge, "social capacity beyond oracle limit");
      Variable v;
      v.a = slot.at(p.i);
      v.b = slot.at(p.j);
      v.lo = -p.cap_ji;
      v.hi = p.cap_ij;
      vars_.push_back(v);
    }

    // Group variables by their lowest endpoint so node balances close in id
    // order; requests come before socials within a group. The answer does
    // not depend on this order, only the search size does.
    std::stable_sort(vars_.begin(), vars_.end(), [](const Variable& x, const Variable& y) {
      int gx = std::min(x.a, x.b);
      int gy = std::min(y.a, y.b);
      if (gx != gy) return gx < gy;
      return x.is_request && !y.is_request;
    });

    for (const auto& v : vars_) {
      rem_lo_[v.a] += v.lo;
      rem_hi_[v.a] += v.hi;
      rem_lo_[v.b] += -v.hi;
      rem_hi_[v.b] += -v.lo;
    }
    rem_util_.assign(vars_.size() + 1, 0);
    for (std::size_t i = vars_.size(); i-- > 0;) {
      std::int64_t gain = vars_[i].utility > 0 ? vars_[i].utility * vars_[i].hi : 0;
      rem_util_[i] = rem_util_[i + 1] + gain;
    }
  }

  std::optional<std::int64_t> best_utility() {
    best_.reset();
    stop_at_first_ = false;
    search(0, 0);
    return best_;
  }

  bool any_circulation() {
    best_.reset();
    stop_at_first_ = true;
    search(0, 0);
    return best_.has_value();
  }

 private:
  bool window_ok(int node) const {
    return balance_[node] + rem_lo_[node] <= 0 && 0 <= balance_[node] + rem_hi_[node];
  }

  void search(std::size_t k, std::int64_t utility) {
    if (stop_at_first_ && best_) return;
    if (++states_ > limits_.max_states)
      fail(ErrorCode::TooLarge, "enumeration exceeded " + std::to_string(limits_.max_states) + " states");
    if (k == vars_.size()) {
      // All windows collapsed to zero, so every node balance is exactly 0.
      if (!best_ || utility > *best_) best_ = utility;
      return;
    }
    if (!stop_at_first_ && best_ && utility + rem_util_[k] <= *best_) return;

    const Variable& v = vars_[k];
    rem_lo_[v.a] -= v.lo;
    rem_hi_[v.a] -= v.hi;
    rem_lo_[v.b] -= -v.hi;
    rem_hi_[v.b] -= -v.lo;
    // High request values first, so good utilities bound the search early.
    for (Amount value = v.hi; value >= v.lo; --value) {
      balance_[v.a] += value;
      balance_[v.b] -= value;
      if (window_ok(v.a) && window_ok(v.b)) search(k + 1, utility + v.utility * value);
      balance_[v.a] -= value;
      balance_[v.b] += value;
      if (stop_at_first_ && best_) break;
    }
    rem_lo_[v.a] += v.lo;
    rem_hi_[v.a] += v.hi;
    rem_lo_[v.b] += -v.hi;
    rem_hi_[v.b] += -v.lo;
  }

  SmallInstanceLimits limits_;
  std::vector<Variable> vars_;
  std::vector<Amount> balance_;
  std::vector<Amount> rem_lo_;
  std::vector<Amount> rem_hi_;
  std::vector<std::int64_t> rem_util_;
  std::int64_t states_ = 0;
  bool stop_at_first_ = false;
  std::optional<std::int64_t> best_;
};

}  // namespace

std::int64_t brute_force_optimum(const SocialRequestGraph& g, const SmallInstanceLimits& limits) {
  Enumerator e(g, limits, /*saturate_requests=*/false);
  auto best = e.best_utility();
  // The zero flow always conserves, so a best value exists.
  require(best.has_value(), "oracle found no circulation at all");
  return *best;
}

bool brute_force_feasible(const SocialRequestGraph& g, const SmallInstanceLimits& limits) {
  Enumerator e(g, limits, /*saturate_requests=*/true);
  return e.any_circulation();
}

}  // namespace star
