// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seqauction/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "seqauction/errors.hpp"

namespace seqauction {

namespace {

struct Entry {
  OracleOutcome out;
  std::vector<Rational> cont;  // per buyer, earned from this entry's node on
};

// Per-child digest of the continuation set.
struct Branch {
  const std::vector<Entry>* entries = nullptr;
  std::vector<Rational> min_cont;  // coordinatewise over entries
  std::vector<Rational> max_cont;
};

class Solver {
 public:
  Solver(const Market& market, const SellerPolicy& policy, const OracleOptions& opt)
      : market_(market), policy_(policy), opt_(opt) {
    if (opt_.delta.sign() <= 0) {
      throw std::invalid_argument("brute_force_spe: delta must be > 0");
    }
  }

  const std::vector<Entry>& solve(const Allocation& node) {
    auto it = memo_.find(node);
    if (it != memo_.end()) return it->second;

    std::vector<Entry> entries;
    if (node.complete()) {
      Entry leaf;
      leaf.out.allocation = node;
      leaf.out.prices.assign(market_.items(), Rational(0));
      leaf.cont.assign(market_.buyers(), Rational(0));
      entries.push_back(std::move(leaf));
    } else {
      entries = expand(node);
    }
    return memo_.emplace(node, std::move(entries)).first->second;
  }

 private:
  void charge(long long units = 1) {
    work_ += units;
    if (work_ > opt_.budget) {
      throw BudgetExceeded("brute_force_spe: work budget exhausted");
    }
  }

  int tie(const Allocation& node, int item, std::vector<int> top) const {
    if (top.size() == 1) return top[0];
    std::sort(top.begin(), top.end());
    return policy_.tie_break(node, item, top);
  }

  Branch branch_of(const Allocation& node, int item, int b) {
    Branch br;
    br.entries = &solve(node.assigned(item, b));
    const int n = market_.buyers();
    br.min_cont = (*br.entries)[0].cont;
    br.max_cont = (*br.entries)[0].cont;
    for (const Entry& e : *br.entries) {
      for (int i = 0; i < n; ++i) {
        if (e.cont[i] < br.min_cont[i]) br.min_cont[i] = e.cont[i];
        if (e.cont[i] > br.max_cont[i]) br.max_cont[i] = e.cont[i];
      }
    }
    return br;
  }

  std::vector<Entry> expand(const Allocation& node) {
    const int n = market_.buyers();
    const int item = policy_.next_item(node);

    std::vector<Branch> child(n);
    std::vector<Rational> marg(n);
    for (int b = 0; b < n; ++b) {
      marg[b] = marginal_value(market_, b, item, node);
      child[b] = branch_of(node, item, b);
    }

    std::map<std::string, Entry> results;
    auto emit = [&](const Rational& p, const Entry& e_w,
                    const std::vector<Rational>& u_cand) {
      Entry out;
      out.out.allocation = e_w.out.allocation;
      out.out.prices = e_w.out.prices;
      out.out.prices[item] = p;
      out.cont = u_cand;
      std::string key = out.out.allocation.str();
      for (const auto& q : out.out.prices) key += ";" + q.str();
      results.emplace(std::move(key), std::move(out));
    };

    for (int w = 0; w < n; ++w) {
      for (const Entry& e_w : *child[w].entries) {
        // Losing forever is always worth >= 0, so a rational winner never
        // pays beyond marginal value plus continuation.
        const Rational max_price = marg[w] + e_w.cont[w];
        std::vector<Rational> u_cand(n);
        for (int i = 0; i < n; ++i) u_cand[i] = e_w.cont[i];

        for (Rational p(0); p <= max_price; p += opt_.delta) {
          charge();
          u_cand[w] = marg[w] - p + e_w.cont[w];
          if (p.is_zero()) {
            if (zero_price_nash(node, item, w, marg, child, u_cand)) {
              emit(p, e_w, u_cand);
            }
            continue;
          }
          bool done = false;
          for (int s = 0; s < n && !done; ++s) {
            if (s == w) continue;
            for (int which = 0; which < 2 && !done; ++which) {
              const Rational level = which == 0 ? p : p - opt_.delta;
              if (level.sign() < 0) continue;
              if (supported_nash(node, item, w, p, s, level, marg, child, u_cand)) {
                emit(p, e_w, u_cand);
                done = true;
              }
            }
          }
        }
      }
    }

    std::vector<Entry> out;
    out.reserve(results.size());
    for (auto& [key, e] : results) out.push_back(std::move(e));
    return out;
  }

  // Rival t overbids to `cost`. Unfiltered, the stage designer commits the
  // continuation that deters best (the minimum); under the OC refinement an
  // optimistic deviator is deterred only if no committed continuation pays
  // (the maximum). The OC ceiling never blocks a strictly profitable win, so
  // it adds no constraint on deviations.
  bool deviation_deterred(int t, const Rational& cost, const Rational& marg_t,
                          const Branch& br, const std::vector<Rational>& u_cand) {
    const Rational& cont = opt_.oc_filter ? br.max_cont[t] : br.min_cont[t];
    return marg_t + cont - cost <= u_cand[t];
  }

  // The everyone-bids-zero stage: w wins by the tie rule; each rival's best
  // overbid costs one grid step.
  bool zero_price_nash(const Allocation& node, int item, int w,
                       const std::vector<Rational>& marg,
                       const std::vector<Branch>& child,
                       const std::vector<Rational>& u_cand) {
    const int n = market_.buyers();
    std::vector<int> everyone(n);
    for (int b = 0; b < n; ++b) everyone[b] = b;
    if (tie(node, item, everyone) != w) return false;
    for (int t = 0; t < n; ++t) {
      if (t == w) continue;
      charge();
      if (!deviation_deterred(t, opt_.delta, marg[t], child[t], u_cand)) return false;
    }
    return true;
  }

  // Certificate pattern: w bids p, s bids `level` (p or p-delta), everyone
  // else bids 0. Checks that p is w's cheapest winning bid, that every
  // rival's best overbid is deterred, that w does not prefer dropping out,
  // and (under the OC filter) that the supporting bid respects s's ceiling.
  bool supported_nash(const Allocation& node, int item, int w, const Rational& p,
                      int s, const Rational& level,
                      const std::vector<Rational>& marg,
                      const std::vector<Branch>& child,
                      const std::vector<Rational>& u_cand) {
    const int n = market_.buyers();

    if (level == p) {
      // w must win the tie at p; then no lower bid of w wins.
      if (tie(node, item, {w, s}) != w) return false;
    } else {
      // w at `level` must lose its tie, else w would shade down to it.
      std::vector<int> tied{w, s};
      if (level.is_zero()) {
        for (int t = 0; t < n; ++t) {
          if (t != w && t != s) tied.push_back(t);
        }
      }
      if (tie(node, item, tied) == w) return false;
    }

    // Who wins if w walks away (bids zero).
    int drop_winner;
    if (level.sign() > 0) {
      drop_winner = s;
    } else {
      std::vector<int> everyone(n);
      for (int b = 0; b < n; ++b) everyone[b] = b;
      drop_winner = tie(node, item, everyone);
      if (drop_winner == w) return false;  // w could win at zero instead
    }

    if (opt_.oc_filter) {
      // Supporter's ceiling against the branch's least favorable committed
      // continuation; an optimistic ceiling would let one grid notch per
      // level compound into multi-delta price drift.
      Rational cap = marg[s] + child[s].min_cont[s] - u_cand[s];
      if (cap.sign() < 0) cap = Rational(0);
      if (level > cap) return false;
    }

    // Rival overbids.
    for (int t = 0; t < n; ++t) {
      if (t == w) continue;
      charge();
      std::vector<int> top_at_p{w, t};
      if (level == p && s != t) top_at_p.push_back(s);
      const Rational cost = tie(node, item, top_at_p) == t ? p : p + opt_.delta;
      if (opt_.oc_filter || (t != s && t != drop_winner)) {
        if (!deviation_deterred(t, cost, marg[t], child[t], u_cand)) return false;
      }
    }

    if (opt_.oc_filter) {
      // Robust drop check for w.
      if (child[drop_winner].max_cont[w] > u_cand[w]) return false;
      return true;
    }

    // Unfiltered: one committed continuation per child must serve every role
    // at once. Only the supporter's and the drop winner's branches carry more
    // than the deviation constraint; scan those for a single element.
    for (int t : {s, drop_winner}) {
      if (t == w) continue;
      std::vector<int> top_at_p{w, t};
      if (level == p && s != t) top_at_p.push_back(s);
      const Rational cost = tie(node, item, top_at_p) == t ? p : p + opt_.delta;
      bool found = false;
      for (const Entry& e : *child[t].entries) {
        charge();
        if (marg[t] + e.cont[t] - cost > u_cand[t]) continue;  // t would overbid
        if (t == drop_winner && e.cont[w] > u_cand[w]) continue;  // w would drop
        found = true;
        break;
      }
      if (!found) return false;
      if (s == drop_winner) break;  // same branch, one scan
    }
    return true;
  }

  const Market& market_;
  const SellerPolicy& policy_;
  const OracleOptions& opt_;
  long long work_ = 0;
  std::map<Allocation, std::vector<Entry>> memo_;
};

}  // namespace

Rational outcome_revenue(const OracleOutcome& outcome) {
  Rational sum;
  for (const auto& p : outcome.prices) sum += p;
  return sum;
}

std::vector<OracleOutcome> brute_force_spe(const Market& market,
                                           const SellerPolicy& policy,
                                           const OracleOptions& options) {
  Solver solver(market, policy, options);
  const auto& entries = solver.solve(Allocation(market.items()));
  std::vector<OracleOutcome> out;
  out.reserve(entries.size());
  for (const Entry& e : entries) out.push_back(e.out);
  return out;
}

std::vector<std::vector<OracleOutcome>> group_outcomes(
    const std::vector<OracleOutcome>& outcomes, const Rational& delta) {
  std::vector<std::vector<OracleOutcome>> classes;
  for (const auto& o : outcomes) {
    bool placed = false;
    for (auto& cls : classes) {
      const auto& rep = cls.front();
      if (!(rep.allocation == o.allocation)) continue;
      bool close = true;
      for (std::size_t j = 0; j < o.prices.size(); ++j) {
        if (abs(rep.prices[j] - o.prices[j]) > delta) {
          close = false;
          break;
        }
      }
      if (close) {
        cls.push_back(o);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({o});
  }
  return classes;
}

bool single_outcome_class(const std::vector<OracleOutcome>& outcomes,
                          const Rational& delta) {
  if (outcomes.empty()) return false;
  for (std::size_t a = 0; a < outcomes.size(); ++a) {
    if (!(outcomes[a].allocation == outcomes[0].allocation)) return false;
    for (std::size_t b = a + 1; b < outcomes.size(); ++b) {
      for (std::size_t j = 0; j < outcomes[a].prices.size(); ++j) {
        if (abs(outcomes[a].prices[j] - outcomes[b].prices[j]) > delta) return false;
      }
    }
  }
  return true;
}

}  // namespace seqauction
