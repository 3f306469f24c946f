#include "dialog/mine.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dialog/combinatorics.hpp"
#include "dialog/enumerate.hpp"
#include "dialog/rewrite.hpp"

namespace dialog {
namespace {

// PE* first: as much of a dialog as possible should be left to unrestricted
// partial evaluation. For q < 3 several types coincide and the first wins.
constexpr DialogType kRecognitionOrder[] = {
    DialogType::PE_star, DialogType::SPE_prime, DialogType::PFA_n_star,
    DialogType::PE,      DialogType::SPE,       DialogType::PFA_n,
    DialogType::C,       DialogType::PFA,       DialogType::I,
};

constexpr std::size_t kFactoringLimit = 8;
constexpr std::size_t kMaxDistributed = 64;

bool order_sensitive(DialogType t) {
  return t == DialogType::C || t == DialogType::PFA || t == DialogType::PFA_n ||
         t == DialogType::PFA_n_star;
}

bool is_subset(const EpisodeSet& inner, const EpisodeSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

std::vector<QuestionId> flatten(const Episode& ep) {
  std::vector<QuestionId> out;
  for (const auto& u : ep) out.insert(out.end(), u.begin(), u.end());
  return out;
}

Expr primitive_term(const Episode& run) {
  if (run.size() == 1) {
    const auto& u = run.front();
    if (u.size() == 1) return Expr::leaf(*u.begin());
    return Expr::flat(DialogType::I, std::vector<QuestionId>(u.begin(), u.end()));
  }
  std::vector<Expr> terms;
  for (const auto& u : run) terms.push_back(primitive_term(Episode{u}));
  return Expr::node(DialogType::C, std::move(terms));
}

// Top-level form of a single episode: a bare question becomes C(q).
Expr primitive_expr(const Episode& ep) {
  auto e = primitive_term(ep);
  if (e.is_leaf()) return Expr::flat(DialogType::C, {e.question});
  return e;
}

// Restricted-growth enumeration of set partitions with at least two blocks,
// finest first.
std::vector<std::vector<QuestionSet>> block_partitions(const QuestionSet& questions) {
  const std::vector<QuestionId> qs(questions.begin(), questions.end());
  const std::size_t n = qs.size();
  std::vector<std::vector<QuestionSet>> out;
  if (n < 2) return out;
  std::vector<std::size_t> label(n, 0), max_before(n, 0);
  while (true) {
    const std::size_t blocks = *std::max_element(label.begin(), label.end()) + 1;
    if (blocks >= 2) {
      std::vector<QuestionSet> p(blocks);
      for (std::size_t i = 0; i < n; ++i) p[label[i]].insert(qs[i]);
      out.push_back(std::move(p));
    }
    // next restricted growth string
    std::size_t i = n - 1;
    while (i > 0) {
      std::size_t limit = 0;
      for (std::size_t j = 0; j < i; ++j) limit = std::max(limit, label[j]);
      if (label[i] <= limit) {
        ++label[i];
        std::fill(label.begin() + static_cast<std::ptrdiff_t>(i) + 1, label.end(), 0);
        break;
      }
      --i;
    }
    if (i == 0) break;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

class Budget {
 public:
  explicit Budget(std::size_t limit) : limit_(limit) {}
  bool spend(std::size_t n = 1) {
    if (used_ + n > limit_) {
      exhausted_ = true;
      return false;
    }
    used_ += n;
    return true;
  }
  bool exhausted() const { return exhausted_; }
  std::size_t used() const { return used_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
  bool exhausted_ = false;
};

// Every combination of one member from each union, wrapped in `type`.
std::vector<Expr> distribute(DialogType type, const std::vector<std::vector<Expr>>& parts) {
  std::vector<std::vector<Expr>> combos{{}};
  for (const auto& part : parts) {
    std::vector<std::vector<Expr>> next;
    for (const auto& c : combos) {
      for (const auto& member : part) {
        auto extended = c;
        extended.push_back(member);
        next.push_back(std::move(extended));
      }
    }
    combos = std::move(next);
  }
  std::vector<Expr> out;
  for (auto& c : combos) out.push_back(Expr::node(type, std::move(c)));
  return out;
}

class Miner {
 public:
  explicit Miner(const MineOptions& options) : budget_(options.step_budget) {}

  std::vector<Expr> mine_set(const QuestionSet& questions, const EpisodeSet& episodes) {
    if (questions.size() == 1) return {Expr::leaf(*questions.begin())};
    auto key = std::make_pair(questions, episodes);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::optional<std::vector<Expr>> best;
    if (auto single = recognize(EnumeratedSpec{questions, episodes})) {
      best = std::vector<Expr>{*single};
    }
    if (!best && questions.size() <= kFactoringLimit) {
      for (const auto& blocks : block_partitions(questions)) {
        if (!budget_.spend()) break;
        auto r = factor(blocks, episodes);
        if (r && (!best || r->size() < best->size())) best = std::move(r);
        if (best && best->size() == 1) break;
      }
    }
    if (!best || best->size() > 1) {
      auto peeled = peel(questions, episodes);
      if (!best || peeled.size() < best->size()) best = std::move(peeled);
    }
    memo_.emplace(std::move(key), *best);
    return *best;
  }

  std::optional<Expr> recognize(const EnumeratedSpec& spec) {
    const auto q = static_cast<unsigned>(spec.questions.size());
    if (q == 0) return std::nullopt;
    const std::vector<QuestionId> sorted(spec.questions.begin(), spec.questions.end());
    std::optional<std::vector<std::vector<QuestionId>>> orders;
    for (DialogType t : kRecognitionOrder) {
      if (episode_count(t, q) != spec.episodes.size()) continue;
      if (order_sensitive(t) && !orders) orders = candidate_orders(spec);
      const auto& tried = order_sensitive(t) ? *orders : std::vector<std::vector<QuestionId>>{sorted};
      for (const auto& order : tried) {
        budget_.spend();
        auto e = Expr::flat(t, order);
        if (enumerate(e).episodes == spec.episodes) return e;
      }
    }
    return std::nullopt;
  }

  Budget& budget() { return budget_; }

 private:
  std::optional<std::vector<Expr>> factor(const std::vector<QuestionSet>& blocks,
                                          const EpisodeSet& episodes) {
    const std::size_t k = blocks.size();
    std::map<QuestionId, std::size_t> block_of;
    for (std::size_t b = 0; b < k; ++b) {
      for (const auto& q : blocks[b]) block_of[q] = b;
    }
    // block order -> per-block sub-episode sets, and the tuple count
    struct Group {
      std::vector<EpisodeSet> subs;
      std::size_t tuples = 0;
    };
    std::map<std::vector<std::size_t>, Group> groups;
    for (const auto& ep : episodes) {
      std::vector<std::size_t> order;
      std::vector<Episode> subs(k);
      for (const auto& u : ep) {
        const std::size_t b = block_of.at(*u.begin());
        for (const auto& q : u) {
          if (block_of.at(q) != b) return std::nullopt;
        }
        if (order.empty() || order.back() != b) {
          if (std::find(order.begin(), order.end(), b) != order.end()) return std::nullopt;
          order.push_back(b);
        }
        subs[b].push_back(u);
      }
      auto& g = groups[order];
      if (g.subs.empty()) g.subs.resize(k);
      for (std::size_t b = 0; b < k; ++b) g.subs[b].insert(std::move(subs[b]));
      ++g.tuples;
    }
    for (const auto& [order, g] : groups) {
      std::size_t prod = 1;
      for (const auto& s : g.subs) prod *= s.size();
      if (prod != g.tuples) return std::nullopt;
    }

    const auto& first = groups.begin()->second;
    const bool uniform = std::all_of(groups.begin(), groups.end(),
                                     [&](const auto& kv) { return kv.second.subs == first.subs; });
    const auto k_factorial = static_cast<std::size_t>(factorial(static_cast<unsigned>(k)));

    if (uniform && (groups.size() == 1 || groups.size() == k_factorial)) {
      std::vector<std::vector<Expr>> parts;
      std::size_t combos = 1;
      const auto& order = groups.begin()->first;
      for (std::size_t b : order) {
        parts.push_back(mine_set(blocks[b], first.subs[b]));
        combos *= parts.back().size();
      }
      if (combos > kMaxDistributed) return std::nullopt;
      return distribute(groups.size() == 1 ? DialogType::C : DialogType::SPE_prime, parts);
    }

    if (k == 2 && groups.size() == 2) {
      // SPE over two sub-dialogs: each goes first in full, the other follows in one utterance
      const auto& g01 = groups.at({0, 1});
      const auto& g10 = groups.at({1, 0});
      const auto whole0 = single_utterance(blocks[0]);
      const auto whole1 = single_utterance(blocks[1]);
      if (g01.subs[1] == EpisodeSet{whole1} && g10.subs[0] == EpisodeSet{whole0} &&
          g01.subs[0].count(whole0) && g10.subs[1].count(whole1)) {
        auto t0 = mine_set(blocks[0], g01.subs[0]);
        auto t1 = mine_set(blocks[1], g10.subs[1]);
        if (t0.size() == 1 && t1.size() == 1)
          return std::vector<Expr>{Expr::node(DialogType::SPE, {t0.front(), t1.front()})};
      }
    }

    std::vector<Expr> out;
    for (const auto& [order, g] : groups) {
      std::vector<std::vector<Expr>> parts;
      std::size_t combos = 1;
      for (std::size_t b : order) {
        parts.push_back(mine_set(blocks[b], g.subs[b]));
        combos *= parts.back().size();
      }
      if (combos > kMaxDistributed) return std::nullopt;
      auto members = distribute(DialogType::C, parts);
      out.insert(out.end(), members.begin(), members.end());
    }
    return out;
  }

  // Ways to cover one episode with an expression no larger than the spec:
  // split the utterance sequence into consecutive groups, generalize each
  // group to any single type that still contains it, combine with C or SPE'.
  std::vector<Expr> generalize(const Episode& ep) {
    const std::size_t m = ep.size();
    std::vector<Expr> out;
    for (std::size_t cuts = 0; cuts < (std::size_t{1} << (m - 1)); ++cuts) {
      std::vector<Episode> runs(1);
      for (std::size_t i = 0; i < m; ++i) {
        runs.back().push_back(ep[i]);
        if (i + 1 < m && (cuts & (std::size_t{1} << i))) runs.emplace_back();
      }
      std::vector<std::vector<Expr>> options;
      std::size_t combos = 1;
      for (const auto& run : runs) {
        options.push_back(run_options(run));
        combos *= options.back().size();
      }
      if (!budget_.spend(combos)) return out;
      if (runs.size() == 1) {
        for (auto& e : options.front()) {
          if (e.is_leaf()) e = Expr::flat(DialogType::C, {e.question});
          out.push_back(std::move(e));
        }
        continue;
      }
      for (auto& e : distribute(DialogType::C, options)) out.push_back(std::move(e));
      for (auto& e : distribute(DialogType::SPE_prime, options)) out.push_back(std::move(e));
    }
    return out;
  }

  std::vector<Expr> run_options(const Episode& run) {
    if (run.size() == 1 && run.front().size() == 1) return {Expr::leaf(*run.front().begin())};
    std::vector<Expr> out{primitive_term(run)};
    const auto qs = covered(run);
    const auto q = static_cast<unsigned>(qs.size());
    const std::vector<QuestionId> sorted(qs.begin(), qs.end());
    const auto in_order = flatten(run);
    std::set<EpisodeSet> seen{enumerate(out.front()).episodes};
    for (DialogType t : kRecognitionOrder) {
      if (episode_count(t, q) > 4096) continue;
      auto e = Expr::flat(t, order_sensitive(t) ? in_order : sorted);
      auto en = enumerate(e).episodes;
      if (en.count(run) && seen.insert(en).second) out.push_back(std::move(e));
    }
    return out;
  }

  std::vector<Expr> peel(const QuestionSet& questions, const EpisodeSet& episodes) {
    (void)questions;
    std::map<std::string, std::pair<Expr, EpisodeSet>> candidates;
    auto consider = [&](const Expr& e) {
      auto key = render_expr(e);
      if (candidates.count(key)) return;
      EpisodeSet en;
      try {
        en = enumerate(e).episodes;
      } catch (const DialogError&) {
        return;
      }
      if (is_subset(en, episodes)) candidates.emplace(std::move(key), std::make_pair(e, en));
    };
    for (const auto& ep : episodes) consider(primitive_expr(ep));
    for (const auto& ep : canonical_order(episodes)) {
      if (budget_.exhausted()) break;
      for (const auto& e : generalize(ep)) consider(e);
    }

    EpisodeSet uncovered = episodes;
    std::vector<const std::pair<Expr, EpisodeSet>*> chosen;
    while (!uncovered.empty()) {
      const std::pair<Expr, EpisodeSet>* pick = nullptr;
      std::size_t pick_gain = 0;
      for (const auto& [key, cand] : candidates) {
        std::size_t gain = 0;
        for (const auto& ep : cand.second) gain += uncovered.count(ep);
        if (gain > pick_gain) {
          pick = &cand;
          pick_gain = gain;
        }
      }
      chosen.push_back(pick);
      for (const auto& ep : pick->second) uncovered.erase(ep);
    }

    // drop members the others already cover, latest first
    for (std::size_t i = chosen.size(); i-- > 0;) {
      EpisodeSet others;
      for (std::size_t j = 0; j < chosen.size(); ++j) {
        if (j != i) others.insert(chosen[j]->second.begin(), chosen[j]->second.end());
      }
      if (is_subset(chosen[i]->second, others)) chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
    }
    std::vector<Expr> out;
    for (const auto* c : chosen) out.push_back(c->first);
    return out;
  }

  Budget budget_;
  std::map<std::pair<QuestionSet, EpisodeSet>, std::vector<Expr>> memo_;
};

}  // namespace

std::vector<std::vector<QuestionId>> candidate_orders(const EnumeratedSpec& spec) {
  std::vector<std::vector<QuestionId>> out;
  auto add = [&](std::vector<QuestionId> order) {
    if (std::find(out.begin(), out.end(), order) == out.end()) out.push_back(std::move(order));
  };

  // If the answered-so-far sets of all episodes form a chain, the order is
  // fixed up to questions that are never separated.
  std::set<QuestionSet> prefixes;
  for (const auto& ep : spec.episodes) {
    QuestionSet acc;
    for (const auto& u : ep) {
      acc.insert(u.begin(), u.end());
      prefixes.insert(acc);
    }
  }
  std::vector<QuestionSet> chain(prefixes.begin(), prefixes.end());
  std::sort(chain.begin(), chain.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });
  bool is_chain = true;
  for (std::size_t i = 1; i < chain.size() && is_chain; ++i) {
    is_chain = chain[i - 1].size() < chain[i].size() &&
               std::includes(chain[i].begin(), chain[i].end(), chain[i - 1].begin(),
                             chain[i - 1].end());
  }
  if (is_chain) {
    std::vector<QuestionId> order;
    QuestionSet prev;
    for (const auto& s : chain) {
      for (const auto& q : s) {
        if (!prev.count(q)) order.push_back(q);
      }
      prev = s;
    }
    add(std::move(order));
  }

  bool any_singles = false;
  for (const auto& ep : canonical_order(spec.episodes)) {
    if (!all_singles(ep)) continue;
    any_singles = true;
    add(flatten(ep));
  }
  if (!any_singles) {
    for (const auto& ep : canonical_order(spec.episodes)) add(flatten(ep));
  }
  return out;
}

std::optional<Expr> recognize_single_type(const EnumeratedSpec& spec) {
  Miner miner(MineOptions{});
  if (spec.questions.size() == 1) return Expr::flat(DialogType::C, {*spec.questions.begin()});
  return miner.recognize(spec);
}

MineResult mine(const EnumeratedSpec& spec, const MineOptions& options) {
  validate(spec);
  Miner miner(options);
  auto exprs = miner.mine_set(spec.questions, spec.episodes);
  MineResult result;
  for (auto& e : exprs) {
    if (e.is_leaf()) e = Expr::flat(DialogType::C, {e.question});
    auto n = normalize(e);
    if (std::find(result.spec.exprs.begin(), result.spec.exprs.end(), n) == result.spec.exprs.end())
      result.spec.exprs.push_back(std::move(n));
  }
  result.minimal_claimed = result.spec.exprs.size() == 1;
  result.budget_exhausted = miner.budget().exhausted();
  result.steps = miner.budget().used();
  return result;
}

}  // namespace dialog
