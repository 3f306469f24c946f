#include "dialog/rewrite.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "dialog/combinatorics.hpp"
#include "dialog/enumerate.hpp"
#include "dialog/mine.hpp"

namespace dialog {
namespace {

constexpr std::size_t kEquivalenceLimit = 10;
constexpr std::size_t kInlineChainLimit = 8;

using Rewrite = std::pair<std::string, Expr>;

bool is_flat_c(const Expr& e) { return e.type == DialogType::C && e.subexpression_count() == 0; }

// The single all-singles episode of `e`, if that is all it specifies.
std::optional<Episode> single_chain(const Expr& e) {
  if (e.subexpression_count() == 0) {
    if (e.type == DialogType::PFA && e.terms.size() == 2) {
      return Episode{{e.terms[0].question}, {e.terms[1].question}};
    }
    return std::nullopt;
  }
  if (e.questions().size() > kInlineChainLimit) return std::nullopt;
  auto en = enumerate(e);
  if (en.episodes.size() != 1) return std::nullopt;
  const auto& ep = *en.episodes.begin();
  if (!all_singles(ep)) return std::nullopt;
  return ep;
}

std::optional<Rewrite> rewrite_here(const Expr& e, bool top) {
  if (e.terms.size() == 1) {
    const Expr& only = e.terms.front();
    if (!top) return Rewrite{"unwrap-single", only};
    if (!only.is_leaf()) return Rewrite{"unwrap-single", only};
    if (e.type != DialogType::C) return Rewrite{"unwrap-single", Expr::flat(DialogType::C, {only.question})};
    return std::nullopt;
  }
  if (e.type == DialogType::C &&
      std::any_of(e.terms.begin(), e.terms.end(),
                  [](const Expr& t) { return !t.is_leaf() && t.type == DialogType::C; })) {
    std::vector<Expr> spliced;
    for (const auto& t : e.terms) {
      if (!t.is_leaf() && t.type == DialogType::C) {
        spliced.insert(spliced.end(), t.terms.begin(), t.terms.end());
      } else {
        spliced.push_back(t);
      }
    }
    return Rewrite{"flatten-C", Expr::node(DialogType::C, std::move(spliced))};
  }
  if (!is_flat_c(e)) {
    if (auto chain = single_chain(e)) {
      std::vector<QuestionId> seq;
      for (const auto& u : *chain) seq.push_back(*u.begin());
      return Rewrite{"inline-chain", Expr::flat(DialogType::C, seq)};
    }
  }
  return std::nullopt;
}

// Innermost-leftmost single step.
std::optional<Rewrite> rewrite_once(const Expr& e, bool top) {
  if (e.is_leaf()) return std::nullopt;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    if (auto r = rewrite_once(e.terms[i], false)) {
      Expr next = e;
      next.terms[i] = std::move(r->second);
      return Rewrite{std::move(r->first), std::move(next)};
    }
  }
  return rewrite_here(e, top);
}

Expr primitive_of(const Episode& ep) {
  if (ep.size() == 1) {
    const auto& u = ep.front();
    if (u.size() == 1) return Expr::flat(DialogType::C, {*u.begin()});
    return Expr::flat(DialogType::I, std::vector<QuestionId>(u.begin(), u.end()));
  }
  std::vector<Expr> terms;
  for (const auto& u : ep) {
    if (u.size() == 1) {
      terms.push_back(Expr::leaf(*u.begin()));
    } else {
      terms.push_back(Expr::flat(DialogType::I, std::vector<QuestionId>(u.begin(), u.end())));
    }
  }
  return Expr::node(DialogType::C, std::move(terms));
}

void check_comparable(const QuestionSet& a, const QuestionSet& b) {
  if (a != b)
    throw DialogError(ErrorKind::question_mismatch,
                      "specifications range over different question sets");
  if (a.size() > kEquivalenceLimit)
    throw DialogError(ErrorKind::size_guard, "equivalence is decided by enumeration; at most " +
                                                 std::to_string(kEquivalenceLimit) +
                                                 " questions");
}

}  // namespace

Expr normalize(const Expr& expr, RewriteTrace* trace) {
  Expr current = expr;
  while (auto r = rewrite_once(current, true)) {
    if (trace) trace->steps.push_back({r->first, current, r->second});
    current = std::move(r->second);
  }
  return current;
}

SpecUnion normalize(const SpecUnion& spec) {
  SpecUnion out;
  for (const auto& e : spec.exprs) {
    auto n = normalize(e);
    if (std::find(out.exprs.begin(), out.exprs.end(), n) == out.exprs.end())
      out.exprs.push_back(std::move(n));
  }
  return out;
}

bool is_primitive(const Expr& expr) {
  if (expr.is_leaf()) return true;
  if (expr.type == DialogType::I) return expr.subexpression_count() == 0;
  if (expr.type != DialogType::C) return false;
  return std::all_of(expr.terms.begin(), expr.terms.end(),
                     [](const Expr& t) { return is_primitive(t); });
}

SpecUnion reduce_to_primitives(const Expr& expr) {
  if (is_primitive(expr)) return SpecUnion{{expr}};
  SpecUnion out;
  for (const auto& ep : canonical_order(enumerate(expr).episodes))
    out.exprs.push_back(primitive_of(ep));
  return out;
}

bool equivalent(const SpecUnion& a, const SpecUnion& b) {
  check_comparable(a.questions(), b.questions());
  return enumerate_union(a).episodes == enumerate_union(b).episodes;
}

bool equivalent(const Expr& a, const Expr& b) {
  return equivalent(SpecUnion{{a}}, SpecUnion{{b}});
}

SpecUnion residual_union(const SpecUnion& spec, const Episode& history) {
  const auto full = enumerate_union(spec);
  if (!has_prefix(full.episodes, history))
    throw DialogError(ErrorKind::not_a_prefix,
                      "history " + render_episode(history) + " is not a prefix of any episode");
  QuestionSet open = full.questions;
  for (const auto& q : covered(history)) open.erase(q);
  if (open.empty()) return {};

  EnumeratedSpec rest{open, continuations(full.episodes, history)};
  const std::vector<QuestionId> sorted(open.begin(), open.end());
  const auto n = static_cast<unsigned>(open.size());
  auto matches = [&](const Expr& e) {
    return enumerate(e).episodes == rest.episodes;
  };
  if (rest.episodes.size() == episode_count(DialogType::PE_star, n)) {
    auto e = Expr::flat(DialogType::PE_star, sorted);
    if (matches(e)) return SpecUnion{{normalize(e)}};
  }
  if (rest.episodes.size() == episode_count(DialogType::SPE_prime, n)) {
    auto e = Expr::flat(DialogType::SPE_prime, sorted);
    if (matches(e)) return SpecUnion{{normalize(e)}};
  }
  if (rest.episodes.size() == episode_count(DialogType::PFA_n_star, n)) {
    for (const auto& order : candidate_orders(rest)) {
      auto e = Expr::flat(DialogType::PFA_n_star, order);
      if (matches(e)) return SpecUnion{{normalize(e)}};
    }
  }
  return mine(rest).spec;
}

}  // namespace dialog
