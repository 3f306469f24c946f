#include "dialog/enumerate.hpp"

#include <algorithm>
#include <numeric>

namespace dialog {
namespace {

Episode concat(const Episode& a, const Episode& b) {
  Episode out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

EpisodeSet product(const std::vector<EpisodeSet>& parts) {
  EpisodeSet acc{Episode{}};
  for (const auto& part : parts) {
    EpisodeSet next;
    for (const auto& head : acc) {
      for (const auto& tail : part) next.insert(concat(head, tail));
    }
    acc = std::move(next);
  }
  return acc;
}

// Every non-empty subset first, then the ordered partitions of what is left.
void ordered_partitions(const std::vector<QuestionId>& rest, Episode& prefix, EpisodeSet& out) {
  if (rest.empty()) {
    out.insert(prefix);
    return;
  }
  const std::size_t n = rest.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    AbstractUtterance block;
    std::vector<QuestionId> remaining;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        block.insert(rest[i]);
      } else {
        remaining.push_back(rest[i]);
      }
    }
    prefix.push_back(std::move(block));
    ordered_partitions(remaining, prefix, out);
    prefix.pop_back();
  }
}

EpisodeSet atomic_semantics(DialogType type, const std::vector<QuestionId>& t) {
  const std::size_t q = t.size();
  const QuestionSet all(t.begin(), t.end());
  EpisodeSet out;
  auto block = [&](std::size_t from, std::size_t to) {
    return AbstractUtterance(t.begin() + static_cast<std::ptrdiff_t>(from),
                             t.begin() + static_cast<std::ptrdiff_t>(to));
  };
  switch (type) {
    case DialogType::I:
      out.insert(Episode{all});
      break;
    case DialogType::C: {
      Episode ep;
      for (const auto& x : t) ep.push_back({x});
      out.insert(ep);
      break;
    }
    case DialogType::PFA: {
      Episode ep{{t[0]}};
      if (q > 1) ep.push_back(block(1, q));
      out.insert(ep);
      break;
    }
    case DialogType::PFA_n:
      for (std::size_t n = 1; n <= q; ++n) {
        Episode ep{block(0, n)};
        if (n < q) ep.push_back(block(n, q));
        out.insert(ep);
      }
      break;
    case DialogType::PFA_n_star:
      // each of the q-1 gaps is either a cut or not
      for (std::size_t cuts = 0; cuts < (std::size_t{1} << (q - 1)); ++cuts) {
        Episode ep;
        std::size_t from = 0;
        for (std::size_t gap = 0; gap + 1 < q; ++gap) {
          if (cuts & (std::size_t{1} << gap)) {
            ep.push_back(block(from, gap + 1));
            from = gap + 1;
          }
        }
        ep.push_back(block(from, q));
        out.insert(ep);
      }
      break;
    case DialogType::SPE:
      for (const auto& x : t) {
        Episode ep{{x}};
        AbstractUtterance rest = all;
        rest.erase(x);
        if (!rest.empty()) ep.push_back(rest);
        out.insert(ep);
      }
      break;
    case DialogType::SPE_prime: {
      std::vector<QuestionId> perm(all.begin(), all.end());
      do {
        Episode ep;
        for (const auto& x : perm) ep.push_back({x});
        out.insert(ep);
      } while (std::next_permutation(perm.begin(), perm.end()));
      break;
    }
    case DialogType::PE: {
      std::vector<QuestionId> v(all.begin(), all.end());
      for (std::size_t mask = 1; mask < (std::size_t{1} << q); ++mask) {
        AbstractUtterance first, rest;
        for (std::size_t i = 0; i < q; ++i) {
          (mask & (std::size_t{1} << i) ? first : rest).insert(v[i]);
        }
        Episode ep{first};
        if (!rest.empty()) ep.push_back(rest);
        out.insert(ep);
      }
      break;
    }
    case DialogType::PE_star: {
      Episode prefix;
      ordered_partitions(std::vector<QuestionId>(all.begin(), all.end()), prefix, out);
      break;
    }
  }
  return out;
}

EpisodeSet episodes_of(const Expr& e);

// The terms answered together in one utterance; every sub-dialog among them
// must itself admit a single-utterance episode.
Episode collapse(const std::vector<const Expr*>& terms) {
  AbstractUtterance merged;
  for (const Expr* t : terms) {
    if (!t->is_leaf()) {
      auto qs = t->questions();
      if (!episodes_of(*t).count(single_utterance(qs)))
        throw DialogError(ErrorKind::collapse_undefined,
                          "sub-dialog " + render_expr(*t) +
                              " cannot be answered in a single utterance");
    }
    for (auto& q : t->leaves()) merged.insert(q);
  }
  if (merged.empty()) return {};
  return Episode{merged};
}

EpisodeSet first_then_rest(const Expr& e, std::size_t first) {
  std::vector<const Expr*> rest;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    if (i != first) rest.push_back(&e.terms[i]);
  }
  const Episode tail = collapse(rest);
  EpisodeSet out;
  for (const auto& head : episodes_of(e.terms[first])) out.insert(concat(head, tail));
  return out;
}

EpisodeSet episodes_of(const Expr& e) {
  if (e.is_leaf()) return {Episode{{e.question}}};
  if (e.subexpression_count() == 0) return atomic_semantics(e.type, e.leaves());

  switch (e.type) {
    case DialogType::C: {
      std::vector<EpisodeSet> parts;
      for (const auto& t : e.terms) parts.push_back(episodes_of(t));
      return product(parts);
    }
    case DialogType::SPE_prime: {
      std::vector<EpisodeSet> parts;
      for (const auto& t : e.terms) parts.push_back(episodes_of(t));
      std::vector<std::size_t> order(parts.size());
      std::iota(order.begin(), order.end(), 0);
      EpisodeSet out;
      do {
        std::vector<EpisodeSet> permuted;
        for (auto i : order) permuted.push_back(parts[i]);
        out.merge(product(permuted));
      } while (std::next_permutation(order.begin(), order.end()));
      return out;
    }
    case DialogType::PFA:
      return first_then_rest(e, 0);
    case DialogType::SPE: {
      EpisodeSet out;
      for (std::size_t i = 0; i < e.terms.size(); ++i) out.merge(first_then_rest(e, i));
      return out;
    }
    default:
      throw DialogError(ErrorKind::nesting, "numerator " + std::string(to_string(e.type)) +
                                                " requires all terms to be questions");
  }
}

}  // namespace

Episode single_utterance(const QuestionSet& questions) { return Episode{questions}; }

EnumeratedSpec enumerate(const Expr& expr) {
  EnumeratedSpec out;
  out.questions = expr.questions();
  out.episodes = episodes_of(expr);
  return out;
}

EnumeratedSpec enumerate_union(const SpecUnion& spec) {
  EnumeratedSpec out;
  out.questions = spec.questions();
  for (const auto& e : spec.exprs) out.episodes.merge(episodes_of(e));
  return out;
}

EnumeratedSpec brute_force_ordered_partitions(const QuestionSet& questions) {
  const std::size_t n = questions.size();
  if (n > 8) throw DialogError(ErrorKind::size_guard, "oracle limited to 8 questions");
  const std::vector<QuestionId> qs(questions.begin(), questions.end());
  EnumeratedSpec out;
  out.questions = questions;
  if (n == 0) return out;
  // odometer over labelings qs[i] -> label[i] in [0, n)
  std::vector<std::size_t> label(n, 0);
  while (true) {
    const std::size_t blocks = *std::max_element(label.begin(), label.end()) + 1;
    std::vector<AbstractUtterance> ep(blocks);
    for (std::size_t i = 0; i < n; ++i) ep[label[i]].insert(qs[i]);
    if (std::none_of(ep.begin(), ep.end(), [](const auto& u) { return u.empty(); }))
      out.episodes.insert(Episode(ep.begin(), ep.end()));
    std::size_t i = 0;
    while (i < n && ++label[i] == n) label[i++] = 0;
    if (i == n) break;
  }
  return out;
}

EpisodeSet continuations(const EpisodeSet& episodes, const Episode& prefix) {
  EpisodeSet out;
  for (auto it = episodes.lower_bound(prefix); it != episodes.end(); ++it) {
    if (it->size() < prefix.size() || !std::equal(prefix.begin(), prefix.end(), it->begin()))
      break;
    out.insert(Episode(it->begin() + static_cast<std::ptrdiff_t>(prefix.size()), it->end()));
  }
  return out;
}

bool has_prefix(const EpisodeSet& episodes, const Episode& prefix) {
  auto it = episodes.lower_bound(prefix);
  return it != episodes.end() && it->size() >= prefix.size() &&
         std::equal(prefix.begin(), prefix.end(), it->begin());
}

}  // namespace dialog
