// Shared test data: golden episode sets, example dialogs, mining transcripts,
// corpus generators and an exhaustive stager driver.
#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dialog/core.hpp"
#include "dialog/enumerate.hpp"
#include "dialog/parse.hpp"
#include "dialog/stager.hpp"

namespace fx {

using namespace dialog;

inline SpecUnion spec(const std::string& text) { return parse_spec(text); }
inline EnumeratedSpec episodes(const std::string& text) { return parse_episodes(text); }

inline const char* kCoffeeDomains =
    "(domain size (small medium large))\n"
    "(domain blend (mild dark))\n"
    "(domain cream (yes no))\n";

inline const char* kGasSpec = R"(("C" credit-card grade receipt))";
inline const char* kGasDomains =
    "(domain credit-card (visa amex))\n"
    "(domain grade (87 89 93))\n"
    "(domain receipt (yes no))\n";

inline const char* kCoffeeSpec = R"(("PE*" size blend cream))";

// The notation table: each type over (size, blend, cream) and its published
// episode set, transcribed row by row.
struct NotationRow {
  const char* tag;
  const char* episodes;
  std::size_t count;
};

inline const std::vector<NotationRow>& notation_rows() {
  static const std::vector<NotationRow> rows = {
      {"I", "(((size blend cream)))", 1},
      {"C", "((size blend cream))", 1},
      {"PFA", "((size (blend cream)))", 1},
      {"PFA_n", "(((size blend cream)) (size (blend cream)) ((size blend) cream))", 3},
      {"PFA_n*", "(((size blend cream)) (size (blend cream)) ((size blend) cream) (size blend cream))", 4},
      {"SPE", "((size (blend cream)) (blend (size cream)) (cream (size blend)))", 3},
      {"SPE'",
       "((size blend cream) (size cream blend) (blend size cream) (blend cream size)"
       " (cream blend size) (cream size blend))",
       6},
      {"PE",
       "(((size blend cream)) (size (blend cream)) (blend (size cream)) (cream (size blend))"
       " ((size blend) cream) ((size cream) blend) ((blend cream) size))",
       7},
      {"PE*",
       "(((size blend cream)) ((size blend) cream) (cream (size blend)) ((blend cream) size)"
       " (size (blend cream)) ((size cream) blend) (blend (size cream)) (size blend cream)"
       " (size cream blend) (blend size cream) (blend cream size) (cream blend size)"
       " (cream size blend))",
       13},
  };
  return rows;
}

// The six dialogs (a)-(f) of the examples table.
inline const std::vector<std::pair<std::string, std::string>>& example_dialogs() {
  static const std::vector<std::pair<std::string, std::string>> rows = {
      {"a", R"(("C" credit-card grade receipt))"},
      {"b", R"(("C" PIN ("SPE'" transaction account) amount))"},
      {"c", "(\"C\" receipt sandwich beverage dine-in/takeout)\n"
            "(\"C\" dine-in/takeout sandwich beverage receipt)"},
      {"d", R"(("SPE'" ("PE*" cream sugar) ("PE*" eggs toast)))"},
      {"e", R"(("PE*" size blend cream))"},
      {"f", "(\"C\" size (\"SPE\" blend cream))\n"
            "(\"C\" blend (\"SPE\" cream size))\n"
            "(\"C\" cream blend size)"},
  };
  return rows;
}

// Mining transcripts: input episodes and the printed result. `either` holds
// the alternative accepted output for the incompleteness case.
struct Transcript {
  std::string name;
  std::string input;
  std::string printed;
  std::string either;
};

inline const std::vector<Transcript>& transcripts() {
  static const std::vector<Transcript> rows = {
      {"I gas", "(((credit-card grade receipt)))", R"(("I" credit-card grade receipt))", ""},
      {"C gas", "((credit-card grade receipt))", R"(("C" credit-card grade receipt))", ""},
      {"PFA_n* coffee", "((size blend cream) ((size blend) cream) (size (blend cream)) ((size blend cream)))",
       R"(("PFA_n*" size blend cream))", ""},
      {"SPE' coffee",
       "((size blend cream) (size cream blend) (blend size cream) (blend cream size)"
       " (cream size blend) (cream blend size))",
       R"(("SPE'" size blend cream))", ""},
      {"PE* coffee",
       "((size blend cream) (size cream blend) (blend size cream) (blend cream size)"
       " (cream size blend) (cream blend size)"
       " ((size blend) cream) (cream (size blend)) (size (blend cream)) ((blend cream) size)"
       " ((size cream) blend) (blend (size cream)) ((size blend cream)))",
       R"(("PE*" blend cream size))", ""},
      {"nested ATM", "((PIN account transaction amount) (PIN transaction account amount))",
       R"(("C" PIN ("SPE'" account transaction) amount))", ""},
      {"lunch union",
       "((receipt sandwich beverage dine-in/takeout) (dine-in/takeout sandwich beverage receipt))",
       "(\"C\" receipt sandwich beverage dine-in/takeout)\n"
       "(\"C\" dine-in/takeout sandwich beverage receipt)",
       ""},
      {"breakfast",
       "((cream sugar eggs toast) (cream sugar toast eggs) (sugar cream eggs toast)"
       " (sugar cream toast eggs) (eggs toast sugar cream) (eggs toast cream sugar)"
       " (eggs toast (cream sugar)) (toast eggs sugar cream) (toast eggs cream sugar)"
       " (toast eggs (cream sugar)) ((cream sugar) eggs toast) ((cream sugar) toast eggs)"
       " (cream sugar (eggs toast)) (sugar cream (eggs toast)) ((cream sugar) (eggs toast))"
       " ((eggs toast) (cream sugar)) ((eggs toast) cream sugar) ((eggs toast) sugar cream))",
       R"(("SPE'" ("PE*" cream sugar) ("PE*" eggs toast)))", ""},
      {"three-expression union",
       "((size blend cream) (size cream blend) (blend cream size) (cream blend size) (blend size cream))",
       "(\"C\" (\"SPE'\" size blend) cream)\n"
       "(\"C\" size cream blend)\n"
       "(\"C\" (\"SPE'\" blend cream) size)",
       ""},
      {"incompleteness", "((x y z) (y z x))", "(\"C\" x y z)\n(\"C\" y z x)", R"(("SPE'" x ("C" y z)))"},
  };
  return rows;
}

inline std::vector<QuestionId> question_names(std::size_t q) {
  static const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  return {names, names + q};
}

inline Domains two_value_domains(const QuestionSet& qs) {
  Domains d;
  for (const auto& q : qs) d[q] = ResponseDomain{q, {"v0", "v1"}};
  return d;
}

// Every single-type expression over q = 1..4 questions, in every term order,
// one representative per rendered form.
inline std::vector<Expr> single_type_corpus(std::size_t max_q = 4) {
  std::vector<Expr> out;
  std::set<std::string> seen;
  for (std::size_t q = 1; q <= max_q; ++q) {
    auto perm = question_names(q);
    do {
      for (DialogType t : kAllTypes) {
        auto e = Expr::flat(t, perm);
        if (seen.insert(render_expr(e)).second) out.push_back(std::move(e));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

inline std::vector<SpecUnion> example_corpus() {
  std::vector<SpecUnion> out;
  for (const auto& [name, text] : example_dialogs()) out.push_back(spec(text));
  return out;
}

// A random valid expression over `qs` (consumed in shuffled order).
inline Expr random_expr(std::vector<QuestionId> qs, std::mt19937& rng, int depth = 0) {
  if (qs.size() == 1) return Expr::leaf(qs.front());
  std::shuffle(qs.begin(), qs.end(), rng);
  const bool nest = depth < 2 && qs.size() >= 3 && std::uniform_int_distribution<int>(0, 2)(rng) == 0;
  if (!nest) {
    const auto t = kAllTypes[std::uniform_int_distribution<std::size_t>(0, 8)(rng)];
    return Expr::flat(t, qs);
  }
  // split into 2..3 contiguous blocks, at least one holding two questions
  const std::size_t k = std::min<std::size_t>(qs.size() - 1, std::uniform_int_distribution<std::size_t>(2, 3)(rng));
  std::vector<std::size_t> cuts;
  for (std::size_t i = 1; i < qs.size(); ++i) cuts.push_back(i);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(k - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(qs.size());
  std::vector<Expr> terms;
  std::size_t from = 0;
  for (auto to : cuts) {
    terms.push_back(random_expr({qs.begin() + from, qs.begin() + to}, rng, depth + 1));
    from = to;
  }
  static const DialogType any[] = {DialogType::C, DialogType::SPE_prime, DialogType::PFA, DialogType::SPE};
  const auto t = k == 2 ? any[std::uniform_int_distribution<int>(0, 3)(rng)]
                        : any[std::uniform_int_distribution<int>(0, 1)(rng)];
  return Expr::node(t, std::move(terms));
}

// Seeded random unions of 1-3 valid expressions over q <= 4 questions.
inline std::vector<SpecUnion> random_unions(std::size_t count, unsigned seed, std::size_t max_q = 4) {
  std::mt19937 rng(seed);
  std::vector<SpecUnion> out;
  while (out.size() < count) {
    const auto q = std::uniform_int_distribution<std::size_t>(2, max_q)(rng);
    const auto members = std::uniform_int_distribution<int>(1, 3)(rng);
    SpecUnion u;
    try {
      for (int m = 0; m < members; ++m) {
        auto e = random_expr(question_names(q), rng);
        if (e.is_leaf() || std::find(u.exprs.begin(), u.exprs.end(), e) != u.exprs.end()) continue;
        validate(e);
        enumerate(e);  // rejects undefined collapses
        u.exprs.push_back(std::move(e));
      }
      if (u.exprs.empty()) continue;
      validate(u);
    } catch (const DialogError&) {
      continue;
    }
    out.push_back(std::move(u));
  }
  return out;
}

// Non-empty subsets of `qs`, smallest first.
inline std::vector<AbstractUtterance> nonempty_subsets(const QuestionSet& qs) {
  const std::vector<QuestionId> v(qs.begin(), qs.end());
  std::vector<AbstractUtterance> out;
  for (unsigned mask = 1; mask < (1u << v.size()); ++mask) {
    AbstractUtterance u;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask & (1u << i)) u.insert(v[i]);
    out.push_back(std::move(u));
  }
  return out;
}

inline Bindings first_values(const AbstractUtterance& u, const Domains& d) {
  Bindings b;
  for (const auto& q : u) b[q] = d.at(q).allowed.front();
  return b;
}

// Every complete key-sequence the stager accepts, found by trying every
// subset of the open questions at every state.
inline EpisodeSet accepted_traces(const SessionState& start) {
  EpisodeSet out;
  const auto& domains = start.plan().domains();
  std::function<void(const SessionState&)> drive = [&](const SessionState& s) {
    for (const auto& u : nonempty_subsets(s.script().open_questions())) {
      auto [next, result] = step(s, first_values(u, domains));
      if (result.outcome == Outcome::completed) {
        out.insert(next.history());
      } else if (result.outcome == Outcome::accepted) {
        drive(next);
      }
    }
  };
  drive(start);
  return out;
}

}  // namespace fx
