#include "dialog/core.hpp"

#include <algorithm>
#include <cctype>

namespace dialog {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::unknown_type: return "unknown-type";
    case ErrorKind::duplicate_question: return "duplicate-question";
    case ErrorKind::nesting: return "nesting";
    case ErrorKind::coverage: return "coverage";
    case ErrorKind::overlap: return "overlap";
    case ErrorKind::empty_domain: return "empty-domain";
    case ErrorKind::duplicate_domain: return "duplicate-domain";
    case ErrorKind::question_mismatch: return "question-mismatch";
    case ErrorKind::size_guard: return "size-guard";
    case ErrorKind::collapse_undefined: return "collapse-undefined";
    case ErrorKind::missing_domain: return "missing-domain";
    case ErrorKind::duplicate_slot: return "duplicate-slot";
    case ErrorKind::not_a_prefix: return "not-a-prefix";
    case ErrorKind::empty_stack: return "empty-stack";
    case ErrorKind::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

std::string_view to_string(DialogType type) {
  switch (type) {
    case DialogType::I: return "I";
    case DialogType::C: return "C";
    case DialogType::PFA: return "PFA";
    case DialogType::PFA_n: return "PFA_n";
    case DialogType::PFA_n_star: return "PFA_n*";
    case DialogType::SPE: return "SPE";
    case DialogType::SPE_prime: return "SPE'";
    case DialogType::PE: return "PE";
    case DialogType::PE_star: return "PE*";
  }
  return "?";
}

std::optional<DialogType> parse_type(std::string_view tag) {
  for (DialogType t : kAllTypes) {
    if (to_string(t) == tag) return t;
  }
  return std::nullopt;
}

bool requires_atomic_terms(DialogType type) {
  switch (type) {
    case DialogType::I:
    case DialogType::PFA_n:
    case DialogType::PFA_n_star:
    case DialogType::PE:
    case DialogType::PE_star:
      return true;
    default:
      return false;
  }
}

bool is_valid_identifier(std::string_view token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || ch == '-' || ch == '_' || ch == '/';
  });
}

Expr Expr::leaf(QuestionId q) {
  Expr e;
  e.question = std::move(q);
  return e;
}

Expr Expr::node(DialogType type, std::vector<Expr> terms) {
  Expr e;
  e.type = type;
  e.terms = std::move(terms);
  return e;
}

Expr Expr::flat(DialogType type, const std::vector<QuestionId>& questions) {
  std::vector<Expr> terms;
  terms.reserve(questions.size());
  for (const auto& q : questions) terms.push_back(leaf(q));
  return node(type, std::move(terms));
}

std::size_t Expr::subexpression_count() const {
  return static_cast<std::size_t>(
      std::count_if(terms.begin(), terms.end(), [](const Expr& t) { return !t.is_leaf(); }));
}

namespace {

void collect_leaves(const Expr& e, std::vector<QuestionId>& out) {
  if (e.is_leaf()) {
    out.push_back(e.question);
    return;
  }
  for (const auto& t : e.terms) collect_leaves(t, out);
}

}  // namespace

std::vector<QuestionId> Expr::leaves() const {
  std::vector<QuestionId> out;
  collect_leaves(*this, out);
  return out;
}

QuestionSet Expr::questions() const {
  auto l = leaves();
  return QuestionSet(l.begin(), l.end());
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.question == b.question;
  return a.type == b.type && a.terms == b.terms;
}

bool operator<(const Expr& a, const Expr& b) {
  return render_expr(a) < render_expr(b);
}

QuestionSet SpecUnion::questions() const {
  return exprs.empty() ? QuestionSet{} : exprs.front().questions();
}

bool ResponseDomain::contains(std::string_view value) const {
  return std::find(allowed.begin(), allowed.end(), value) != allowed.end();
}

namespace {

void validate_node(const Expr& e) {
  if (e.is_leaf()) {
    if (!is_valid_identifier(e.question))
      throw DialogError(ErrorKind::syntax, "invalid question identifier '" + e.question + "'");
    return;
  }
  const auto tag = std::string(to_string(e.type));
  const std::size_t subs = e.subexpression_count();
  if (subs > 0 && requires_atomic_terms(e.type))
    throw DialogError(ErrorKind::nesting,
                      "numerator " + tag + " requires all terms to be questions");
  if (subs >= 2 && (e.type == DialogType::PFA || e.type == DialogType::SPE) &&
      e.terms.size() != 2)
    throw DialogError(ErrorKind::nesting, "numerator " + tag +
                                              " over several sub-dialogs takes exactly two terms");
  for (const auto& t : e.terms) validate_node(t);
}

}  // namespace

void validate(const Expr& expr) {
  if (expr.is_leaf())
    throw DialogError(ErrorKind::syntax, "a specification must be an expression, not a question");
  validate_node(expr);
  auto leaves = expr.leaves();
  std::set<QuestionId> seen;
  for (const auto& q : leaves) {
    if (!seen.insert(q).second)
      throw DialogError(ErrorKind::duplicate_question, "duplicate question '" + q + "'");
  }
}

void validate(const SpecUnion& spec) {
  if (spec.exprs.empty()) throw DialogError(ErrorKind::syntax, "empty specification");
  for (const auto& e : spec.exprs) validate(e);
  const auto qs = spec.exprs.front().questions();
  for (const auto& e : spec.exprs) {
    if (e.questions() != qs)
      throw DialogError(ErrorKind::question_mismatch,
                        "union members range over different question sets");
  }
}

void validate(const EnumeratedSpec& spec) {
  if (spec.episodes.empty()) throw DialogError(ErrorKind::syntax, "no episodes");
  for (const auto& ep : spec.episodes) {
    QuestionSet seen;
    for (const auto& u : ep) {
      if (u.empty()) throw DialogError(ErrorKind::syntax, "empty utterance");
      for (const auto& q : u) {
        if (!seen.insert(q).second)
          throw DialogError(ErrorKind::overlap,
                            "question '" + q + "' answered twice in " + render_episode(ep));
      }
    }
    if (seen != spec.questions)
      throw DialogError(ErrorKind::coverage,
                        "episode " + render_episode(ep) + " does not cover the question set");
  }
}

std::string render_expr(const Expr& expr) {
  if (expr.is_leaf()) return expr.question;
  std::string out = "(\"";
  out += to_string(expr.type);
  out += '"';
  for (const auto& t : expr.terms) {
    out += ' ';
    out += render_expr(t);
  }
  out += ')';
  return out;
}

std::string render_spec(const SpecUnion& spec) {
  std::string out;
  for (const auto& e : spec.exprs) {
    out += render_expr(e);
    out += '\n';
  }
  return out;
}

std::string render_utterance(const AbstractUtterance& utterance) {
  if (utterance.size() == 1) return *utterance.begin();
  std::string out = "(";
  bool first = true;
  for (const auto& q : utterance) {
    if (!first) out += ' ';
    out += q;
    first = false;
  }
  return out + ")";
}

std::string render_episode(const Episode& episode) {
  std::string out = "(";
  for (std::size_t i = 0; i < episode.size(); ++i) {
    if (i) out += ' ';
    out += render_utterance(episode[i]);
  }
  return out + ")";
}

std::vector<Episode> canonical_order(const EpisodeSet& episodes) {
  std::vector<std::pair<std::string, const Episode*>> keyed;
  keyed.reserve(episodes.size());
  for (const auto& ep : episodes) keyed.emplace_back(render_episode(ep), &ep);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Episode> out;
  out.reserve(keyed.size());
  for (const auto& [_, ep] : keyed) out.push_back(*ep);
  return out;
}

std::string render_episodes(const EnumeratedSpec& spec) {
  std::string out = "(";
  bool first = true;
  for (const auto& ep : canonical_order(spec.episodes)) {
    out += first ? "" : "\n ";
    out += render_episode(ep);
    first = false;
  }
  return out + ")\n";
}

QuestionSet covered(const Episode& episode) {
  QuestionSet out;
  for (const auto& u : episode) out.insert(u.begin(), u.end());
  return out;
}

bool all_singles(const Episode& episode) {
  return std::all_of(episode.begin(), episode.end(),
                     [](const AbstractUtterance& u) { return u.size() == 1; });
}

}  // namespace dialog
