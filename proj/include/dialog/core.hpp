#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dialog {

/// A question posed by a dialog. Compared case-sensitively, never normalized.
using QuestionId = std::string;
using QuestionSet = std::set<QuestionId>;

/// The questions answered together in one user turn.
using AbstractUtterance = std::set<QuestionId>;

/// One complete path through a dialog: disjoint utterances covering every question.
using Episode = std::vector<AbstractUtterance>;
using EpisodeSet = std::set<Episode>;

enum class ErrorKind {
  syntax,
  unknown_type,
  duplicate_question,
  nesting,
  coverage,
  overlap,
  empty_domain,
  duplicate_domain,
  question_mismatch,
  size_guard,
  collapse_undefined,
  missing_domain,
  duplicate_slot,
  not_a_prefix,
  empty_stack,
  invalid_argument,
};

std::string_view to_string(ErrorKind kind);

class DialogError : public std::runtime_error {
 public:
  DialogError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the text-format parsers; `offset` is a byte offset into the input.
class ParseError : public DialogError {
 public:
  ParseError(ErrorKind kind, const std::string& what, std::size_t offset,
             std::size_t line, std::size_t column)
      : DialogError(kind, what), offset_(offset), line_(line), column_(column) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

/// The nine numerator constructors of the notation.
enum class DialogType { I, C, PFA, PFA_n, PFA_n_star, SPE, SPE_prime, PE, PE_star };

inline constexpr DialogType kAllTypes[] = {
    DialogType::I,   DialogType::C,         DialogType::PFA,
    DialogType::PFA_n, DialogType::PFA_n_star, DialogType::SPE,
    DialogType::SPE_prime, DialogType::PE,  DialogType::PE_star,
};

/// File spelling: `I`, `C`, `PFA`, `PFA_n`, `PFA_n*`, `SPE`, `SPE'`, `PE`, `PE*`.
std::string_view to_string(DialogType type);
std::optional<DialogType> parse_type(std::string_view tag);

/// Types whose every utterance may carry several responses and which therefore
/// only accept atomic terms.
bool requires_atomic_terms(DialogType type);

bool is_valid_identifier(std::string_view token);

/// A node of the notation: either a question (leaf) or a numerator over an
/// ordered, non-empty list of terms.
struct Expr {
  DialogType type = DialogType::C;
  QuestionId question;      // set iff leaf
  std::vector<Expr> terms;  // empty iff leaf

  static Expr leaf(QuestionId q);
  static Expr node(DialogType type, std::vector<Expr> terms);
  static Expr flat(DialogType type, const std::vector<QuestionId>& questions);

  bool is_leaf() const { return terms.empty(); }
  std::size_t subexpression_count() const;

  /// Leaf questions in left-to-right order.
  std::vector<QuestionId> leaves() const;
  QuestionSet questions() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator<(const Expr& a, const Expr& b);
};

/// A specification as a union of expressions over one question set. An empty
/// union only arises as the residual of a completed dialog.
struct SpecUnion {
  std::vector<Expr> exprs;

  QuestionSet questions() const;
  bool empty() const { return exprs.empty(); }

  friend bool operator==(const SpecUnion&, const SpecUnion&) = default;
};

struct EnumeratedSpec {
  QuestionSet questions;
  EpisodeSet episodes;

  friend bool operator==(const EnumeratedSpec&, const EnumeratedSpec&) = default;
};

struct ResponseDomain {
  QuestionId question;
  std::vector<std::string> allowed;

  bool contains(std::string_view value) const;

  friend bool operator==(const ResponseDomain&, const ResponseDomain&) = default;
};

using Domains = std::map<QuestionId, ResponseDomain>;

/// Checks the structural invariants (distinct leaves, nesting rules). Throws
/// DialogError naming the offending numerator.
void validate(const Expr& expr);
/// Validates every member and that all members share one question set.
void validate(const SpecUnion& spec);
/// Episodes cover `questions` exactly with pairwise-disjoint utterances.
void validate(const EnumeratedSpec& spec);

// Canonical printing. Utterance members print alphabetically.
std::string render_expr(const Expr& expr);
std::string render_spec(const SpecUnion& spec);
std::string render_utterance(const AbstractUtterance& utterance);
std::string render_episode(const Episode& episode);
std::string render_episodes(const EnumeratedSpec& spec);

/// Episodes sorted by rendered form, the order the CLI prints them in.
std::vector<Episode> canonical_order(const EpisodeSet& episodes);

QuestionSet covered(const Episode& episode);
bool all_singles(const Episode& episode);

}  // namespace dialog
