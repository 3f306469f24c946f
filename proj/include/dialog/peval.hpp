#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dialog/core.hpp"

namespace dialog {

/// question -> response token
using Bindings = std::map<QuestionId, std::string>;

/// What remains when every slot of a script is bound.
struct Completion {
  std::string action;
  Bindings bindings;

  friend bool operator==(const Completion&, const Completion&) = default;
};

/// A residual program held as data: the unanswered slots (in original order)
/// with their response domains, the bindings made so far, and an opaque
/// completion action. Immutable; specialization returns a new script.
class Script {
 public:
  struct Slot {
    QuestionId question;
    ResponseDomain domain;

    friend bool operator==(const Slot&, const Slot&) = default;
  };

  const std::vector<Slot>& slots() const { return slots_; }
  const Bindings& bound() const { return bound_; }
  const std::string& action() const { return action_; }

  bool complete() const { return slots_.empty(); }
  bool has_slot(const QuestionId& q) const;
  const Slot* slot(const QuestionId& q) const;
  QuestionSet open_questions() const;

  friend bool operator==(const Script&, const Script&) = default;

 private:
  friend Script make_script(const std::vector<QuestionId>&, const Domains&, std::string);
  friend struct MixAccess;

  std::vector<Slot> slots_;
  Bindings bound_;
  std::string action_;
};

Script make_script(const std::vector<QuestionId>& questions, const Domains& domains,
                   std::string action);

enum class MixError {
  unknown_slot,       // already answered, or not a question of this script
  domain_violation,   // the value is not a valid choice for the slot
  empty_assignment,
  incomplete_assignment,  // apply_script without a value for every open slot
};

std::string_view to_string(MixError error);

/// Outcome of specializing a script. On error `residual` is the input script,
/// untouched.
struct MixResult {
  std::variant<Script, Completion> value;
  std::optional<MixError> error;
  std::optional<QuestionId> offending;

  bool ok() const { return !error.has_value(); }
  bool completed() const { return ok() && std::holds_alternative<Completion>(value); }
  const Script* residual() const { return std::get_if<Script>(&value); }
  const Completion* completion() const { return std::get_if<Completion>(&value); }
};

/// Partial evaluation of `script` with respect to `assignment`: the result,
/// once given the remaining inputs, behaves as the original given all of them.
MixResult mix(const Script& script, const Bindings& assignment);

/// Complete evaluation; `full` must cover exactly the open slots.
MixResult apply_script(const Script& script, const Bindings& full);

}  // namespace dialog
