#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dialog/core.hpp"
#include "dialog/peval.hpp"

namespace dialog {

enum class StagerMode {
  unrestricted,  // PE* over every question: any utterance over open slots is fine
  guarded,       // prefix membership against the member's episodes
};

struct PlanMember {
  Expr expr;
  StagerMode mode = StagerMode::guarded;
  /// Enumerated once at compile time; null for unrestricted members.
  std::shared_ptr<const EpisodeSet> episodes;

  /// `prefix` can still be extended to a complete episode of this member.
  bool admits(const Episode& prefix) const;
};

/// An acceptor for a specification union plus the script it specializes.
/// Its language of complete utterance sequences is enumerate_union(spec).
class StagerPlan {
 public:
  const SpecUnion& spec() const { return spec_; }
  const Script& script_template() const { return script_; }
  const std::vector<PlanMember>& members() const { return members_; }
  const Domains& domains() const { return domains_; }
  const QuestionSet& questions() const { return questions_; }

 private:
  friend StagerPlan compile_stager(const SpecUnion&, const Domains&, std::string);

  SpecUnion spec_;
  Script script_;
  std::vector<PlanMember> members_;
  Domains domains_;
  QuestionSet questions_;
};

StagerPlan compile_stager(const SpecUnion& spec, const Domains& domains, std::string action);

enum class Outcome { accepted, rejected, completed };

enum class RejectReason {
  out_of_domain,
  already_answered,
  order_violation,
  combination_violation,
  empty_utterance,
  session_completed,
};

std::string_view to_string(Outcome outcome);
std::string_view to_string(RejectReason reason);

struct StepResult {
  Outcome outcome = Outcome::rejected;
  std::optional<RejectReason> reason;
  std::optional<Completion> completion;
  /// Questions that begin some valid continuation after this step.
  QuestionSet prompt;
};

/// One stage of a live dialog. Immutable: step, undo and redo return new
/// states; the undo and redo stacks share structure between states.
class SessionState {
 public:
  struct Snapshot {
    Script script;
    Episode history;
    std::vector<Bindings> turns;
    std::vector<std::size_t> candidates;
    std::optional<Completion> completion;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
  };

  const StagerPlan& plan() const { return *plan_; }
  const std::shared_ptr<const StagerPlan>& shared_plan() const { return plan_; }
  const Script& script() const { return current_.script; }
  const Episode& history() const { return current_.history; }
  const std::vector<Bindings>& turns() const { return current_.turns; }
  const std::vector<std::size_t>& candidates() const { return current_.candidates; }
  const std::optional<Completion>& completion() const { return current_.completion; }
  bool completed() const { return current_.completion.has_value(); }
  QuestionSet answered() const;

  std::size_t undo_depth() const;
  std::size_t redo_depth() const;

  /// Deterministic text of the whole state, stacks included.
  std::string fingerprint() const;

 private:
  struct Node {
    Snapshot snapshot;
    std::shared_ptr<const Node> next;
  };

  friend SessionState start_session(std::shared_ptr<const StagerPlan>);
  friend std::pair<SessionState, StepResult> step(const SessionState&, const Bindings&);
  friend std::optional<SessionState> undo(const SessionState&);
  friend std::optional<SessionState> redo(const SessionState&);

  std::shared_ptr<const StagerPlan> plan_;
  Snapshot current_;
  std::shared_ptr<const Node> undo_;
  std::shared_ptr<const Node> redo_;
};

SessionState start_session(std::shared_ptr<const StagerPlan> plan);
inline SessionState start_session(const StagerPlan& plan) {
  return start_session(std::make_shared<const StagerPlan>(plan));
}

/// Accepts `utterance` iff every value is in its domain and the history
/// extended by its question set is a prefix of some live member's episode.
/// Multi-binding utterances are all-or-nothing. A rejected step returns the
/// input state unchanged.
std::pair<SessionState, StepResult> step(const SessionState& state, const Bindings& utterance);

/// Empty when the respective stack is empty.
std::optional<SessionState> undo(const SessionState& state);
std::optional<SessionState> redo(const SessionState& state);

QuestionSet askable(const SessionState& state);

struct ExcessDeficit {
  EpisodeSet excess;   // staged but not specified
  EpisodeSet deficit;  // specified but not staged
};

ExcessDeficit analyze_excess_deficit(const SpecUnion& candidate, const EnumeratedSpec& target);

}  // namespace dialog
