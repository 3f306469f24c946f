#include "dialog/stager.hpp"

#include <algorithm>

#include "dialog/enumerate.hpp"
#include "dialog/rewrite.hpp"

namespace dialog {

bool PlanMember::admits(const Episode& prefix) const {
  if (mode == StagerMode::unrestricted) return true;
  return has_prefix(*episodes, prefix);
}

StagerPlan compile_stager(const SpecUnion& spec, const Domains& domains, std::string action) {
  validate(spec);
  StagerPlan plan;
  plan.spec_ = normalize(spec);
  plan.questions_ = spec.questions();
  for (const auto& q : plan.questions_) {
    auto it = domains.find(q);
    if (it == domains.end())
      throw DialogError(ErrorKind::missing_domain, "no domain for question '" + q + "'");
    plan.domains_.emplace(q, it->second);
  }
  plan.script_ = make_script(plan.spec_.exprs.front().leaves(), plan.domains_, std::move(action));
  for (const auto& e : plan.spec_.exprs) {
    PlanMember m;
    m.expr = e;
    if (e.type == DialogType::PE_star && e.subexpression_count() == 0) {
      m.mode = StagerMode::unrestricted;
    } else {
      m.episodes = std::make_shared<const EpisodeSet>(enumerate(e).episodes);
    }
    plan.members_.push_back(std::move(m));
  }
  return plan;
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::accepted: return "accepted";
    case Outcome::rejected: return "rejected";
    case Outcome::completed: return "completed";
  }
  return "?";
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::out_of_domain: return "out-of-domain";
    case RejectReason::already_answered: return "already-answered";
    case RejectReason::order_violation: return "order-violation";
    case RejectReason::combination_violation: return "combination-violation";
    case RejectReason::empty_utterance: return "empty-utterance";
    case RejectReason::session_completed: return "session-completed";
  }
  return "?";
}

QuestionSet SessionState::answered() const { return covered(current_.history); }

std::size_t SessionState::undo_depth() const {
  std::size_t n = 0;
  for (auto p = undo_; p; p = p->next) ++n;
  return n;
}

std::size_t SessionState::redo_depth() const {
  std::size_t n = 0;
  for (auto p = redo_; p; p = p->next) ++n;
  return n;
}

namespace {

void write_snapshot(std::string& out, const SessionState::Snapshot& s) {
  out += "history=" + render_episode(s.history) + ";turns=";
  for (const auto& t : s.turns) {
    out += '{';
    for (const auto& [q, v] : t) out += q + "=" + v + ",";
    out += '}';
  }
  out += ";candidates=";
  for (auto c : s.candidates) out += std::to_string(c) + ",";
  out += ";slots=";
  for (const auto& slot : s.script.slots()) out += slot.question + ",";
  out += ";bound=";
  for (const auto& [q, v] : s.script.bound()) out += q + "=" + v + ",";
  if (s.completion) {
    out += ";completion=" + s.completion->action + ":";
    for (const auto& [q, v] : s.completion->bindings) out += q + "=" + v + ",";
  }
}

}  // namespace

std::string SessionState::fingerprint() const {
  std::string out = "current[";
  write_snapshot(out, current_);
  out += "]";
  for (auto p = undo_; p; p = p->next) {
    out += "undo[";
    write_snapshot(out, p->snapshot);
    out += "]";
  }
  for (auto p = redo_; p; p = p->next) {
    out += "redo[";
    write_snapshot(out, p->snapshot);
    out += "]";
  }
  return out;
}

SessionState start_session(std::shared_ptr<const StagerPlan> plan) {
  SessionState s;
  s.current_.script = plan->script_template();
  s.current_.candidates.resize(plan->members().size());
  for (std::size_t i = 0; i < s.current_.candidates.size(); ++i) s.current_.candidates[i] = i;
  s.plan_ = std::move(plan);
  return s;
}

QuestionSet askable(const SessionState& state) {
  QuestionSet out;
  if (state.completed()) return out;
  const auto& history = state.history();
  for (auto idx : state.candidates()) {
    const auto& m = state.plan().members()[idx];
    if (m.mode == StagerMode::unrestricted) return state.script().open_questions();
    for (auto it = m.episodes->lower_bound(history); it != m.episodes->end(); ++it) {
      if (it->size() <= history.size() ||
          !std::equal(history.begin(), history.end(), it->begin()))
        break;
      const auto& next = (*it)[history.size()];
      out.insert(next.begin(), next.end());
    }
  }
  return out;
}

std::pair<SessionState, StepResult> step(const SessionState& state, const Bindings& utterance) {
  auto reject = [&](RejectReason r) {
    StepResult res;
    res.outcome = Outcome::rejected;
    res.reason = r;
    res.prompt = askable(state);
    return std::make_pair(state, res);
  };
  if (state.completed()) return reject(RejectReason::session_completed);
  if (utterance.empty()) return reject(RejectReason::empty_utterance);

  const auto answered = state.answered();
  const auto& plan = state.plan();
  for (const auto& [q, v] : utterance) {
    if (!plan.questions().count(q)) return reject(RejectReason::out_of_domain);
    if (answered.count(q)) return reject(RejectReason::already_answered);
    if (!plan.domains().at(q).contains(v)) return reject(RejectReason::out_of_domain);
  }

  AbstractUtterance keys;
  for (const auto& [q, v] : utterance) keys.insert(q);
  Episode next = state.history();
  next.push_back(keys);

  std::vector<std::size_t> live;
  for (auto idx : state.candidates()) {
    if (plan.members()[idx].admits(next)) live.push_back(idx);
  }
  if (live.empty()) {
    const auto prompt = askable(state);
    const bool each_askable = std::includes(prompt.begin(), prompt.end(), keys.begin(), keys.end());
    return reject(each_askable ? RejectReason::combination_violation
                               : RejectReason::order_violation);
  }

  auto mixed = mix(state.script(), utterance);
  if (!mixed.ok()) return reject(RejectReason::out_of_domain);

  SessionState out = state;
  out.undo_ = std::make_shared<const SessionState::Node>(SessionState::Node{state.current_, state.undo_});
  out.redo_.reset();
  out.current_.history = std::move(next);
  out.current_.turns.push_back(utterance);
  out.current_.candidates = std::move(live);
  StepResult res;
  if (const auto* c = mixed.completion()) {
    out.current_.completion = *c;
    res.outcome = Outcome::completed;
    res.completion = *c;
  } else {
    out.current_.script = *mixed.residual();
    res.outcome = Outcome::accepted;
  }
  res.prompt = askable(out);
  return {std::move(out), std::move(res)};
}

std::optional<SessionState> undo(const SessionState& state) {
  if (!state.undo_) return std::nullopt;
  SessionState out = state;
  out.redo_ = std::make_shared<const SessionState::Node>(SessionState::Node{state.current_, state.redo_});
  out.current_ = state.undo_->snapshot;
  out.undo_ = state.undo_->next;
  return out;
}

std::optional<SessionState> redo(const SessionState& state) {
  if (!state.redo_) return std::nullopt;
  SessionState out = state;
  out.undo_ = std::make_shared<const SessionState::Node>(SessionState::Node{state.current_, state.undo_});
  out.current_ = state.redo_->snapshot;
  out.redo_ = state.redo_->next;
  return out;
}

ExcessDeficit analyze_excess_deficit(const SpecUnion& candidate, const EnumeratedSpec& target) {
  if (candidate.questions() != target.questions)
    throw DialogError(ErrorKind::question_mismatch,
                      "candidate and target range over different question sets");
  const auto staged = enumerate_union(candidate).episodes;
  ExcessDeficit out;
  std::set_difference(staged.begin(), staged.end(), target.episodes.begin(), target.episodes.end(),
                      std::inserter(out.excess, out.excess.end()));
  std::set_difference(target.episodes.begin(), target.episodes.end(), staged.begin(), staged.end(),
                      std::inserter(out.deficit, out.deficit.end()));
  return out;
}

}  // namespace dialog
