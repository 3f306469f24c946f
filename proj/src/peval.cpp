#include "dialog/peval.hpp"

#include <algorithm>

namespace dialog {

struct MixAccess {
  static Script specialize(const Script& s, const Bindings& assignment) {
    Script out = s;
    out.slots_.erase(std::remove_if(out.slots_.begin(), out.slots_.end(),
                                    [&](const Script::Slot& slot) {
                                      return assignment.count(slot.question) > 0;
                                    }),
                     out.slots_.end());
    for (const auto& [q, v] : assignment) out.bound_[q] = v;
    return out;
  }
};

bool Script::has_slot(const QuestionId& q) const { return slot(q) != nullptr; }

const Script::Slot* Script::slot(const QuestionId& q) const {
  auto it = std::find_if(slots_.begin(), slots_.end(),
                         [&](const Slot& s) { return s.question == q; });
  return it == slots_.end() ? nullptr : &*it;
}

QuestionSet Script::open_questions() const {
  QuestionSet out;
  for (const auto& s : slots_) out.insert(s.question);
  return out;
}

Script make_script(const std::vector<QuestionId>& questions, const Domains& domains,
                   std::string action) {
  if (questions.empty()) throw DialogError(ErrorKind::invalid_argument, "a script needs slots");
  Script s;
  s.action_ = std::move(action);
  QuestionSet seen;
  for (const auto& q : questions) {
    if (!seen.insert(q).second)
      throw DialogError(ErrorKind::duplicate_slot, "duplicate slot '" + q + "'");
    auto it = domains.find(q);
    if (it == domains.end())
      throw DialogError(ErrorKind::missing_domain, "no domain for '" + q + "'");
    if (it->second.allowed.empty())
      throw DialogError(ErrorKind::empty_domain, "empty domain for '" + q + "'");
    s.slots_.push_back({q, it->second});
  }
  return s;
}

std::string_view to_string(MixError error) {
  switch (error) {
    case MixError::unknown_slot: return "unknown-slot";
    case MixError::domain_violation: return "domain-violation";
    case MixError::empty_assignment: return "empty-assignment";
    case MixError::incomplete_assignment: return "incomplete-assignment";
  }
  return "?";
}

namespace {

MixResult failure(const Script& s, MixError e, std::optional<QuestionId> q = std::nullopt) {
  return MixResult{s, e, std::move(q)};
}

}  // namespace

MixResult mix(const Script& script, const Bindings& assignment) {
  if (assignment.empty()) return failure(script, MixError::empty_assignment);
  for (const auto& [q, v] : assignment) {
    const auto* slot = script.slot(q);
    if (!slot) return failure(script, MixError::unknown_slot, q);
    if (!slot->domain.contains(v)) return failure(script, MixError::domain_violation, q);
  }
  auto residual = MixAccess::specialize(script, assignment);
  if (residual.complete()) return MixResult{Completion{residual.action(), residual.bound()}, {}, {}};
  return MixResult{std::move(residual), {}, {}};
}

MixResult apply_script(const Script& script, const Bindings& full) {
  if (script.complete()) return failure(script, MixError::unknown_slot);
  for (const auto& s : script.slots()) {
    if (!full.count(s.question)) return failure(script, MixError::incomplete_assignment, s.question);
  }
  return mix(script, full);
}

}  // namespace dialog
