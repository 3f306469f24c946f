#include <doctest.h>

#include <random>

#include "dialog/stager.hpp"
#include "fixtures.hpp"

using namespace dialog;

namespace {

SessionState session(const char* spec_text, const char* domains_text) {
  return start_session(compile_stager(parse_spec(spec_text), parse_domains(domains_text), "done"));
}

const char* kAtmDomains =
    "(domain PIN (1234 9999)) (domain transaction (deposit withdrawal))"
    "(domain account (checking savings)) (domain amount (20 40))";

const char* kBreakfastDomains =
    "(domain cream (yes no)) (domain sugar (yes no)) (domain eggs (scrambled fried)) (domain toast (white rye))";

RejectReason reason_of(const SessionState& s, const Bindings& b) {
  auto [next, result] = step(s, b);
  REQUIRE(result.outcome == Outcome::rejected);
  CHECK(next.fingerprint() == s.fingerprint());
  return *result.reason;
}

SessionState accept(const SessionState& s, const Bindings& b) {
  auto [next, result] = step(s, b);
  REQUIRE(result.outcome != Outcome::rejected);
  return next;
}

}  // namespace

TEST_SUITE("stager") {
  TEST_CASE("compile_stager picks modes") {
    const auto coffee = compile_stager(parse_spec(fx::kCoffeeSpec), parse_domains(fx::kCoffeeDomains), "go");
    REQUIRE(coffee.members().size() == 1);
    CHECK(coffee.members()[0].mode == StagerMode::unrestricted);

    const auto gas = compile_stager(parse_spec(fx::kGasSpec), parse_domains(fx::kGasDomains), "go");
    CHECK(gas.members()[0].mode == StagerMode::guarded);

    Domains lunch_domains;
    for (const auto& q : {"receipt", "sandwich", "beverage", "dine-in/takeout"}) lunch_domains[q] = ResponseDomain{q, {"x"}};
    const auto lunch = compile_stager(fx::example_corpus()[2], lunch_domains, "go");
    CHECK(lunch.members().size() == 2);
    CHECK(lunch.members()[1].mode == StagerMode::guarded);

    CHECK_THROWS_AS(compile_stager(parse_spec(fx::kGasSpec), parse_domains(fx::kCoffeeDomains), "go"), DialogError);
  }

  TEST_CASE("initial prompts") {
    CHECK(askable(session(fx::kCoffeeSpec, fx::kCoffeeDomains)) == QuestionSet{"size", "blend", "cream"});
    CHECK(askable(session(fx::kGasSpec, fx::kGasDomains)) == QuestionSet{"credit-card"});
    CHECK(askable(session(fx::example_dialogs()[1].second.c_str(), kAtmDomains)) == QuestionSet{"PIN"});
  }

  TEST_CASE("coffee: two answers in one utterance") {
    const auto s = session(fx::kCoffeeSpec, fx::kCoffeeDomains);
    auto [next, result] = step(s, {{"size", "small"}, {"blend", "dark"}});
    CHECK(result.outcome == Outcome::accepted);
    CHECK(result.prompt == QuestionSet{"cream"});
    auto [done, last] = step(next, {{"cream", "no"}});
    CHECK(last.outcome == Outcome::completed);
    REQUIRE(last.completion.has_value());
    CHECK(last.completion->bindings.size() == 3);
    CHECK(askable(done).empty());
    CHECK(reason_of(done, {{"cream", "yes"}}) == RejectReason::session_completed);
  }

  TEST_CASE("gas: answering out of order is an order violation") {
    const auto s = session(fx::kGasSpec, fx::kGasDomains);
    CHECK(reason_of(s, {{"grade", "87"}}) == RejectReason::order_violation);
  }

  TEST_CASE("PE: a second singleton is a combination violation") {
    const auto s = accept(session(R"(("PE" size blend cream))", fx::kCoffeeDomains), {{"size", "small"}});
    CHECK(reason_of(s, {{"blend", "mild"}}) == RejectReason::combination_violation);
    CHECK(step(s, {{"blend", "mild"}, {"cream", "no"}}).second.outcome == Outcome::completed);
  }

  TEST_CASE("breakfast: sub-dialog answers cannot interleave") {
    const auto s = accept(session(fx::example_dialogs()[3].second.c_str(), kBreakfastDomains), {{"cream", "yes"}});
    CHECK(reason_of(s, {{"eggs", "scrambled"}}) == RejectReason::order_violation);
    CHECK(askable(s) == QuestionSet{"sugar"});
  }

  TEST_CASE("other rejections") {
    const auto s = session(fx::kCoffeeSpec, fx::kCoffeeDomains);
    CHECK(reason_of(s, {{"size", "venti"}}) == RejectReason::out_of_domain);
    CHECK(reason_of(s, {{"sugar", "yes"}}) == RejectReason::out_of_domain);
    CHECK(reason_of(s, {}) == RejectReason::empty_utterance);
    const auto t = accept(s, {{"size", "small"}});
    CHECK(reason_of(t, {{"size", "large"}}) == RejectReason::already_answered);
    CHECK(reason_of(t, {{"size", "large"}, {"cream", "no"}}) == RejectReason::already_answered);
  }

  TEST_CASE("ATM prompts") {
    auto s = accept(session(fx::example_dialogs()[1].second.c_str(), kAtmDomains), {{"PIN", "1234"}});
    CHECK(askable(s) == QuestionSet{"transaction", "account"});
    s = accept(s, {{"transaction", "deposit"}});
    CHECK(askable(s) == QuestionSet{"account"});
  }

  TEST_CASE("undo and redo") {
    const auto fresh = session(fx::kCoffeeSpec, fx::kCoffeeDomains);
    CHECK_FALSE(undo(fresh).has_value());
    CHECK_FALSE(redo(fresh).has_value());

    const auto one = accept(fresh, {{"size", "small"}});
    const auto back = undo(one);
    REQUIRE(back);
    CHECK(askable(*back) == QuestionSet{"size", "blend", "cream"});
    CHECK(back->redo_depth() == 1);
    const auto again = redo(*back);
    REQUIRE(again);
    CHECK(again->fingerprint() == one.fingerprint());
    CHECK(undo(*again)->fingerprint() == back->fingerprint());

    // a new step clears the redo stack
    const auto branch = accept(*back, {{"blend", "dark"}});
    CHECK(branch.redo_depth() == 0);
  }

  TEST_CASE("undo after completion reopens the session") {
    auto s = session(fx::kGasSpec, fx::kGasDomains);
    s = accept(s, {{"credit-card", "visa"}});
    s = accept(s, {{"grade", "89"}});
    s = accept(s, {{"receipt", "no"}});
    CHECK(s.completed());
    const auto back = undo(s);
    REQUIRE(back);
    CHECK_FALSE(back->completed());
    CHECK(askable(*back) == QuestionSet{"receipt"});
  }

  TEST_CASE("script slots track history coverage") {
    auto s = session(fx::example_dialogs()[5].second.c_str(), fx::kCoffeeDomains);
    s = accept(s, {{"blend", "mild"}});
    CHECK(s.script().open_questions() == QuestionSet{"size", "cream"});
    CHECK(s.candidates().size() == 1);
  }

  TEST_CASE("accepted traces equal the specification") {
    for (const auto& u : fx::example_corpus()) {
      const auto plan = compile_stager(u, fx::two_value_domains(u.questions()), "go");
      CHECK(fx::accepted_traces(start_session(plan)) == enumerate_union(u).episodes);
    }
    for (const auto& u : fx::random_unions(15, 4)) {
      const auto plan = compile_stager(u, fx::two_value_domains(u.questions()), "go");
      CHECK(fx::accepted_traces(start_session(plan)) == enumerate_union(u).episodes);
    }
  }

  TEST_CASE("unrestricted plans accept any utterance over open questions") {
    const auto u = parse_spec(R"(("PE*" a b c d))");
    const auto start = start_session(compile_stager(u, fx::two_value_domains(u.questions()), "go"));
    std::mt19937 rng(5);
    for (int run = 0; run < 50; ++run) {
      auto s = start;
      while (!s.completed()) {
        const auto subsets = fx::nonempty_subsets(s.script().open_questions());
        const auto& pick = subsets[std::uniform_int_distribution<std::size_t>(0, subsets.size() - 1)(rng)];
        auto [next, result] = step(s, fx::first_values(pick, s.plan().domains()));
        REQUIRE(result.outcome != Outcome::rejected);
        s = next;
      }
    }
  }

  TEST_CASE("prompt soundness") {
    for (const auto& u : fx::example_corpus()) {
      const auto start = start_session(compile_stager(u, fx::two_value_domains(u.questions()), "go"));
      std::function<void(const SessionState&)> visit = [&](const SessionState& s) {
        const auto prompt = askable(s);
        for (const auto& sub : fx::nonempty_subsets(s.script().open_questions())) {
          auto [next, result] = step(s, fx::first_values(sub, s.plan().domains()));
          if (result.outcome == Outcome::rejected) continue;
          const bool meets = std::any_of(sub.begin(), sub.end(), [&](const QuestionId& q) { return prompt.count(q) > 0; });
          CHECK(meets);
          if (result.outcome == Outcome::accepted) visit(next);
        }
        for (const auto& q : prompt) {
          // some accepted utterance holds q
          bool found = false;
          for (const auto& sub : fx::nonempty_subsets(s.script().open_questions())) {
            if (!sub.count(q)) continue;
            if (step(s, fx::first_values(sub, s.plan().domains())).second.outcome != Outcome::rejected) found = true;
          }
          CHECK(found);
        }
      };
      visit(start);
    }
  }

  TEST_CASE("excess and deficit") {
    const auto pe = parse_spec(R"(("PE*" a b c))");
    const auto c = parse_spec(R"(("C" a b c))");
    auto d = analyze_excess_deficit(pe, enumerate_union(c));
    CHECK(d.excess.size() == 12);
    CHECK(d.deficit.empty());
    d = analyze_excess_deficit(c, enumerate_union(pe));
    CHECK(d.excess.empty());
    CHECK(d.deficit.size() == 12);
    d = analyze_excess_deficit(pe, enumerate_union(pe));
    CHECK(d.excess.empty());
    CHECK(d.deficit.empty());
    CHECK_THROWS_AS(analyze_excess_deficit(pe, enumerate_union(parse_spec(R"(("C" a b))"))), DialogError);
  }
}
