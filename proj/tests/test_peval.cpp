#include <doctest.h>

#include "dialog/peval.hpp"
#include "fixtures.hpp"

using namespace dialog;

namespace {

Script coffee() {
  return make_script({"size", "blend", "cream"}, parse_domains(fx::kCoffeeDomains), "retrieve-item");
}

}  // namespace

TEST_SUITE("peval") {
  TEST_CASE("make_script") {
    const auto f = coffee();
    CHECK(f.slots().size() == 3);
    CHECK(f.bound().empty());
    CHECK(f.action() == "retrieve-item");
    const auto one = make_script({"PIN"}, {{"PIN", ResponseDomain{"PIN", {"1234"}}}}, "dispense");
    CHECK(one.slots().size() == 1);
    CHECK_THROWS_AS(make_script({"a", "a"}, {{"a", ResponseDomain{"a", {"x"}}}}, "x"), DialogError);
    CHECK_THROWS_AS(make_script({"a"}, {}, "x"), DialogError);
    CHECK_THROWS_AS(make_script({}, {}, "x"), DialogError);
  }

  TEST_CASE("mix leaves a residual over the remaining slots") {
    const auto r = mix(coffee(), {{"size", "small"}});
    REQUIRE(r.residual());
    std::vector<QuestionId> left;
    for (const auto& s : r.residual()->slots()) left.push_back(s.question);
    CHECK(left == std::vector<QuestionId>{"blend", "cream"});
    CHECK(r.residual()->bound().at("size") == "small");
  }

  TEST_CASE("mix chains to a completion") {
    const auto a = mix(coffee(), {{"blend", "dark"}});
    const auto b = mix(*a.residual(), {{"size", "large"}});
    const auto c = mix(*b.residual(), {{"cream", "yes"}});
    REQUIRE(c.completed());
    CHECK(c.completion()->action == "retrieve-item");
    CHECK(c.completion()->bindings == Bindings{{"blend", "dark"}, {"size", "large"}, {"cream", "yes"}});

    const auto once = mix(coffee(), {{"size", "small"}, {"blend", "mild"}, {"cream", "no"}});
    CHECK(once.completed());
  }

  TEST_CASE("mix errors leave the script unchanged") {
    const auto f = coffee();
    const auto bad = mix(f, {{"size", "venti"}});
    CHECK(bad.error == MixError::domain_violation);
    CHECK(bad.offending == "size");
    CHECK(*bad.residual() == f);

    const auto answered = mix(*mix(f, {{"size", "small"}}).residual(), {{"size", "large"}});
    CHECK(answered.error == MixError::unknown_slot);
    CHECK(mix(f, {{"sugar", "yes"}}).error == MixError::unknown_slot);
    CHECK(mix(f, {}).error == MixError::empty_assignment);
  }

  TEST_CASE("apply_script") {
    const auto f = coffee();
    CHECK(apply_script(f, {{"size", "small"}, {"blend", "mild"}, {"cream", "no"}}).completed());
    CHECK(apply_script(f, {{"size", "small"}, {"blend", "mild"}}).error == MixError::incomplete_assignment);
    const auto done = mix(f, {{"size", "small"}, {"blend", "mild"}, {"cream", "no"}});
    CHECK(done.completed());
  }

  TEST_CASE("mix never mutates its input") {
    const auto f = coffee();
    const auto copy = f;
    mix(f, {{"size", "small"}});
    mix(f, {{"size", "small"}, {"blend", "dark"}, {"cream", "no"}});
    CHECK(f == copy);
  }

  TEST_CASE("mix identity over every ordered split, four slots") {
    Domains d;
    for (const auto& q : fx::question_names(4)) d[q] = ResponseDomain{q, {"x", "y", "z"}};
    const auto f = make_script(fx::question_names(4), d, "go");
    const auto orders = brute_force_ordered_partitions({"a", "b", "c", "d"});
    // a handful of value assignments, every utterance sequence
    for (int variant = 0; variant < 3; ++variant) {
      Bindings full;
      int i = variant;
      for (const auto& q : fx::question_names(4)) full[q] = d[q].allowed[(i++) % 3];
      const auto reference = apply_script(f, full);
      REQUIRE(reference.completed());
      for (const auto& ep : orders.episodes) {
        Script s = f;
        std::optional<Completion> done;
        for (const auto& u : ep) {
          Bindings part;
          for (const auto& q : u) part[q] = full.at(q);
          const auto r = mix(s, part);
          REQUIRE(r.ok());
          if (r.completed()) done = *r.completion();
          else s = *r.residual();
        }
        REQUIRE(done.has_value());
        CHECK(*done == *reference.completion());
      }
    }
  }

  TEST_CASE("residuals commute") {
    const auto f = coffee();
    const Bindings a{{"size", "small"}}, b{{"cream", "no"}};
    const auto ab = mix(*mix(f, a).residual(), b);
    const auto ba = mix(*mix(f, b).residual(), a);
    CHECK(ab.residual()->open_questions() == ba.residual()->open_questions());
    CHECK(ab.residual()->bound() == ba.residual()->bound());
  }
}
