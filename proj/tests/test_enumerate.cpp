#include <doctest.h>

#include "dialog/combinatorics.hpp"
#include "fixtures.hpp"

using namespace dialog;

namespace {

EpisodeSet en(const char* text) { return enumerate_union(parse_spec(text)).episodes; }

bool subset(const EpisodeSet& a, const EpisodeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_SUITE("enumerate") {
  TEST_CASE("notation table rows") {
    for (const auto& row : fx::notation_rows()) {
      CAPTURE(row.tag);
      const auto got = enumerate(Expr::flat(*parse_type(row.tag), {"size", "blend", "cream"}));
      CHECK(got.episodes == parse_episodes(row.episodes).episodes);
      CHECK(got.episodes.size() == row.count);
    }
  }

  TEST_CASE("single-term expressions coincide") {
    for (DialogType t : kAllTypes) {
      CHECK(enumerate(Expr::flat(t, {"x"})).episodes == EpisodeSet{{{"x"}}});
    }
  }

  TEST_CASE("PE* over four questions has 75 episodes and matches the brute-force oracle") {
    const auto e = enumerate(Expr::flat(DialogType::PE_star, {"a", "b", "c", "d"}));
    CHECK(e.episodes.size() == 75);
    CHECK(e == brute_force_ordered_partitions({"a", "b", "c", "d"}));
  }

  TEST_CASE("brute-force oracle") {
    CHECK(brute_force_ordered_partitions({"a"}).episodes == EpisodeSet{{{"a"}}});
    CHECK(brute_force_ordered_partitions({"a", "b"}).episodes ==
          parse_episodes("((a b) (b a) ((a b)))").episodes);
    CHECK(brute_force_ordered_partitions({"a", "b", "c", "d", "e"}).episodes.size() == 541);
    CHECK_THROWS_AS(brute_force_ordered_partitions({"a", "b", "c", "d", "e", "f", "g", "h", "i"}), DialogError);
  }

  TEST_CASE("PE* equals the oracle up to six questions") {
    for (std::size_t q = 1; q <= 6; ++q) {
      const auto names = fx::question_names(q);
      CHECK(enumerate(Expr::flat(DialogType::PE_star, names)) ==
            brute_force_ordered_partitions({names.begin(), names.end()}));
    }
  }

  TEST_CASE("nested ATM dialog") {
    CHECK(en(R"(("C" PIN ("SPE'" account transaction) amount))") ==
          parse_episodes("((PIN account transaction amount) (PIN transaction account amount))").episodes);
  }

  TEST_CASE("breakfast dialog has 18 episodes") {
    CHECK(en(R"(("SPE'" ("PE*" cream sugar) ("PE*" eggs toast)))").size() == 18);
    const auto& listing = fx::transcripts()[7];
    CHECK(listing.name == "breakfast");
    CHECK(parse_episodes(listing.input).episodes.size() == 18);
    CHECK(en(listing.printed.c_str()) == parse_episodes(listing.input).episodes);
  }

  TEST_CASE("unions") {
    CHECK(en("(\"C\" x y z)(\"C\" y z x)(\"C\" z x y)") ==
          parse_episodes("((x y z) (y z x) (z x y))").episodes);
    CHECK(en("(\"I\" x y z)(\"PFA\" x y z)") == parse_episodes("(((x y z)) (x (y z)))").episodes);
    CHECK(enumerate_union(parse_spec(R"(("SPE" a b c))")) == enumerate(Expr::flat(DialogType::SPE, {"a", "b", "c"})));
  }

  TEST_CASE("collapse semantics for PFA and SPE over sub-dialogs") {
    CHECK(en(R"(("PFA" ("PE*" a b) ("PE*" c d)))") ==
          parse_episodes("((a b (c d)) (b a (c d)) ((a b) (c d)))").episodes);
    CHECK(en(R"(("SPE" ("PE*" a b) ("PE*" c d)))").size() == 6);
    CHECK_THROWS_AS(enumerate(parse_spec(R"(("SPE" ("C" a b) ("PE*" c d)))").exprs[0]), DialogError);
    CHECK_THROWS_AS(enumerate(parse_spec(R"(("PFA" ("PE*" a b) ("C" c d)))").exprs[0]), DialogError);
  }

  TEST_CASE("counts match closed forms for q up to 6") {
    for (unsigned q = 1; q <= 6; ++q) {
      const auto names = fx::question_names(q);
      for (DialogType t : kAllTypes) {
        CAPTURE(q);
        CAPTURE(to_string(t));
        CHECK(BigInt(enumerate(Expr::flat(t, names)).episodes.size()) == episode_count(t, q));
      }
    }
  }

  TEST_CASE("inclusions between types") {
    for (std::size_t q = 3; q <= 5; ++q) {
      const auto names = fx::question_names(q);
      auto of = [&](DialogType t) { return enumerate(Expr::flat(t, names)).episodes; };
      CHECK(subset(of(DialogType::SPE), of(DialogType::PE)));
      CHECK(subset(of(DialogType::PFA), of(DialogType::PFA_n)));
      EpisodeSet low;
      for (DialogType t : {DialogType::I, DialogType::C, DialogType::PFA, DialogType::PFA_n}) {
        const auto s = of(t);
        low.insert(s.begin(), s.end());
      }
      CHECK(subset(low, of(DialogType::PFA_n_star)));
      if (q == 3) CHECK(low == of(DialogType::PFA_n_star));
      else CHECK(low != of(DialogType::PFA_n_star));
      CHECK(subset(of(DialogType::PFA_n_star), of(DialogType::PE_star)));
      CHECK(subset(of(DialogType::SPE_prime), of(DialogType::PE_star)));
      EpisodeSet all;
      for (DialogType t : kAllTypes) {
        if (t == DialogType::PE_star) continue;
        const auto s = of(t);
        all.insert(s.begin(), s.end());
      }
      CHECK(subset(all, of(DialogType::PE_star)));
      // three questions are covered by PE, SPE' and PFA_n*; four are not
      if (q == 3) CHECK(all == of(DialogType::PE_star));
      else CHECK(all != of(DialogType::PE_star));
    }
  }

  TEST_CASE("term order matters for C") {
    CHECK(en(R"(("C" a b c))") != en(R"(("C" b a c))"));
  }

  TEST_CASE("two-question coincidences") {
    CHECK(en(R"(("PFA" a b))") == en(R"(("C" a b))"));
    CHECK(en(R"(("I" a b))") == parse_episodes("(((a b)))").episodes);
    CHECK(en(R"(("I" a b))") != en(R"(("C" a b))"));
  }

  TEST_CASE("continuations and prefixes") {
    const auto all = enumerate(Expr::flat(DialogType::PE_star, {"a", "b", "c"})).episodes;
    const Episode after_b{{"b"}};
    CHECK(has_prefix(all, after_b));
    CHECK(continuations(all, after_b) == enumerate(Expr::flat(DialogType::PE_star, {"a", "c"})).episodes);
    CHECK_FALSE(has_prefix(enumerate(Expr::flat(DialogType::C, {"a", "b", "c"})).episodes, after_b));
    CHECK(has_prefix(all, Episode{}));
  }

  TEST_CASE("every generated union enumerates to a valid spec") {
    for (const auto& u : fx::random_unions(100, 3)) {
      const auto s = enumerate_union(u);
      CHECK_NOTHROW(validate(s));
      CHECK(s.questions == u.questions());
    }
  }
}
