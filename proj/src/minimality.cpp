#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

#include "dialog/enumerate.hpp"
#include "dialog/mine.hpp"

namespace dialog {
namespace {

constexpr std::size_t kMaxQuestions = 4;
constexpr std::size_t kMaxEpisodes = 25;
constexpr std::size_t kMaxUnionSearch = 3;

using Library = std::map<EpisodeSet, Expr>;

void offer(Library& lib, Expr e) {
  EpisodeSet en;
  try {
    validate(e);
    en = enumerate(e).episodes;
  } catch (const DialogError&) {
    return;
  }
  auto it = lib.find(en);
  if (it == lib.end()) {
    lib.emplace(std::move(en), std::move(e));
  } else if (render_expr(e).size() < render_expr(it->second).size()) {
    it->second = std::move(e);
  }
}

class LibraryBuilder {
 public:
  // Terms usable over `qs`: the question itself, or distinct non-leaf expressions.
  const Library& terms(const QuestionSet& qs) {
    if (auto it = memo_.find(qs); it != memo_.end()) return it->second;
    Library lib;
    if (qs.size() == 1) {
      lib.emplace(EpisodeSet{Episode{qs}}, Expr::leaf(*qs.begin()));
      return memo_.emplace(qs, std::move(lib)).first->second;
    }
    std::vector<QuestionId> perm(qs.begin(), qs.end());
    do {
      for (DialogType t : kAllTypes) offer(lib, Expr::flat(t, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));

    // ordered splits into >= 2 blocks, at least one block a sub-dialog
    for (const auto& split : enumerate(Expr::flat(DialogType::PE_star, {qs.begin(), qs.end()})).episodes) {
      if (split.size() < 2 || all_singles(split)) continue;
      std::vector<std::vector<Expr>> options;
      for (const auto& block : split) {
        std::vector<Expr> opts;
        if (block.size() == 1) {
          opts.push_back(Expr::leaf(*block.begin()));
        } else {
          for (const auto& [en, e] : terms(block)) opts.push_back(e);
        }
        options.push_back(std::move(opts));
      }
      std::vector<std::size_t> idx(options.size(), 0);
      while (true) {
        std::vector<Expr> picked;
        for (std::size_t i = 0; i < idx.size(); ++i) picked.push_back(options[i][idx[i]]);
        for (DialogType t : {DialogType::C, DialogType::SPE_prime, DialogType::PFA, DialogType::SPE})
          offer(lib, Expr::node(t, picked));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
    return memo_.emplace(qs, std::move(lib)).first->second;
  }

 private:
  std::map<QuestionSet, Library> memo_;
};

}  // namespace

std::vector<Expr> expression_library(const QuestionSet& questions) {
  if (questions.size() > kMaxQuestions)
    throw DialogError(ErrorKind::size_guard, "expression library limited to 4 questions");
  LibraryBuilder builder;
  std::vector<Expr> out;
  for (const auto& [en, e] : builder.terms(questions)) {
    out.push_back(e.is_leaf() ? Expr::flat(DialogType::C, {e.question}) : e);
  }
  return out;
}

MinimalityReport minimality_report(const EnumeratedSpec& spec, const MineResult& result) {
  if (spec.questions.size() > kMaxQuestions || spec.episodes.size() > kMaxEpisodes)
    throw DialogError(ErrorKind::size_guard,
                      "minimality search limited to 4 questions and 25 episodes");
  MinimalityReport report;
  report.result_size = result.spec.exprs.size();

  const std::vector<Episode> index(spec.episodes.begin(), spec.episodes.end());
  auto bit_of = [&](const Episode& ep) {
    return static_cast<std::size_t>(std::lower_bound(index.begin(), index.end(), ep) - index.begin());
  };
  const std::uint32_t full = (std::uint32_t{1} << index.size()) - 1;

  std::vector<std::pair<std::uint32_t, Expr>> usable;
  for (const auto& e : expression_library(spec.questions)) {
    auto en = enumerate(e).episodes;
    if (!std::includes(spec.episodes.begin(), spec.episodes.end(), en.begin(), en.end())) continue;
    std::uint32_t mask = 0;
    for (const auto& ep : en) mask |= std::uint32_t{1} << bit_of(ep);
    usable.emplace_back(mask, e);
  }
  report.library_size = usable.size();

  const std::size_t limit = std::min(report.result_size - 1, kMaxUnionSearch);
  std::vector<std::size_t> pick;
  // depth-first over increasing index tuples of a fixed size
  auto search = [&](auto&& self, std::size_t size, std::size_t from, std::uint32_t acc) -> bool {
    if (pick.size() == size) return acc == full;
    for (std::size_t i = from; i < usable.size(); ++i) {
      pick.push_back(i);
      if (self(self, size, i + 1, acc | usable[i].first)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (std::size_t size = 1; size <= limit; ++size) {
    pick.clear();
    if (search(search, size, 0, 0)) {
      SpecUnion w;
      for (auto i : pick) w.exprs.push_back(usable[i].second);
      report.witness = std::move(w);
      report.searched_up_to = size;
      report.exhaustive = true;
      return report;
    }
    report.searched_up_to = size;
  }
  report.exhaustive = report.searched_up_to + 1 >= report.result_size;
  report.minimal = report.exhaustive;
  return report;
}

bool known_minimal(const EnumeratedSpec& spec, const MineResult& result) {
  if (result.minimal_claimed) return true;
  if (spec.questions.size() > kMaxQuestions || spec.episodes.size() > kMaxEpisodes) return false;
  return minimality_report(spec, result).minimal;
}

}  // namespace dialog
