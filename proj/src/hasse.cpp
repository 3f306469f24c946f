#include "dialog/hasse.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dialog/enumerate.hpp"

namespace dialog {
namespace {

bool disjoint(const AbstractUtterance& a, const AbstractUtterance& b) {
  return std::none_of(a.begin(), a.end(), [&](const QuestionId& q) { return b.count(q) > 0; });
}

// before[i][j]: i precedes j wherever both occur, and they co-occur somewhere
std::vector<std::vector<bool>> strict_order(const std::vector<AbstractUtterance>& elements,
                                            const EpisodeSet& episodes) {
  const std::size_t n = elements.size();
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  std::vector<std::vector<bool>> broken(n, std::vector<bool>(n, false));
  std::map<AbstractUtterance, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[elements[i]] = i;
  for (const auto& ep : episodes) {
    for (std::size_t a = 0; a < ep.size(); ++a) {
      for (std::size_t b = a + 1; b < ep.size(); ++b) {
        const auto i = index.at(ep[a]), j = index.at(ep[b]);
        seen[i][j] = true;
        broken[j][i] = true;
      }
    }
  }
  std::vector<std::vector<bool>> before(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) before[i][j] = seen[i][j] && !broken[i][j];
  return before;
}

std::string label(const AbstractUtterance& u) {
  if (u.size() == 1) return *u.begin();
  std::string out = "(";
  for (const auto& q : u) {
    if (out.size() > 1) out += ' ';
    out += q;
  }
  return out + ")";
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void write_poset(std::ostream& out, const Poset& p, const std::string& prefix,
                 const std::string& indent) {
  for (std::size_t i = 0; i < p.elements.size(); ++i)
    out << indent << prefix << i << " [label=" << quoted(label(p.elements[i])) << "];\n";
  for (const auto& [lo, hi] : p.covers)
    out << indent << prefix << lo << " -> " << prefix << hi << ";\n";
}

}  // namespace

Poset poset_of(const EpisodeSet& episodes) {
  std::set<AbstractUtterance> distinct;
  for (const auto& ep : episodes) distinct.insert(ep.begin(), ep.end());
  Poset p;
  p.elements.assign(distinct.begin(), distinct.end());
  std::sort(p.elements.begin(), p.elements.end(),
            [](const AbstractUtterance& a, const AbstractUtterance& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  const auto before = strict_order(p.elements, episodes);
  const std::size_t n = p.elements.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!before[i][j]) continue;
      bool covered_by_middle = false;
      for (std::size_t k = 0; k < n && !covered_by_middle; ++k)
        covered_by_middle = before[i][k] && before[k][j];
      if (!covered_by_middle) p.covers.emplace(i, j);
    }
  }
  return p;
}

EpisodeSet episodes_of(const Poset& poset, const QuestionSet& questions) {
  EpisodeSet out;
  const std::size_t n = poset.elements.size();
  // order closure from the covering pairs
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (const auto& [lo, hi] : poset.covers) below[lo][hi] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (below[i][k] && below[k][j]) below[i][j] = true;

  std::vector<std::size_t> chosen;
  QuestionSet used;
  auto extend = [&](auto&& self) -> void {
    if (used.size() == questions.size()) {
      Episode ep;
      for (auto i : chosen) ep.push_back(poset.elements[i]);
      out.insert(std::move(ep));
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& u = poset.elements[i];
      if (!disjoint(u, used)) continue;
      bool ok = true;
      for (auto c : chosen) ok = ok && !below[i][c];
      if (!ok) continue;
      chosen.push_back(i);
      used.insert(u.begin(), u.end());
      self(self);
      for (const auto& q : u) used.erase(q);
      chosen.pop_back();
    }
  };
  extend(extend);
  return out;
}

std::string hasse_dot(const SpecUnion& spec) {
  validate(spec);
  const auto questions = spec.questions();
  const auto all = enumerate_union(spec).episodes;
  std::ostringstream out;
  out << "digraph dialog {\n  rankdir=BT;\n  node [shape=box];\n";
  const auto whole = poset_of(all);
  if (episodes_of(whole, questions) == all) {
    write_poset(out, whole, "n", "  ");
  } else {
    for (std::size_t c = 0; c < spec.exprs.size(); ++c) {
      const auto p = poset_of(enumerate(spec.exprs[c]).episodes);
      out << "  subgraph cluster_" << c << " {\n";
      out << "    label=" << quoted(render_expr(spec.exprs[c])) << ";\n";
      write_poset(out, p, "c" + std::to_string(c) + "_", "    ");
      out << "  }\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace dialog
