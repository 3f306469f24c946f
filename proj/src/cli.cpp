#include "dialog/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "dialog/combinatorics.hpp"
#include "dialog/enumerate.hpp"
#include "dialog/hasse.hpp"
#include "dialog/mine.hpp"
#include "dialog/parse.hpp"
#include "dialog/rewrite.hpp"
#include "dialog/service.hpp"
#include "dialog/stager.hpp"

namespace dialog::cli {
namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs `body`, mapping input problems to exit code 2 with a message.
template <typename F>
int guarded(Streams io, const std::string& context, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    io.err << "dlg: " << e.what() << '\n';
  } catch (const DialogError& e) {
    io.err << "dlg: " << context << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
  }
  return input_error;
}

void print_episode_lines(std::ostream& out, const EpisodeSet& episodes) {
  for (const auto& ep : canonical_order(episodes)) out << render_episode(ep) << '\n';
}

void print_prompt(std::ostream& out, const SessionState& s) {
  out << "ask:";
  for (const auto& q : askable(s)) {
    out << ' ' << q << '{';
    const auto& allowed = s.plan().domains().at(q).allowed;
    for (std::size_t i = 0; i < allowed.size(); ++i) out << (i ? "," : "") << allowed[i];
    out << '}';
  }
  out << '\n';
}

void print_bindings(std::ostream& out, const Bindings& b) {
  for (const auto& [q, v] : b) out << ' ' << q << '=' << v;
}

std::optional<Bindings> parse_utterance_line(const std::string& line) {
  std::istringstream in(line);
  Bindings b;
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) return std::nullopt;
    if (!b.emplace(token.substr(0, eq), token.substr(eq + 1)).second) return std::nullopt;
  }
  return b;
}

}  // namespace

int cmd_enumerate(const std::string& spec_path, Streams io) {
  return guarded(io, spec_path, [&] {
    const auto en = enumerate_union(parse_spec(read_file(spec_path)));
    print_episode_lines(io.out, en.episodes);
    io.out << "# episodes: " << en.episodes.size() << '\n';
    return ok;
  });
}

int cmd_mine(const std::string& episodes_path, Streams io) {
  return guarded(io, episodes_path, [&] {
    const auto spec = parse_episodes(read_file(episodes_path));
    const auto result = mine(spec);
    io.out << render_spec(result.spec);
    io.out << "minimal: " << (known_minimal(spec, result) ? "yes" : "unknown") << '\n';
    return ok;
  });
}

int cmd_check(const std::string& spec_path, const std::string& episodes_path, Streams io) {
  return guarded(io, spec_path + " vs " + episodes_path, [&] {
    const auto spec = parse_spec(read_file(spec_path));
    const auto target = parse_episodes(read_file(episodes_path));
    const auto diff = analyze_excess_deficit(spec, target);
    io.out << "excess: " << diff.excess.size() << '\n';
    print_episode_lines(io.out, diff.excess);
    io.out << "deficit: " << diff.deficit.size() << '\n';
    print_episode_lines(io.out, diff.deficit);
    return diff.excess.empty() && diff.deficit.empty() ? ok : differs;
  });
}

int cmd_count(int q, const std::optional<std::string>& type, Streams io) {
  if (q < 1 || q > 20) {
    io.err << "dlg: count: q must be between 1 and 20\n";
    return input_error;
  }
  const auto uq = static_cast<unsigned>(q);
  std::optional<DialogType> only;
  if (type) {
    only = parse_type(*type);
    if (!only) {
      io.err << "dlg: count: unknown type '" << *type << "'\n";
      return input_error;
    }
  }
  io.out << "q: " << q << '\n';
  const auto table = count_table(uq);
  for (const auto& [t, n] : table.counts) {
    if (only && *only != t) continue;
    io.out << to_string(t) << ' ' << n << '\n';
    if (only) {
      if (auto c = class_size(t, uq)) io.out << "class_size: " << *c << '\n';
    }
  }
  if (only || q < 3) return ok;
  if (q <= 9) {
    const auto s = space_sizes(uq);
    io.out << "d_cmi: " << s.d_cmi << '\n'
           << "universe: " << s.universe << '\n'
           << "single_type: " << s.single_type << '\n'
           << "delta_published: " << s.delta_published << '\n'
           << "delta_exact: " << s.delta_exact << '\n';
  } else {
    // 2^d_cmi is far too large to print; show the closed forms
    const auto d = ordered_bell(uq);
    const BigInt single = 4 * factorial(uq) + uq + 6;
    io.out << "d_cmi: " << d << '\n'
           << "universe: 2^" << d << " - 1\n"
           << "single_type: " << single << '\n'
           << "delta_published: 2^" << d << " - " << single << '\n'
           << "delta_exact: 2^" << d << " - " << BigInt(single + 1) << '\n';
  }
  return ok;
}

int cmd_rewrite(const std::string& spec_path, const RewriteFlags& flags, Streams io) {
  return guarded(io, spec_path, [&] {
    const auto spec = parse_spec(read_file(spec_path));
    if (flags.trace) {
      for (const auto& e : spec.exprs) {
        RewriteTrace trace;
        normalize(e, &trace);
        for (const auto& s : trace.steps)
          io.out << "; " << s.rule << ": " << render_expr(s.before) << " => " << render_expr(s.after) << '\n';
      }
    }
    if (flags.primitives) {
      SpecUnion all;
      for (const auto& e : spec.exprs) {
        for (auto& p : reduce_to_primitives(e).exprs) all.exprs.push_back(std::move(p));
      }
      io.out << render_spec(normalize(all));
    } else {
      io.out << render_spec(normalize(spec));
    }
    return ok;
  });
}

int cmd_run(const std::string& spec_path, const std::string& domains_path, Streams io) {
  return guarded(io, spec_path, [&] {
    const auto spec = parse_spec(read_file(spec_path));
    const auto domains = parse_domains(read_file(domains_path));
    auto state = start_session(compile_stager(spec, domains, "complete"));
    print_prompt(io.out, state);
    std::string line;
    while (std::getline(io.in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto cmd = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
      if (cmd == ":quit") return ok;
      if (cmd == ":undo" || cmd == ":redo") {
        auto next = cmd == ":undo" ? undo(state) : redo(state);
        if (!next) {
          io.out << (cmd == ":undo" ? "nothing to undo" : "nothing to redo") << '\n';
        } else {
          state = std::move(*next);
          io.out << (cmd == ":undo" ? "undone" : "redone") << '\n';
        }
        print_prompt(io.out, state);
        continue;
      }
      const auto bindings = parse_utterance_line(cmd);
      if (!bindings) {
        io.out << "rejected: parse\n";
        print_prompt(io.out, state);
        continue;
      }
      auto [next, result] = step(state, *bindings);
      if (result.outcome == Outcome::rejected) {
        io.out << "rejected: " << to_string(*result.reason) << '\n';
      } else if (result.outcome == Outcome::completed) {
        io.out << "completed:";
        print_bindings(io.out, result.completion->bindings);
        io.out << '\n';
        return ok;
      } else {
        io.out << "accepted\n";
        state = std::move(next);
      }
      print_prompt(io.out, state);
    }
    io.out << "incomplete\n";
    return ok;
  });
}

int cmd_hasse(const std::string& spec_path, Streams io) {
  return guarded(io, spec_path, [&] {
    io.out << hasse_dot(parse_spec(read_file(spec_path)));
    return ok;
  });
}

int cmd_serve(int port, const std::optional<std::string>& state_dir, Streams io) {
  try {
    SessionService service(state_dir ? std::optional<std::filesystem::path>(*state_dir) : std::nullopt);
    io.err << "dlg: serving on port " << port << " (" << service.session_count() << " sessions restored)\n";
    if (serve_http(service, "0.0.0.0", port) != 0) {
      io.err << "dlg: cannot listen on port " << port << '\n';
      return input_error;
    }
  } catch (const std::exception& e) {
    io.err << "dlg: serve: " << e.what() << '\n';
    return input_error;
  }
  return ok;
}

}  // namespace dialog::cli
