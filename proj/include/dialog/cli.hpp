#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace dialog::cli {

/// Exit codes shared by every command.
enum ExitCode : int { ok = 0, differs = 1, input_error = 2 };

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

int cmd_enumerate(const std::string& spec_path, Streams io);
int cmd_mine(const std::string& episodes_path, Streams io);
int cmd_check(const std::string& spec_path, const std::string& episodes_path, Streams io);
int cmd_count(int q, const std::optional<std::string>& type, Streams io);

struct RewriteFlags {
  bool trace = false;
  bool primitives = false;
};
int cmd_rewrite(const std::string& spec_path, const RewriteFlags& flags, Streams io);

/// Line-oriented session: each input line is one utterance of `q=v` pairs,
/// or one of `:undo`, `:redo`, `:quit`.
int cmd_run(const std::string& spec_path, const std::string& domains_path, Streams io);

int cmd_hasse(const std::string& spec_path, Streams io);
int cmd_serve(int port, const std::optional<std::string>& state_dir, Streams io);

}  // namespace dialog::cli
