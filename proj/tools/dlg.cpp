#include <iostream>

#include <CLI11.hpp>

#include "dialog/cli.hpp"

int main(int argc, char** argv) {
  using namespace dialog::cli;
  CLI::App app{"dlg: specify, mine, and stage mixed-initiative dialogs"};
  app.require_subcommand(1);
  Streams io{std::cin, std::cout, std::cerr};
  int code = ok;

  std::string spec, episodes, domains;
  auto* enumerate = app.add_subcommand("enumerate", "print the episodes a spec allows");
  enumerate->add_option("spec", spec, "spec file")->required();
  enumerate->callback([&] { code = cmd_enumerate(spec, io); });

  auto* mine = app.add_subcommand("mine", "compress an episode file into the notation");
  mine->add_option("episodes", episodes, "episode file")->required();
  mine->callback([&] { code = cmd_mine(episodes, io); });

  auto* check = app.add_subcommand("check", "compare a spec against an episode file");
  check->add_option("spec", spec, "spec file")->required();
  check->add_option("episodes", episodes, "episode file")->required();
  check->callback([&] { code = cmd_check(spec, episodes, io); });

  int q = 0;
  std::string type;
  auto* count = app.add_subcommand("count", "episode counts per dialog type");
  count->add_option("q", q, "number of questions")->required();
  auto* type_opt = count->add_option("--type", type, "only this type (I, C, PFA, PFA_n, PFA_n*, SPE, SPE', PE, PE*)");
  count->callback([&] {
    code = cmd_count(q, type_opt->count() ? std::optional<std::string>(type) : std::nullopt, io);
  });

  RewriteFlags flags;
  auto* rewrite = app.add_subcommand("rewrite", "normalize a spec");
  rewrite->add_option("spec", spec, "spec file")->required();
  rewrite->add_flag("--trace", flags.trace, "print each rewrite step");
  rewrite->add_flag("--primitives", flags.primitives, "reduce to C and I expressions");
  rewrite->callback([&] { code = cmd_rewrite(spec, flags, io); });

  auto* run = app.add_subcommand("run", "conduct a dialog on the terminal");
  run->add_option("spec", spec, "spec file")->required();
  run->add_option("domains", domains, "domain file")->required();
  run->callback([&] { code = cmd_run(spec, domains, io); });

  auto* hasse = app.add_subcommand("hasse", "Hasse diagram of a spec as DOT");
  hasse->add_option("spec", spec, "spec file")->required();
  hasse->callback([&] { code = cmd_hasse(spec, io); });

  int port = 8080;
  std::string state;
  auto* serve = app.add_subcommand("serve", "HTTP/JSON session service");
  serve->add_option("--port", port, "listen port");
  auto* state_opt = serve->add_option("--state", state, "session log directory");
  serve->callback([&] {
    code = cmd_serve(port, state_opt->count() ? std::optional<std::string>(state) : std::nullopt, io);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : input_error;
  }
  return code;
}
