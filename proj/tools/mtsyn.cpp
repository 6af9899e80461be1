// Command-line front end: check, synthesize, eval-trace, simulate, export,
// verify, generate.

#include <iostream>

#include <CLI11.hpp>

#include "mtsyn/cli.hpp"

namespace {

mtsyn::ParamBindings bindings(const std::vector<std::string>& raw) {
  mtsyn::ParamBindings out;
  for (const auto& r : raw) {
    auto [name, value] = mtsyn::cli::parse_param(r);
    out[name] = value;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesis of controllers for monitor-triggered temporal specifications"};
  app.require_subcommand(1);
  mtsyn::cli::Streams io{std::cin, std::cout, std::cerr};
  int code = 0;
  std::vector<std::string> params;
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--param", params, "bind a spec parameter, e.g. n=4")->take_all();
  };

  std::string spec_path;
  auto* check = app.add_subcommand("check", "validate a spec file");
  check->add_option("spec", spec_path, "spec file")->required();
  add_params(check);

  mtsyn::cli::SynthesizeOptions synth_opt;
  auto* synth = app.add_subcommand("synthesize", "synthesize and compose a controller");
  synth->add_option("spec", spec_path, "spec file")->required();
  synth->add_option("--backend", synth_opt.backend,
                    "builtin | external:<interchange-file> | external:<command>");
  synth->add_option("--out", synth_opt.out, "controller file (default: stdout)");
  synth->add_option("--dot", synth_opt.dot, "also write a DOT rendering");
  synth->add_option("--machine", synth_opt.machine, "also write the embedded Mealy machine");
  add_params(synth);

  std::string trace_path;
  std::size_t bound = 10000;
  auto* eval = app.add_subcommand("eval-trace", "evaluate a lasso trace against a spec");
  eval->add_option("spec", spec_path, "spec file")->required();
  eval->add_option("trace", trace_path, "trace file")->required();
  eval->add_option("--bound", bound, "oracle step bound")->capture_default_str();
  add_params(eval);

  std::string controller_path;
  auto* sim = app.add_subcommand("simulate", "step a controller from stdin, one event per line");
  sim->add_option("controller", controller_path, "controller file")->required();

  std::string format = "dot";
  std::optional<std::string> out_path;
  std::string export_path;
  auto* exp = app.add_subcommand("export", "render a spec monitor, controller or machine");
  exp->add_option("file", export_path, "spec, controller or interchange file")->required();
  exp->add_option("--format", format, "dot | interchange")->capture_default_str();
  exp->add_option("--out", out_path, "output file (default: stdout)");
  add_params(exp);

  mtsyn::cli::VerifyCliOptions verify_opt;
  auto* ver = app.add_subcommand("verify", "check a controller against the trace oracle");
  ver->add_option("spec", spec_path, "spec file")->required();
  ver->add_option("controller", controller_path, "controller file")->required();
  ver->add_option("--episodes", verify_opt.episodes)->capture_default_str();
  ver->add_option("--horizon", verify_opt.horizon)->capture_default_str();
  ver->add_option("--seed", verify_opt.seed)->capture_default_str();
  add_params(ver);

  int bus_n = 12, bus_m = 12;
  std::string dir = ".";
  auto* gen = app.add_subcommand("generate", "write a case-study spec");
  auto* two_bus = gen->add_subcommand("two-bus", "two event buses with an always-acc controller");
  gen->require_subcommand(1);
  two_bus->add_option("--n", bus_n)->capture_default_str();
  two_bus->add_option("--m", bus_m)->capture_default_str();
  two_bus->add_option("--dir", dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : mtsyn::cli::kInvalid;
  }

  mtsyn::ParamBindings binds;
  try {
    binds = bindings(params);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mtsyn::cli::kInvalid;
  }

  try {
    if (*check) code = mtsyn::cli::cmd_check(spec_path, binds, io);
    else if (*synth) code = mtsyn::cli::cmd_synthesize(spec_path, binds, synth_opt, io);
    else if (*eval) code = mtsyn::cli::cmd_eval_trace(spec_path, trace_path, bound, binds, io);
    else if (*sim) code = mtsyn::cli::cmd_simulate(controller_path, io);
    else if (*exp) code = mtsyn::cli::cmd_export(export_path, format, out_path, binds, io);
    else if (*ver) code = mtsyn::cli::cmd_verify(spec_path, controller_path, binds, verify_opt, io);
    else if (*two_bus) code = mtsyn::cli::cmd_generate_two_bus(bus_n, bus_m, dir, io);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mtsyn::cli::kInvalid;
  }
  return code;
}
