// orlicz-lab: command line front end for the orlicz_lab experiments.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "orlicz_lab/app.hpp"
#include "orlicz_lab/errors.hpp"

namespace fs = std::filesystem;
using orlicz_lab::app::json;

namespace {

struct Overrides {
  std::string config;
  std::map<std::string, std::string> young;  // name -> "family:p"
  std::string space;
  std::string u;
  std::map<std::string, std::string> strings;
  std::map<std::string, double> numbers;
  std::string ks;
};

json weight_from_arg(const std::string& arg) {
  if (fs::exists(arg)) return orlicz_lab::app::load_json(arg);
  return json{{"expr", arg}};
}

json build_config(const std::string& command, const Overrides& o) {
  json c = o.config.empty() ? json::object() : orlicz_lab::app::load_json(o.config);
  c["command"] = command;
  for (const auto& [name, text] : o.young) {
    if (!text.empty()) c["young"][name] = orlicz_lab::app::young_spec_from_text(text);
  }
  if (!o.space.empty()) {
    json s = orlicz_lab::app::load_json(o.space);
    if (s.contains("weight") && !c.contains("weight")) c["weight"] = s["weight"];
    s.erase("weight");
    c["space"] = std::move(s);
  }
  if (!o.u.empty()) c["weight"] = weight_from_arg(o.u);
  for (const auto& [k, v] : o.strings) {
    if (!v.empty()) c["params"][k] = v;
  }
  for (const auto& [k, v] : o.numbers) {
    if (!std::isnan(v)) c["params"][k] = v;
  }
  if (!o.ks.empty()) {
    json arr = json::array();
    std::stringstream ss(o.ks);
    std::string item;
    while (std::getline(ss, item, ',')) arr.push_back(std::stoul(item));
    c["params"]["ks"] = arr;
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Weighted conditional type operators between Orlicz spaces"};
  cli.require_subcommand(0, 1);
  cli.fallthrough();

  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::string output_dir;
  std::vector<std::string> compare;
  cli.add_option("--seed", seed, "Random seed (overrides the config)");
  cli.add_flag("--strict", strict, "Exit 2 when a verdict is violated or diverges");
  cli.add_option("--output-dir", output_dir, "Directory for the JSON report and CSV sidecars");
  cli.add_option("--compare", compare, "Compare two reports, ignoring metadata")->expected(2);

  const double unset = std::numeric_limits<double>::quiet_NaN();
  std::map<std::string, Overrides> ov;
  std::vector<std::pair<std::string, CLI::App*>> commands;

  auto add_common = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = cli.add_subcommand(name, help);
    auto& o = ov[name];
    sub->add_option("--config", o.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--phi", o.young["phi"], "Phi as family[:p]");
    sub->add_option("--psi", o.young["psi"], "Psi as family[:p]");
    sub->add_option("--theta", o.young["theta"], "Theta as family[:p]");
    sub->add_option("--space,--alg,--symbolic", o.space, "Space spec (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--u,--fn", o.u, "Weight: JSON file or expression in n, w");
    commands.emplace_back(name, sub);
    return sub;
  };

  auto* young = add_common("young", "Evaluate a Young function");
  young->add_option("--function", ov["young"].strings["function"], "Name of the function");
  young->add_option("--op", ov["young"].strings["op"], "eval, inverse, conjugate, growth or invariants");
  young->add_option("--x", ov["young"].numbers["x"], "Evaluation point")->default_val(unset);
  young->add_option("--condition", ov["young"].strings["condition"], "Growth condition");

  add_common("norm", "Luxemburg norm and modular of the weight");
  add_common("condexp", "Conditional expectation of the weight");

  auto* opnorm = add_common("opnorm", "Lower bound for the operator norm");
  opnorm->add_option("--op", ov["opnorm"].config, "Operator config (JSON)")->check(CLI::ExistingFile);
  opnorm->add_option("--strategy", ov["opnorm"].strings["strategy"], "atoms, random, ascent or all");
  opnorm->add_option("--budget", ov["opnorm"].numbers["budget"], "Search budget")->default_val(unset);
  opnorm->add_option("--kind", ov["opnorm"].strings["kind"], "wct or mult");

  auto* criteria = add_common("criteria", "Boundedness criteria");
  criteria->add_option("--which", ov["criteria"].strings["which"], "Criterion id");
  criteria->add_option("--p", ov["criteria"].numbers["p"], "Exponent p")->default_val(unset);
  criteria->add_option("--q", ov["criteria"].numbers["q"], "Exponent q")->default_val(unset);
  criteria->add_option("--C", ov["criteria"].numbers["C"], "GCH constant")->default_val(unset);

  auto* essnorm = add_common("essnorm", "Essential norm sandwich and truncation curve");
  essnorm->add_option("--C", ov["essnorm"].numbers["C"], "GCH constant")->default_val(unset);
  essnorm->add_option("--ks", ov["essnorm"].ks, "Comma separated truncation indices");

  auto* gch = add_common("gch", "Estimate the GCH constant");
  gch->add_option("--samples", ov["gch"].numbers["samples"], "Random pairs")->default_val(unset);

  add_common("verify-all", "Run the invariant suites on a config");
  add_common("run", "Run the command named in --config");

  auto* emit = cli.add_subcommand("emit-fixture", "Write a ready-to-run config");
  std::string fixture_name;
  emit->add_option("name", fixture_name, "Fixture name")->required();

  CLI11_PARSE(cli, argc, argv);

  try {
    if (!compare.empty()) {
      const auto r = orlicz_lab::app::compare_reports(orlicz_lab::app::load_json(compare[0]),
                                                      orlicz_lab::app::load_json(compare[1]));
      if (r.identical) {
        std::cout << "identical\n";
        return 0;
      }
      std::cout << "differ at " << r.first_difference << '\n';
      return 1;
    }
    if (emit->parsed()) {
      const fs::path dir = output_dir.empty() ? fs::path(".") : fs::path(output_dir);
      std::cout << orlicz_lab::app::emit_fixture(fixture_name, dir).string() << '\n';
      return 0;
    }
    for (const auto& [name, sub] : commands) {
      if (!sub->parsed()) continue;
      const auto& o = ov[name];
      std::string command = name;
      if (name == "run") {
        if (o.config.empty()) throw orlicz_lab::ConfigError("--config", "run needs a config");
        command = orlicz_lab::app::load_json(o.config).value("command", "");
      }
      json config = build_config(command, o);
      // Integer-valued params are passed on as integers.
      for (const char* k : {"budget", "samples"}) {
        if (config.contains("params") && config["params"].contains(k) && config["params"][k].is_number()) {
          config["params"][k] = static_cast<long long>(config["params"][k].get<double>());
        }
      }
      orlicz_lab::app::RunOptions opt;
      opt.seed = seed;
      opt.strict = strict;
      if (!output_dir.empty()) opt.output_dir = fs::path(output_dir);
      const auto result = orlicz_lab::app::run(config, opt);
      std::cout << result.report.dump(2) << '\n';
      return result.exit_code;
    }
    std::cout << cli.help();
    return 0;
  } catch (const orlicz_lab::ConfigError& e) {
    std::cerr << "config error at " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}
