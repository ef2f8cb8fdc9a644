// invprob: command-line front end for group-measure probabilities.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "invprob/cli/report.hpp"
#include "invprob/cli/run.hpp"
#include "invprob/cli/scenario.hpp"
#include "invprob/cli/selftest.hpp"
#include "invprob/error.hpp"

namespace {

using namespace invprob;
using namespace invprob::cli;

double parse_real(const std::string& text) {
  double x = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw Error(ErrorKind::Parse, "not a number: '" + text + "'");
  return x;
}

/// Radians, written as a plain number or as [k]pi[/m], e.g. "pi/2", "2pi/3", "0.5".
double parse_angle(const std::string& text) {
  const auto pi_at = text.find("pi");
  if (pi_at == std::string::npos) return parse_real(text);
  std::string head = text.substr(0, pi_at);
  if (!head.empty() && head.back() == '*') head.pop_back();
  std::string tail = text.substr(pi_at + 2);
  double value = std::numbers::pi;
  if (head == "-")
    value = -value;
  else if (!head.empty())
    value *= parse_real(head);
  if (!tail.empty()) {
    if (tail[0] != '/') throw Error(ErrorKind::Parse, "bad angle '" + text + "'");
    value /= parse_real(tail.substr(1));
  }
  return value;
}

std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_angle(item));
  if (out.empty()) throw Error(ErrorKind::Parse, "empty angle list");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorKind::Validation, "field 'out': cannot write '" + out_path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilities from the transformation group that generates the possibilities"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string format = "table", out_path;
  std::uint64_t seed = 0, trials = 1;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
  auto* seed_opt = app.add_option("--seed", seed, "Seed for sampled measurements");
  auto* trials_opt = app.add_option("--trials", trials, "Number of repeated chains")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write output here instead of standard output");

  std::optional<Scenario> scenario;

  auto* coin = app.add_subcommand("coin", "Coin resting on a table");
  coin->callback([&] { scenario = CoinQuery{}; });

  std::string die_query = "joint";
  int north = 0;
  auto* die = app.add_subcommand("die", "Orientation of a die resting with a side facing North");
  die->add_option("--query", die_query)->check(CLI::IsMember({"joint", "marginal_up", "conditional_north"}));
  auto* north_opt = die->add_option("--north", north, "North face for conditional_north")->check(CLI::Range(1, 6));

  std::string family = "translation";
  double lower = 0, upper = 1;
  std::optional<double> at, level;
  auto* prior = app.add_subcommand("prior", "Group-measure density on an observation interval");
  prior->add_option("--family", family)->check(CLI::IsMember({"translation", "scale"}));
  prior->add_option("--lower", lower)->required();
  prior->add_option("--upper", upper)->required();
  prior->add_option("--at", at, "Report density and cdf at this point");
  prior->add_option("--quantile", level, "Report this quantile");

  double ratio_lower = 1, ratio_upper = 2;
  auto* von_mises = app.add_subcommand("von-mises", "Water/wine fraction from ratio bounds");
  von_mises->add_option("--ratio-lower", ratio_lower);
  von_mises->add_option("--ratio-upper", ratio_upper);

  std::string theta = "0", state = "up";
  auto* spin = app.add_subcommand("spin", "Measure spin along angle theta in the xz plane");
  spin->add_option("--theta", theta, "Radians, e.g. 1.0 or pi/2");
  spin->add_option("--state", state)->check(CLI::IsMember({"up", "down"}));

  std::string thetas = "0";
  auto* chain = app.add_subcommand("chain", "Sequential spin measurements with collapse");
  chain->add_option("--thetas", thetas, "Comma-separated angles, e.g. pi/2,0")->required();
  chain->add_option("--state", state)->check(CLI::IsMember({"up", "down"}));

  std::string scenario_file;
  auto* scen = app.add_subcommand("scenario", "Scenario files");
  scen->require_subcommand(1);
  auto* scen_run = scen->add_subcommand("run", "Run a scenario file");
  scen_run->add_option("file", scenario_file)->required();
  auto* scen_check = scen->add_subcommand("check", "Validate a scenario file and print its canonical form");
  scen_check->add_option("file", scenario_file)->required();

  auto* self = app.add_subcommand("selftest", "Cross-check every module against the oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*self) {
      bool ok = true;
      std::string text;
      for (const auto& r : selftest()) {
        text += oracle::render(r) + "\n";
        ok = ok && r.passed;
      }
      emit(text, out_path);
      return ok ? 0 : 1;
    }

    auto prepared = [](const std::string& name) {
      PreparedState s;
      s.name = name;
      s.amplitudes = name == "down" ? std::array<double, 4>{0, 0, 1, 0} : std::array<double, 4>{1, 0, 0, 0};
      return s;
    };

    nlohmann::json doc;
    if (*die) {
      doc = {{"kind", "die"}, {"query", die_query}};
      if (*north_opt) doc["north"] = north;
    } else if (*prior) {
      doc = {{"kind", "interval"}, {"family", family}, {"lower", lower}, {"upper", upper}};
      if (at) doc["at"] = *at;
      if (level) doc["quantile"] = *level;
    } else if (*von_mises) {
      doc = {{"kind", "von_mises"}, {"ratio_lower", ratio_lower}, {"ratio_upper", ratio_upper}};
    } else if (*spin) {
      scenario = SpinQuery{parse_angle(theta), prepared(state)};
    } else if (*chain) {
      scenario = SpinChainQuery{parse_angle_list(thetas), seed, trials, prepared(state)};
    } else if (*scen) {
      scenario = parse_scenario(read_file(scenario_file));
      if (auto* c = std::get_if<SpinChainQuery>(&*scenario)) {
        if (*seed_opt) c->seed = seed;
        if (*trials_opt) c->trials = trials;
      }
      if (*scen_check) {
        emit(to_json(*scenario).dump() + "\n", out_path);
        return 0;
      }
    }
    if (!doc.is_null()) scenario = parse_scenario(doc);
    if (!scenario) throw Error(ErrorKind::Validation, "no scenario selected");

    emit(render(run(*scenario), parse_format(format)), out_path);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "invprob: " << e.what() << "\n";
    return 2;
  }
}
