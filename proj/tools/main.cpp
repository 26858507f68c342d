// Copyright 2026 The adiabatic-pointer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adiabatic_pointer/cli/config.hpp"
#include "adiabatic_pointer/cli/execute.hpp"
#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/tolerances.hpp"

namespace {

namespace ap = adiabatic;

struct Options {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  std::string out;
  std::string tolerance_profile = "default";
  std::optional<double> alpha;
  std::optional<std::string> input;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ap::fail(ap::ErrorKind::IoError, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Writes next to the destination, then renames, so readers never see a
// partial file.
void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) ap::fail(ap::ErrorKind::IoError, "cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) ap::fail(ap::ErrorKind::IoError, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    ap::fail(ap::ErrorKind::IoError, "cannot move output into '" + path + "'");
  }
}

std::vector<ap::KvEntry> overrides_from(const Options& o) {
  std::vector<ap::KvEntry> out;
  for (const auto& s : o.sets) {
    auto parsed = ap::parse_kv_text(s);
    if (parsed.size() != 1)
      ap::fail(ap::ErrorKind::ParseError, "--set expects key=value, got '" + s + "'");
    parsed.front().line = 0;
    out.push_back(parsed.front());
  }
  if (o.seed) out.push_back({"seed", static_cast<double>(*o.seed)});
  if (o.alpha) out.push_back({"alpha", *o.alpha});
  if (o.input) out.push_back({"input", *o.input});
  return out;
}

int run(const std::string& command, const Options& o) {
  const std::string source = o.config_path.empty() ? std::string() : read_file(o.config_path);
  ap::cli::RunConfig cfg = ap::cli::parse_config(source, command, overrides_from(o));
  const auto format = ap::cli::parse_format(o.format);
  if (!format) ap::fail(ap::ErrorKind::ValidationError, "unknown format '" + o.format + "'");
  cfg.format = *format;
  cfg.output_path = o.out;
  const ap::Tolerances tol =
      o.tolerance_profile == "strict" ? ap::Tolerances::strict() : ap::Tolerances::standard();

  const auto envelope = ap::cli::execute(cfg, tol);
  const std::string text = ap::cli::render(envelope, cfg.format);
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    write_atomically(o.out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic (protective) measurement simulator and spin-gravity toolkit",
               "adiabatic-pointer"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Options opts;
  std::string chosen;
  for (const auto& schema : ap::cli::schemas()) {
    CLI::App* sub = app.add_subcommand(schema.name, schema.summary);
    sub->footer(ap::cli::describe(schema));
    sub->add_option("--config", opts.config_path, "key = value config file");
    sub->add_option("--set", opts.sets, "override one config key, e.g. --set total_time=800");
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--out", opts.out, "write output to this path instead of stdout");
    sub->add_option("--tolerance-profile", opts.tolerance_profile, "invariant tolerances")
        ->check(CLI::IsMember({"default", "strict"}));
    const bool seeded = std::any_of(schema.params.begin(), schema.params.end(),
                                    [](const auto& p) { return p.name == "seed"; });
    if (seeded) sub->add_option("--seed", opts.seed, "random seed");
    if (schema.name == "gravity-observables") sub->add_option("--alpha", opts.alpha, "coupling alpha");
    if (schema.name == "gravity-limits")
      sub->add_option("--input", opts.input, "limits CSV path, or 'bundled'");
    sub->callback([&chosen, name = schema.name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ap::exit_code(ap::ErrorKind::ValidationError);
  }

  try {
    return run(chosen, opts);
  } catch (const ap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ap::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 1;
  }
}
