// SPDX-License-Identifier: Apache-2.0

#include "wxgen/cli/config.hpp"

#include <filesystem>
#include <functional>
#include <map>

#include "wxgen/error.hpp"
#include "wxgen/text.hpp"

namespace wxgen {

namespace {

std::size_t to_count(std::string_view v, const std::string& key) {
  const long long n = parse_integer(v, key);
  if (n < 0) throw ConfigError(key + " must not be negative");
  return static_cast<std::size_t>(n);
}

std::uint64_t to_seed(std::string_view v, const std::string& key) {
  return static_cast<std::uint64_t>(to_count(v, key));
}

bool to_bool(std::string_view v, const std::string& key) {
  const std::string s = to_lower(v);
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + s + "'");
}

std::vector<std::string_view> list(std::string_view v) {
  std::vector<std::string_view> out;
  for (std::string_view item : split(v, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& base_dir) {
  RunConfig cfg;
  auto path = [&base_dir](std::string_view v) {
    std::filesystem::path p{std::string(v)};
    if (base_dir.empty() || p.is_absolute()) return p.string();
    return (std::filesystem::path(base_dir) / p).lexically_normal().string();
  };

  using Setter = std::function<void(std::string_view)>;
  auto& P = cfg.paths;
  auto& A = cfg.architecture;
  auto& T = cfg.training;
  auto& G = cfg.generation;
  auto& B = cfg.baseline;
  auto& E = cfg.evaluation;
  const std::map<std::string, Setter> setters{
      {"paths.data", [&](auto v) { P.data = path(v); }},
      {"paths.checkpoint", [&](auto v) { P.checkpoint = path(v); }},
      {"paths.history", [&](auto v) { P.history = path(v); }},
      {"paths.out", [&](auto v) { P.out = path(v); }},
      {"architecture.l", [&](auto v) { A.l = to_count(v, "architecture.l"); }},
      {"architecture.m", [&](auto v) { A.m = to_count(v, "architecture.m"); }},
      {"architecture.channels",
       [&](auto v) {
         A.channels.clear();
         for (auto item : list(v)) A.channels.push_back(to_count(item, "architecture.channels"));
       }},
      {"architecture.horizon", [&](auto v) { A.horizon = to_count(v, "architecture.horizon"); }},
      {"architecture.t0_min", [&](auto v) { A.t0_min = to_count(v, "architecture.t0_min"); }},
      {"architecture.t0_max", [&](auto v) { A.t0_max = to_count(v, "architecture.t0_max"); }},
      {"architecture.epsilon", [&](auto v) { A.epsilon = parse_double(v, "architecture.epsilon"); }},
      {"training.epochs", [&](auto v) { T.epochs = to_count(v, "training.epochs"); }},
      {"training.batch_size", [&](auto v) { T.batch_size = to_count(v, "training.batch_size"); }},
      {"training.lr", [&](auto v) { T.lr = parse_double(v, "training.lr"); }},
      {"training.seed", [&](auto v) { T.seed = to_seed(v, "training.seed"); }},
      {"training.split_date", [&](auto v) { T.split_date = parse_date(v); }},
      {"training.threads", [&](auto v) { T.threads = to_count(v, "training.threads"); }},
      {"generation.n_samples", [&](auto v) { G.n_samples = to_count(v, "generation.n_samples"); }},
      {"generation.master_seed", [&](auto v) { G.master_seed = to_seed(v, "generation.master_seed"); }},
      {"generation.start_date", [&](auto v) { G.start_date = parse_date(v); }},
      {"generation.write_met", [&](auto v) { G.write_met = to_bool(v, "generation.write_met"); }},
      {"generation.threads", [&](auto v) { G.threads = to_count(v, "generation.threads"); }},
      {"baseline.years_back", [&](auto v) { B.years_back = to_count(v, "baseline.years_back"); }},
      {"baseline.n_samples", [&](auto v) { B.n_samples = to_count(v, "baseline.n_samples"); }},
      {"baseline.master_seed", [&](auto v) { B.master_seed = to_seed(v, "baseline.master_seed"); }},
      {"baseline.target_start", [&](auto v) { B.target_start = parse_date(v); }},
      {"evaluation.periods",
       [&](auto v) {
         E.periods.clear();
         for (auto item : list(v)) E.periods.push_back(parse_period(item));
       }},
      {"evaluation.ensembles",
       [&](auto v) {
         E.ensembles.clear();
         for (auto item : list(v)) E.ensembles.push_back(path(item));
       }},
      {"evaluation.truth", [&](auto v) { E.truth = path(v); }},
      {"evaluation.yields",
       [&](auto v) {
         E.yields.clear();
         for (auto item : list(v)) {
           const std::size_t eq = item.find('=');
           if (eq == std::string_view::npos) throw ConfigError("evaluation.yields entries must be method=path");
           E.yields.emplace_back(std::string(trim(item.substr(0, eq))), path(trim(item.substr(eq + 1))));
         }
       }},
      {"evaluation.true_yields", [&](auto v) { E.true_yields = path(v); }},
  };

  std::string section;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      section = to_lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
    const std::string key = section + "." + to_lower(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + "unknown key '" + key + "'");
    try {
      it->second(value);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_config(read_file(path), dir.empty() ? "." : dir);
}

ArchitectureSpec planned_spec(const RunConfig& cfg) {
  const auto& a = cfg.architecture;
  return plan_architecture(a.horizon, a.l, a.m, ConditioningRange{a.t0_min, a.t0_max},
                           ChannelLadder::from_flat(a.channels, a.m), a.epsilon);
}

}  // namespace wxgen
