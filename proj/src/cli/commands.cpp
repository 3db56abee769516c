// SPDX-License-Identifier: Apache-2.0

#include "wxgen/cli/commands.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

#include "wxgen/baseline.hpp"
#include "wxgen/error.hpp"
#include "wxgen/met_file.hpp"
#include "wxgen/model/checkpoint.hpp"
#include "wxgen/sampler.hpp"
#include "wxgen/text.hpp"
#include "wxgen/trainer.hpp"

namespace fs = std::filesystem;

namespace wxgen {

namespace {

std::string under_out(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.paths.out) / name).string();
}

void ensure_out_dir(const RunConfig& cfg) { fs::create_directories(cfg.paths.out); }

void require(const std::string& value, const char* key) {
  if (value.empty()) throw ConfigError(std::string("missing ") + key + " in config");
}

std::string plan_line(const ArchitectureSpec& spec) {
  std::ostringstream os;
  os << "T=" << spec.window << " t0=" << spec.conditioning << " params=" << param_count(spec);
  return os.str();
}

void write_member_met_files(const RunConfig& cfg, const Ensemble& e, const std::string& stem, const Location& loc,
                            std::ostream& out) {
  const std::size_t digits = std::to_string(e.size() - 1).size();
  for (std::size_t k = 0; k < e.size(); ++k) {
    std::string index = std::to_string(k);
    index.insert(0, digits > index.size() ? digits - index.size() : 0, '0');
    write_met(under_out(cfg, stem + "_" + index + ".met"), e.member_series(k, loc));
  }
  out << "wrote " << e.size() << " weather files " << stem << "_*.met\n";
}

}  // namespace

WeatherSeries load_weather(const std::string& path) {
  if (fs::path(path).extension() == ".met") return read_met(path);
  return parse_weather_csv(read_file(path));
}

std::string generated_ensemble_path(const RunConfig& cfg) { return under_out(cfg, "generated.csv"); }
std::string baseline_ensemble_path(const RunConfig& cfg) { return under_out(cfg, "baseline.csv"); }

void cmd_train(const RunConfig& cfg, std::ostream& out) {
  require(cfg.paths.data, "paths.data");
  require(cfg.paths.checkpoint, "paths.checkpoint");
  const ArchitectureSpec spec = planned_spec(cfg);
  out << "plan " << plan_line(spec) << '\n';

  WeatherSeries series = load_weather(cfg.paths.data);
  if (cfg.training.split_date) series = split_by_date(series, *cfg.training.split_date).first;
  const auto model_space = std::make_shared<const TransformedSeries>(to_model_space(series));
  const StandardizationStats stats = fit_standardization(*model_space);
  const TrainingWindowSet windows = make_windows(model_space, spec.window, spec.conditioning);
  out << "training days " << format_date(series.first_date()) << ".." << format_date(series.last_date())
      << " windows=" << windows.count() << '\n';

  WeatherNet net = WeatherNet::build(spec, stats, cfg.training.seed);
  ensure_out_dir(cfg);
  if (const fs::path dir = fs::path(cfg.paths.checkpoint).parent_path(); !dir.empty()) fs::create_directories(dir);
  TrainConfig tc;
  tc.epochs = cfg.training.epochs;
  tc.batch_size = cfg.training.batch_size;
  tc.lr = cfg.training.lr;
  tc.seed = cfg.training.seed;
  tc.threads = cfg.training.threads;
  tc.checkpoint_path = cfg.paths.checkpoint;
  tc.history_path = cfg.paths.history.empty() ? under_out(cfg, "history.csv") : cfg.paths.history;
  tc.progress = &out;
  const TrainHistory history = train(net, windows, tc);
  out << "best epoch " << history.best_epoch << " loss " << format_real(history.best_loss) << '\n';
  out << "checkpoint " << cfg.paths.checkpoint << '\n';
}

void cmd_generate(const RunConfig& cfg, std::ostream& out) {
  require(cfg.paths.data, "paths.data");
  require(cfg.paths.checkpoint, "paths.checkpoint");
  if (!cfg.generation.start_date) throw ConfigError("missing generation.start_date in config");
  const ArchitectureSpec spec = planned_spec(cfg);
  const LoadedModel model = load_checkpoint(cfg.paths.checkpoint);
  const ArchitectureSpec& trained = model.net.spec();
  if (trained.horizon != spec.horizon) {
    throw RepurposeError("checkpoint was trained for a " + std::to_string(trained.horizon) +
                         "-day horizon but the config asks for " + std::to_string(spec.horizon) +
                         " days; a network is only valid for the horizon it was built for");
  }
  if (!(trained == spec)) {
    throw RepurposeError("checkpoint architecture (" + plan_line(trained) + ") differs from the config (" +
                         plan_line(spec) + ")");
  }

  const WeatherSeries series = load_weather(cfg.paths.data);
  const Date start = *cfg.generation.start_date;
  const auto last = series.index_of(add_days(start, -1));
  if (!last) throw RangeError("data has no observation for the day before " + format_date(start));
  const std::size_t available = *last + 1;
  if (available < spec.conditioning) throw InsufficientDataError(available, spec.conditioning);
  const WeatherSeries tail = series.slice(available - spec.conditioning, spec.conditioning);

  GenerationRequest req;
  req.conditioning = to_model_space(tail);
  req.horizon = spec.horizon;
  req.n_samples = cfg.generation.n_samples;
  req.master_seed = cfg.generation.master_seed;
  req.start_date = start;
  req.threads = cfg.generation.threads;
  req.checkpoint_id = model.id;
  const Ensemble ensemble = generate(model.net, req);

  ensure_out_dir(cfg);
  write_ensemble(generated_ensemble_path(cfg), ensemble);
  out << "generated " << ensemble.size() << " members x " << ensemble.horizon << " days from "
      << format_date(ensemble.start) << " -> " << generated_ensemble_path(cfg) << '\n';
  if (cfg.generation.write_met) write_member_met_files(cfg, ensemble, "generated", series.location(), out);
}

void cmd_baseline(const RunConfig& cfg, std::ostream& out) {
  require(cfg.paths.data, "paths.data");
  const auto target = cfg.baseline.target_start ? cfg.baseline.target_start : cfg.generation.start_date;
  if (!target) throw ConfigError("missing baseline.target_start (or generation.start_date) in config");
  BaselineRequest req;
  req.history = load_weather(cfg.paths.data);
  req.target_start = *target;
  req.horizon = cfg.architecture.horizon;
  req.years_back = cfg.baseline.years_back;
  req.n_samples = cfg.baseline.n_samples;
  req.master_seed = cfg.baseline.master_seed;
  const Ensemble ensemble = baseline_generate(req);

  ensure_out_dir(cfg);
  write_ensemble(baseline_ensemble_path(cfg), ensemble);
  const auto years = candidate_years(*target, req.years_back);
  out << "conventional " << ensemble.size() << " members x " << ensemble.horizon << " days from "
      << format_date(ensemble.start) << ", start years " << years.front() << "-" << years.back() << " -> "
      << baseline_ensemble_path(cfg) << '\n';
  if (cfg.generation.write_met) write_member_met_files(cfg, ensemble, "baseline", req.history.location(), out);
}

void cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
  const auto& ev = cfg.evaluation;
  const std::string truth_path = ev.truth.empty() ? cfg.paths.data : ev.truth;
  std::vector<std::string> ensembles = ev.ensembles;
  if (ensembles.empty()) {
    for (const std::string& p : {generated_ensemble_path(cfg), baseline_ensemble_path(cfg)}) {
      if (fs::exists(p)) ensembles.push_back(p);
    }
  }
  std::vector<std::string> missing;
  if (truth_path.empty()) missing.push_back("truth series (evaluation.truth or paths.data)");
  else if (!fs::exists(truth_path)) missing.push_back("truth series " + truth_path);
  if (ensembles.empty() && ev.yields.empty()) missing.push_back("ensembles (none configured or found under paths.out)");
  for (const auto& p : ensembles) {
    if (!fs::exists(p)) missing.push_back("ensemble " + p);
  }
  for (const auto& [method, p] : ev.yields) {
    if (!fs::exists(p)) missing.push_back("yields for " + method + " " + p);
  }
  if (!ev.yields.empty()) {
    if (ev.true_yields.empty()) missing.push_back("evaluation.true_yields");
    else if (!fs::exists(ev.true_yields)) missing.push_back("true yields " + ev.true_yields);
  }
  if (!missing.empty()) {
    std::string msg = "missing evaluation inputs:";
    for (const auto& m : missing) msg += "\n  " + m;
    throw ConfigError(msg);
  }

  ensure_out_dir(cfg);
  const WeatherSeries truth = load_weather(truth_path);
  std::vector<std::pair<std::string, std::map<std::string, double>>> weather_metrics;
  for (const std::string& path : ensembles) {
    const Ensemble e = read_ensemble(path);
    const std::string method = e.provenance.method.empty() ? fs::path(path).stem().string() : e.provenance.method;
    std::map<std::string, double> metrics;
    for (Period period : ev.periods) {
      const ErrorTable table = smoothed_abs_error(e, truth, period);
      const std::string name = "errors_" + method + "_" + std::string(period_name(period)) + ".csv";
      write_file(under_out(cfg, name), format_error_table(table));
      out << method << ' ' << period_name(period) << " average";
      for (std::size_t c = 0; c < 4; ++c) out << ' ' << kTableVariables[c] << '=' << format_fixed(table.average[c], 4);
      out << " -> " << name << '\n';
      for (const auto& [key, value] : table_metrics(table)) {
        if (key.find("/Average/") != std::string::npos) metrics[key] = value;
      }
    }
    weather_metrics.emplace_back(method, std::move(metrics));
  }
  if (weather_metrics.size() == 2) {
    const Comparison c = compare_methods(weather_metrics[0].second, weather_metrics[1].second);
    out << "weather averages: " << format_comparison(weather_metrics[0].first, weather_metrics[1].first, c) << '\n';
  }

  if (ev.yields.empty()) return;
  const auto true_yields = parse_true_yield_csv(read_file(ev.true_yields));
  std::ostringstream table;
  table << "crop,slot,method,mean,std\n";
  std::vector<std::pair<std::string, std::map<std::string, double>>> yield_sets;
  for (const auto& [method, path] : ev.yields) {
    const auto stats = yield_table(parse_yield_csv(read_file(path)), true_yields);
    for (const auto& [key, s] : stats) {
      table << key.first << ',' << key.second << ',' << method << ',' << format_fixed(s.mean, 1) << ','
            << format_fixed(s.std, 1) << '\n';
    }
    yield_sets.emplace_back(method, yield_metrics(stats));
  }
  write_file(under_out(cfg, "yield_errors.csv"), table.str());
  out << "yield error table -> yield_errors.csv\n";
  if (yield_sets.size() == 2) {
    const Comparison c = compare_methods(yield_sets[0].second, yield_sets[1].second);
    const std::string line = format_comparison(yield_sets[0].first, yield_sets[1].first, c);
    write_file(under_out(cfg, "comparison.txt"), line + "\n");
    out << "yields: " << line << '\n';
  }
}

void cmd_inspect(const RunConfig& cfg, std::ostream& out) {
  const ArchitectureSpec spec = planned_spec(cfg);
  out << "l=" << spec.base_filter << " m=" << spec.dilated_layers << " receptive_field=" << spec.receptive_field()
      << " T=" << spec.window << " t0=" << spec.conditioning << " horizon=" << spec.horizon
      << " padding=" << spec.padding() << " params=" << param_count(spec) << '\n';
  for (const std::string& line : describe_layers(spec)) out << "  " << line << '\n';
}

}  // namespace wxgen
