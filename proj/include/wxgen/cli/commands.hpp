// SPDX-License-Identifier: Apache-2.0
//
// Subcommand bodies. Each writes its report to `out` and throws on failure;
// the executable turns exceptions into a message and a nonzero status.

#pragma once

#include <iosfwd>
#include <string>

#include "wxgen/cli/config.hpp"
#include "wxgen/weather_data.hpp"

namespace wxgen {

/// Reads .met files with the weather-file parser, anything else as CSV.
WeatherSeries load_weather(const std::string& path);

void cmd_train(const RunConfig& cfg, std::ostream& out);
void cmd_generate(const RunConfig& cfg, std::ostream& out);
void cmd_baseline(const RunConfig& cfg, std::ostream& out);
void cmd_evaluate(const RunConfig& cfg, std::ostream& out);
void cmd_inspect(const RunConfig& cfg, std::ostream& out);

/// Output locations under paths.out.
std::string generated_ensemble_path(const RunConfig& cfg);
std::string baseline_ensemble_path(const RunConfig& cfg);

}  // namespace wxgen
