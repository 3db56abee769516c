// SPDX-License-Identifier: Apache-2.0
//
// Small text helpers shared by the file readers and writers.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wxgen {

std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split(std::string_view line, char delimiter);
/// Splits on runs of spaces and tabs.
std::vector<std::string_view> split_whitespace(std::string_view line);
std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

/// Strict decimal parse of the whole field; throws FormatError naming `what`.
double parse_double(std::string_view field, std::string_view what);
long long parse_integer(std::string_view field, std::string_view what);

/// Shortest text that round-trips to the same double.
std::string format_real(double value);
/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace wxgen
