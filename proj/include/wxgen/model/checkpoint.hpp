// SPDX-License-Identifier: Apache-2.0
//
// Binary checkpoint of a trained network.
//
//   bytes 0..7   magic "WXGENCKP"
//   u32          format version (currently 1)
//   u64          payload length in bytes
//   payload      l, m, T, t0, horizon (u64), epsilon (f64),
//                channel count (u64) + channels (u64 each),
//                stats: 4 means, 4 std devs (f64), first/last day (i64),
//                trained epochs (u64),
//                parameter count (u64) + parameters (f64)
//   u64          FNV-1a 64 over everything before it
//
// All integers and doubles are little-endian.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "wxgen/model/network.hpp"

namespace wxgen {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct LoadedModel {
  WeatherNet net;
  std::uint64_t trained_epochs = 0;
  /// Hex checksum of the file; recorded in ensemble provenance.
  std::string id;
};

std::string serialize_checkpoint(const WeatherNet& net, std::uint64_t trained_epochs);
LoadedModel parse_checkpoint(std::string_view bytes);

void save_checkpoint(const std::string& path, const WeatherNet& net, std::uint64_t trained_epochs);
LoadedModel load_checkpoint(const std::string& path);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace wxgen
