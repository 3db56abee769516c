// SPDX-License-Identifier: Apache-2.0

#include "wxgen/model/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>

#include "wxgen/error.hpp"
#include "wxgen/text.hpp"

namespace wxgen {

namespace {

constexpr std::string_view kMagic = "WXGENCKP";
constexpr std::size_t kHeaderSize = 8 + 4 + 8;

class Writer {
 public:
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void raw(std::string_view s) { out_.append(s); }
  std::string& str() { return out_; }

 private:
  void put(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  std::int64_t i64() { return static_cast<std::int64_t>(get(8)); }
  double f64() { return std::bit_cast<double>(get(8)); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::uint64_t get(int bytes) {
    if (remaining() < static_cast<std::size_t>(bytes)) throw TruncationError("checkpoint payload ends early");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string serialize_checkpoint(const WeatherNet& net, std::uint64_t trained_epochs) {
  const ArchitectureSpec& spec = net.spec();
  Writer payload;
  payload.u64(spec.base_filter);
  payload.u64(spec.dilated_layers);
  payload.u64(spec.window);
  payload.u64(spec.conditioning);
  payload.u64(spec.horizon);
  payload.f64(spec.head_offset);
  const auto channels = spec.channels.flat();
  payload.u64(channels.size());
  for (std::size_t c : channels) payload.u64(c);
  const StandardizationStats& stats = net.stats();
  for (double v : stats.mean) payload.f64(v);
  for (double v : stats.std) payload.f64(v);
  payload.i64(to_day_number(stats.first));
  payload.i64(to_day_number(stats.last));
  payload.u64(trained_epochs);
  const auto params = net.parameters().values();
  payload.u64(params.size());
  for (double v : params) payload.f64(v);

  Writer file;
  file.raw(kMagic);
  file.u32(kCheckpointVersion);
  file.u64(payload.str().size());
  file.raw(payload.str());
  const std::uint64_t sum = fnv1a64(file.str());
  file.u64(sum);
  return std::move(file.str());
}

LoadedModel parse_checkpoint(std::string_view bytes) {
  if (bytes.size() < kMagic.size()) throw TruncationError("checkpoint shorter than its header");
  if (bytes.substr(0, kMagic.size()) != kMagic) throw FormatError("not a wxgen checkpoint (bad magic)");
  if (bytes.size() < kHeaderSize) throw TruncationError("checkpoint shorter than its header");
  Reader header(bytes.substr(kMagic.size()));
  const std::uint32_t version = header.u32();
  if (version != kCheckpointVersion) {
    throw VersionError("unsupported checkpoint version " + std::to_string(version) + " (expected " +
                       std::to_string(kCheckpointVersion) + ")");
  }
  const std::uint64_t length = header.u64();
  if (bytes.size() - kHeaderSize < 8 || length > bytes.size() - kHeaderSize - 8) {
    throw TruncationError("checkpoint payload truncated");
  }
  if (bytes.size() != kHeaderSize + length + 8) throw FormatError("trailing bytes after checkpoint");
  const std::string_view covered = bytes.substr(0, kHeaderSize + length);
  const std::uint64_t stored = Reader(bytes.substr(kHeaderSize + length)).u64();
  if (fnv1a64(covered) != stored) throw ChecksumError("checkpoint checksum mismatch");

  Reader in(bytes.substr(kHeaderSize, length));
  ArchitectureSpec spec;
  spec.base_filter = in.u64();
  spec.dilated_layers = in.u64();
  spec.window = in.u64();
  spec.conditioning = in.u64();
  spec.horizon = in.u64();
  spec.head_offset = in.f64();
  const std::uint64_t n_channels = in.u64();
  if (n_channels > in.remaining() / 8) throw TruncationError("checkpoint channel list truncated");
  std::vector<std::size_t> flat(n_channels);
  for (auto& c : flat) c = in.u64();
  spec.channels = ChannelLadder::from_flat(flat, spec.dilated_layers);

  StandardizationStats stats;
  for (double& v : stats.mean) v = in.f64();
  for (double& v : stats.std) v = in.f64();
  stats.first = from_day_number(in.i64());
  stats.last = from_day_number(in.i64());
  const std::uint64_t epochs = in.u64();
  const std::uint64_t n_params = in.u64();

  WeatherNet net(spec, stats);
  auto values = net.parameters().values();
  if (n_params != values.size()) {
    throw DimensionError("checkpoint parameter count", values.size(), static_cast<std::size_t>(n_params));
  }
  for (double& v : values) v = in.f64();
  if (in.remaining() != 0) throw FormatError("unexpected bytes at end of checkpoint payload");
  return {std::move(net), epochs, hex64(stored)};
}

void save_checkpoint(const std::string& path, const WeatherNet& net, std::uint64_t trained_epochs) {
  // Write then rename so a crash never leaves a half-written checkpoint.
  const std::string tmp = path + ".tmp";
  write_file(tmp, serialize_checkpoint(net, trained_epochs));
  std::filesystem::rename(tmp, path);
}

LoadedModel load_checkpoint(const std::string& path) { return parse_checkpoint(read_file(path)); }

}  // namespace wxgen
