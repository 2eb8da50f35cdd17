#pragma once

// Binary snapshots: a 64-byte little-endian header
//
//   offset  0  char[4]  "CHNS"
//   offset  4  u32      format version (1)
//   offset  8  u32      dimension
//   offset 12  u32      M
//   offset 16  f64      time
//   offset 24  u32      number of fields (3 in 1D, 4 in 2D)
//   offset 28  zero padding
//
// followed by the fields rho, m_1, [m_2,] q as little-endian doubles in the
// grid's flat order.  A plain-text ".meta" file sits next to each snapshot.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "chns/core/errors.hpp"
#include "chns/core/fields.hpp"

#ifndef CHNS_BUILD_ID
#define CHNS_BUILD_ID "unknown"
#endif

namespace chns {

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 64;

struct Snapshot {
  double t = 0.0;
  State state;
};

namespace detail {

inline void put_u32(unsigned char* p, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) p[b] = static_cast<unsigned char>(v >> (8 * b));
}
inline void put_u64(unsigned char* p, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) p[b] = static_cast<unsigned char>(v >> (8 * b));
}
inline std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(p[b]) << (8 * b);
  return v;
}
inline std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return v;
}

}  // namespace detail

inline std::vector<unsigned char> encode_snapshot(const State& s, double t) {
  const Grid& g = s.grid();
  const auto nf = static_cast<std::size_t>(s.components());
  std::vector<unsigned char> buf(kSnapshotHeaderBytes + nf * g.size() * 8, 0);
  std::memcpy(buf.data(), "CHNS", 4);
  detail::put_u32(buf.data() + 4, kSnapshotVersion);
  detail::put_u32(buf.data() + 8, static_cast<std::uint32_t>(g.dim()));
  detail::put_u32(buf.data() + 12, static_cast<std::uint32_t>(g.M()));
  detail::put_u64(buf.data() + 16, std::bit_cast<std::uint64_t>(t));
  detail::put_u32(buf.data() + 24, static_cast<std::uint32_t>(nf));
  unsigned char* p = buf.data() + kSnapshotHeaderBytes;
  for (std::size_t f = 0; f < nf; ++f)
    for (double v : s.component(static_cast<int>(f))) {
      detail::put_u64(p, std::bit_cast<std::uint64_t>(v));
      p += 8;
    }
  return buf;
}

inline Snapshot decode_snapshot(const std::vector<unsigned char>& buf) {
  if (buf.size() < kSnapshotHeaderBytes) throw FormatError("snapshot shorter than its header");
  if (std::memcmp(buf.data(), "CHNS", 4) != 0) throw FormatError("bad snapshot magic");
  const std::uint32_t version = detail::get_u32(buf.data() + 4);
  if (version != kSnapshotVersion) throw FormatError("unsupported snapshot version " + std::to_string(version));
  const std::uint32_t dim = detail::get_u32(buf.data() + 8);
  const std::uint32_t M = detail::get_u32(buf.data() + 12);
  const std::uint32_t nf = detail::get_u32(buf.data() + 24);
  if ((dim != 1 && dim != 2) || M == 0) throw FormatError("bad snapshot grid");
  if (nf != dim + 2) throw FormatError("field count does not match dimension");
  const Grid g(static_cast<int>(dim), static_cast<int>(M));
  if (buf.size() != kSnapshotHeaderBytes + nf * g.size() * 8) throw FormatError("snapshot size does not match header");
  Snapshot snap;
  snap.t = std::bit_cast<double>(detail::get_u64(buf.data() + 16));
  snap.state = State(g);
  const unsigned char* p = buf.data() + kSnapshotHeaderBytes;
  for (std::uint32_t f = 0; f < nf; ++f)
    for (double& v : snap.state.component(static_cast<int>(f))) {
      v = std::bit_cast<double>(detail::get_u64(p));
      p += 8;
    }
  return snap;
}

inline void write_snapshot(const std::string& path, const State& s, double t) {
  const auto buf = encode_snapshot(s, t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw FormatError("failed writing '" + path + "'");
}

inline Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(buf);
}

/// Sidecar text: time, seed, build id and the echoed configuration.
inline void write_snapshot_meta(const std::string& path, double t, unsigned long long seed,
                                const std::string& config_echo) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  char tb[64];
  std::snprintf(tb, sizeof tb, "%.17g", t);
  out << "t = " << tb << "\nseed = " << seed << "\nbuild = " << CHNS_BUILD_ID << "\n# config\n" << config_echo;
}

}  // namespace chns
