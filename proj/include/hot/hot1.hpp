#pragma once

// HOT1 tournament files:
//   "HOT1" | u8 d | u32 n (little endian) | ceil(C(n,d)/8) bytes of signs
// Signs are in colex-rank order, least significant bit first within each
// byte, bit 1 = plus. Pad bits in the final byte are zero.

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "hot/errors.hpp"
#include "hot/tournament.hpp"

namespace hot::hot1 {

inline constexpr char magic[4] = {'H', 'O', 'T', '1'};
inline constexpr std::size_t header_size = 9;

inline std::uint64_t payload_size(std::uint32_t d, std::uint32_t n) { return (binomial(n, d) + 7) / 8; }

inline std::vector<std::uint8_t> encode(const Tournament& t) {
  std::vector<std::uint8_t> out;
  const std::uint64_t payload = payload_size(t.d(), t.n());
  out.reserve(header_size + payload);
  out.insert(out.end(), magic, magic + 4);
  out.push_back(static_cast<std::uint8_t>(t.d()));
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(t.n() >> (8 * i)));
  const auto words = t.words();
  for (std::uint64_t b = 0; b < payload; ++b)
    out.push_back(static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8))));
  return out;
}

struct Header {
  std::uint32_t d = 0;
  std::uint32_t n = 0;
};

inline Header decode_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < header_size) throw format_error("HOT1 header truncated");
  if (std::memcmp(bytes.data(), magic, 4) != 0) throw format_error("HOT1 bad magic");
  Header h;
  h.d = bytes[4];
  for (int i = 0; i < 4; ++i) h.n |= std::uint32_t{bytes[5 + i]} << (8 * i);
  if (h.d < 2 || h.d > h.n) throw format_error("HOT1 header has invalid d/n");
  return h;
}

inline Tournament decode(std::span<const std::uint8_t> bytes) {
  const Header h = decode_header(bytes);
  std::uint64_t bits = 0;
  try {
    bits = binomial(h.n, h.d);
  } catch (const size_error&) {
    throw format_error("HOT1 header describes an unrepresentable tournament");
  }
  const std::uint64_t payload = (bits + 7) / 8;
  if (bytes.size() - header_size != payload) throw format_error("HOT1 payload length mismatch");
  std::vector<std::uint64_t> words((bits + 63) / 64, 0);
  for (std::uint64_t b = 0; b < payload; ++b)
    words[b / 8] |= std::uint64_t{bytes[header_size + b]} << (8 * (b % 8));
  if (bits % 8 != 0 && (bytes.back() >> (bits % 8)) != 0) throw format_error("HOT1 non-zero pad bits");
  return Tournament::from_words(h.d, h.n, std::move(words));
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw format_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Tournament read_file(const std::filesystem::path& path) { return decode(read_bytes(path)); }

/// Write-new-then-rename so readers never observe a partial file.
inline void write_bytes_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw format_error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw format_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void write_file(const std::filesystem::path& path, const Tournament& t) {
  write_bytes_atomic(path, encode(t));
}

}  // namespace hot::hot1
