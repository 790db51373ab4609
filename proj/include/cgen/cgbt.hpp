#pragma once

// CGBT: the binary dump of a blocked table.
//
//   "CGBT"  version:u8  K:u64  N:u64
//   per bucket k = 0..K:  k:u64  rows:u64  rows*k element indices:u64
//
// All integers are little-endian. Elements are 0-based ground-set
// positions; labels are applied when the dump is rendered.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cgen/blocked_table.hpp"

namespace cgen {

inline constexpr std::uint8_t kCgbtVersion = 1;

void write_cgbt(std::ostream& os, const BlockedTable& table, std::uint64_t n);
std::string to_cgbt(const BlockedTable& table, std::uint64_t n);

struct CgbtDump {
  std::uint64_t K = 0;
  std::uint64_t N = 0;
  /// rows[k] holds the row count, elements[k] the row-major indices.
  std::vector<std::uint64_t> rows;
  std::vector<std::vector<std::uint64_t>> elements;

  bool operator==(const CgbtDump&) const = default;
};

/// Throws PreconditionError on a malformed or truncated stream.
CgbtDump read_cgbt(std::istream& is);
CgbtDump parse_cgbt(const std::string& bytes);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace cgen
