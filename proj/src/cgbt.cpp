#include "cgen/cgbt.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "cgen/errors.hpp"

namespace cgen {

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw PreconditionError("cgbt: truncated stream");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

void write_cgbt(std::ostream& os, const BlockedTable& table, std::uint64_t n) {
  os.write("CGBT", 4);
  os.put(static_cast<char>(kCgbtVersion));
  put_u64(os, table.capacity());
  put_u64(os, n);
  for (std::size_t k = 0; k <= table.capacity(); ++k) {
    put_u64(os, k);
    put_u64(os, table.rows(k));
    for (Index e : table.elements(k)) put_u64(os, e);
  }
}

std::string to_cgbt(const BlockedTable& table, std::uint64_t n) {
  std::ostringstream os(std::ios::binary);
  write_cgbt(os, table, n);
  return os.str();
}

CgbtDump read_cgbt(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::string(magic, 4) != "CGBT") {
    throw PreconditionError("cgbt: bad magic");
  }
  const int version = is.get();
  if (version != kCgbtVersion) throw PreconditionError("cgbt: unsupported version");
  CgbtDump d;
  d.K = get_u64(is);
  d.N = get_u64(is);
  for (std::uint64_t k = 0; k <= d.K; ++k) {
    if (get_u64(is) != k) throw PreconditionError("cgbt: bucket out of order");
    const std::uint64_t rows = get_u64(is);
    std::vector<std::uint64_t> elems;
    for (std::uint64_t i = 0; i < rows * k; ++i) elems.push_back(get_u64(is));
    d.rows.push_back(rows);
    d.elements.push_back(std::move(elems));
  }
  if (is.peek() != std::char_traits<char>::eof()) throw PreconditionError("cgbt: trailing bytes");
  return d;
}

CgbtDump parse_cgbt(const std::string& bytes) {
  std::istringstream is(bytes, std::ios::binary);
  return read_cgbt(is);
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace cgen
