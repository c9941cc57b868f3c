#include "selberg/table_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace selberg {
namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T)))
    throw std::runtime_error("binary cache: truncated input");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

constexpr char kMagic[4] = {'S', 'L', 'B', 'C'};

}  // namespace

void write_csv(const CoefficientTable& table, std::ostream& out) {
  out << "m,A\n";
  char buffer[64];
  const auto values = table.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buffer, sizeof buffer, "%zu,%.17g\n", i + 1, values[i]);
    out << buffer;
  }
}

void write_binary(const CoefficientTable& table, std::ostream& out) {
  out.write(kMagic, 4);
  put_le<std::uint32_t>(out, kBinaryCacheVersion);
  put_le<std::uint64_t>(out, table.x_max());
  for (double v : table.values()) put_le<double>(out, v);
}

CoefficientTable read_binary(std::istream& in, std::string spec_name) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("binary cache: bad magic (expected SLBC)");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kBinaryCacheVersion)
    throw std::runtime_error("binary cache: unsupported version " + std::to_string(version));
  const auto x_max = get_le<std::uint64_t>(in);
  if (x_max == 0) throw std::runtime_error("binary cache: empty table");
  std::vector<double> values;
  values.reserve(x_max);
  for (std::uint64_t i = 0; i < x_max; ++i) values.push_back(get_le<double>(in));
  return CoefficientTable::from_values(std::move(spec_name), std::move(values));
}

}  // namespace selberg
