#include "tvlearn/util.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace tvlearn {

namespace {

std::array<std::uint32_t, 256> make_crc_table() {
  std::array<std::uint32_t, 256> table{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    table[i] = c;
  }
  return table;
}

}  // namespace

std::uint32_t crc32(const void* data, std::size_t size) {
  static const auto table = make_crc_table();
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint32_t c = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < size; ++i) c = table[(c ^ bytes[i]) & 0xFFu] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

void store_f64_le(double value, unsigned char out[8]) {
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(bits >> (8 * i));
}

double load_f64_le(const unsigned char in[8]) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(in[i]) << (8 * i);
  double value;
  std::memcpy(&value, &bits, 8);
  return value;
}

std::vector<unsigned char> pack_f64_le(const std::vector<double>& values) {
  std::vector<unsigned char> bytes(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) store_f64_le(values[i], &bytes[i * 8]);
  return bytes;
}

std::vector<double> unpack_f64_le(const std::vector<unsigned char>& bytes) {
  if (bytes.size() % 8 != 0)
    throw std::runtime_error("unpack_f64_le: byte count not a multiple of 8");
  std::vector<double> values(bytes.size() / 8);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = load_f64_le(&bytes[i * 8]);
  return values;
}

}  // namespace tvlearn
