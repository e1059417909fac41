// Byte-level helpers shared by the file formats: CRC32 checksums and
// little-endian encoding of 64-bit floats.

#ifndef TVLEARN_UTIL_HPP
#define TVLEARN_UTIL_HPP

#include <cstdint>
#include <cstring>
#include <vector>

namespace tvlearn {

// CRC-32 (IEEE 802.3, polynomial 0xEDB88320).
std::uint32_t crc32(const void* data, std::size_t size);

void store_f64_le(double value, unsigned char out[8]);
double load_f64_le(const unsigned char in[8]);

// Doubles -> little-endian byte stream and back.
std::vector<unsigned char> pack_f64_le(const std::vector<double>& values);
std::vector<double> unpack_f64_le(const std::vector<unsigned char>& bytes);

}  // namespace tvlearn

#endif  // TVLEARN_UTIL_HPP
