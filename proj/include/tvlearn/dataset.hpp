// Patch dataset construction and persistence.
//
// A dataset is a JSON manifest next to a raw payload of little-endian 64-bit
// floats; each patch stores its ground-truth values followed by its noisy
// values, row-major. The manifest carries a CRC32 of the payload, the noise
// settings, and the generator name, so a load can be validated byte-for-byte.

#ifndef TVLEARN_DATASET_HPP
#define TVLEARN_DATASET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tvlearn/grid.hpp"
#include "tvlearn/pgm.hpp"

namespace tvlearn {

struct PatchPair {
  ScalarField ground_truth;
  ScalarField noisy;
};

struct TrainingSet {
  int patch_width = 0;
  std::vector<PatchPair> pairs;
};

struct DatasetManifest {
  int version = 1;
  int patch_size = 0;
  long count = 0;
  double noise_variance = 0.0;
  std::uint64_t seed = 0;
  std::string noise_algorithm = "mt19937_64-box-muller";
  bool clipped = false;  // noisy values are stored unclipped
  std::string source;
  std::string payload;  // payload filename, relative to the manifest
  std::uint32_t payload_crc32 = 0;
  std::uint64_t payload_bytes = 0;
};

struct PatchDataset {
  DatasetManifest manifest;
  TrainingSet data;
};

// Row-major sliding-window tiles of size p x p at the given stride; partial
// border tiles are discarded. Throws if the image is smaller than p in either
// dimension.
std::vector<ScalarField> extract_patches(const GrayImage& image, int p, int stride);

// u plus i.i.d. Gaussian noise of the given variance from a mt19937_64
// Box-Muller stream seeded by `seed`. No clipping to [0, 1].
ScalarField add_noise(const ScalarField& u, double variance, std::uint64_t seed);

// Writes <base>.json and <base>.bin. The manifest's payload fields are
// filled in from the data.
void save_dataset(const std::string& base_path, PatchDataset& dataset);

// Accepts the base path or the .json path. Validates version, counts, sizes
// and the payload checksum.
PatchDataset load_dataset(const std::string& path);

}  // namespace tvlearn

#endif  // TVLEARN_DATASET_HPP
