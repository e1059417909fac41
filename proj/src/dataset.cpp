#include "tvlearn/dataset.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "tvlearn/util.hpp"

namespace tvlearn {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<ScalarField> extract_patches(const GrayImage& image, int p, int stride) {
  if (p < 1) throw std::invalid_argument("extract_patches: patch size must be >= 1");
  if (stride < 1) throw std::invalid_argument("extract_patches: stride must be >= 1");
  if (image.rows < p || image.cols < p)
    throw std::invalid_argument("extract_patches: image too small for patch size");

  std::vector<ScalarField> patches;
  for (int i = 0; i + p <= image.rows; i += stride) {
    for (int j = 0; j + p <= image.cols; j += stride) {
      ScalarField patch(p);
      for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) patch.at(r, c) = image.at(i + r, j + c);
      patches.push_back(std::move(patch));
    }
  }
  return patches;
}

ScalarField add_noise(const ScalarField& u, double variance, std::uint64_t seed) {
  if (variance < 0.0) throw std::invalid_argument("add_noise: variance must be >= 0");
  ScalarField out = u;
  if (variance == 0.0) return out;

  const double sigma = std::sqrt(variance);
  std::mt19937_64 rng(seed);
  // Box-Muller over the fully specified mt19937_64 stream keeps runs
  // reproducible for a fixed platform; the generator name is recorded in the
  // dataset manifest.
  const auto uniform01 = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;  // (0, 1]
  };
  const std::size_t n = out.values.size();
  for (std::size_t i = 0; i < n; i += 2) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    out.values[i] += sigma * r * std::cos(angle);
    if (i + 1 < n) out.values[i + 1] += sigma * r * std::sin(angle);
  }
  return out;
}

namespace {

std::string strip_json_suffix(const std::string& path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
    return path.substr(0, path.size() - 5);
  return path;
}

std::vector<unsigned char> read_all_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("dataset: cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return bytes;
}

void write_all_bytes(const std::string& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("dataset: cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("dataset: write failed for " + path);
}

}  // namespace

void save_dataset(const std::string& base_path, PatchDataset& dataset) {
  auto& m = dataset.manifest;
  const auto& data = dataset.data;
  if (data.pairs.empty()) throw std::invalid_argument("save_dataset: empty dataset");
  if (data.patch_width < 2) throw std::invalid_argument("save_dataset: patch size must be >= 2");
  for (const auto& pair : data.pairs)
    if (pair.ground_truth.width != data.patch_width || pair.noisy.width != data.patch_width)
      throw std::invalid_argument("save_dataset: inconsistent patch dimensions");

  const std::string base = strip_json_suffix(base_path);
  std::vector<double> payload;
  payload.reserve(data.pairs.size() * 2 * data.patch_width * data.patch_width);
  for (const auto& pair : data.pairs) {
    payload.insert(payload.end(), pair.ground_truth.values.begin(), pair.ground_truth.values.end());
    payload.insert(payload.end(), pair.noisy.values.begin(), pair.noisy.values.end());
  }
  const auto bytes = pack_f64_le(payload);

  m.patch_size = data.patch_width;
  m.count = static_cast<long>(data.pairs.size());
  m.payload = fs::path(base).filename().string() + ".bin";
  m.payload_crc32 = crc32(bytes.data(), bytes.size());
  m.payload_bytes = bytes.size();

  write_all_bytes(base + ".bin", bytes);

  json j{{"format", "tvlearn-dataset"},
         {"version", m.version},
         {"patch_size", m.patch_size},
         {"count", m.count},
         {"noise_variance", m.noise_variance},
         {"seed", m.seed},
         {"noise_algorithm", m.noise_algorithm},
         {"clipped", m.clipped},
         {"source", m.source},
         {"payload", m.payload},
         {"payload_crc32", m.payload_crc32},
         {"payload_bytes", m.payload_bytes}};
  std::ofstream out(base + ".json");
  if (!out) throw std::runtime_error("dataset: cannot write " + base + ".json");
  out << j.dump(2) << "\n";
}

PatchDataset load_dataset(const std::string& path) {
  const std::string base = strip_json_suffix(path);
  std::ifstream in(base + ".json");
  if (!in) throw std::runtime_error("dataset: cannot open " + base + ".json");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("dataset: bad manifest: " + std::string(e.what()));
  }

  if (j.value("format", "") != "tvlearn-dataset")
    throw std::runtime_error("dataset: not a dataset manifest");
  PatchDataset ds;
  auto& m = ds.manifest;
  m.version = j.at("version").get<int>();
  if (m.version != 1) throw std::runtime_error("dataset: version mismatch");
  m.patch_size = j.at("patch_size").get<int>();
  m.count = j.at("count").get<long>();
  m.noise_variance = j.at("noise_variance").get<double>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.noise_algorithm = j.value("noise_algorithm", "");
  m.clipped = j.value("clipped", false);
  m.source = j.value("source", "");
  m.payload = j.at("payload").get<std::string>();
  m.payload_crc32 = j.at("payload_crc32").get<std::uint32_t>();
  m.payload_bytes = j.at("payload_bytes").get<std::uint64_t>();

  if (m.count < 1) throw std::runtime_error("dataset: empty dataset (count < 1)");
  if (m.patch_size < 2) throw std::runtime_error("dataset: bad patch size");

  const auto payload_path = (fs::path(base).parent_path() / m.payload).string();
  const auto bytes = read_all_bytes(payload_path.empty() ? m.payload : payload_path);
  const std::uint64_t expected =
      static_cast<std::uint64_t>(m.count) * 2 * m.patch_size * m.patch_size * 8;
  if (bytes.size() != expected || m.payload_bytes != expected)
    throw std::runtime_error("dataset: truncated file (payload size mismatch)");
  if (crc32(bytes.data(), bytes.size()) != m.payload_crc32)
    throw std::runtime_error("dataset: checksum failure");

  const auto values = unpack_f64_le(bytes);
  const int p = m.patch_size;
  const std::size_t per_patch = static_cast<std::size_t>(p) * p;
  ds.data.patch_width = p;
  ds.data.pairs.resize(m.count);
  std::size_t pos = 0;
  for (auto& pair : ds.data.pairs) {
    pair.ground_truth = ScalarField(p);
    pair.noisy = ScalarField(p);
    std::copy_n(values.begin() + pos, per_patch, pair.ground_truth.values.begin());
    pos += per_patch;
    std::copy_n(values.begin() + pos, per_patch, pair.noisy.values.begin());
    pos += per_patch;
  }
  return ds;
}

}  // namespace tvlearn
