#include "tvlearn/model_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "tvlearn/psd.hpp"
#include "tvlearn/util.hpp"

namespace tvlearn {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string strip_json_suffix(const std::string& path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
    return path.substr(0, path.size() - 5);
  return path;
}

}  // namespace

void save_model(const std::string& base_path, const QuadraticModel& model,
                const ModelMeta& meta) {
  const std::string base = strip_json_suffix(base_path);
  const long m = model.dim();

  std::vector<double> payload(static_cast<std::size_t>(m) * m);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) payload[static_cast<std::size_t>(i) * m + j] = model.a(i, j);
  const auto bytes = pack_f64_le(payload);

  {
    std::ofstream out(base + ".bin", std::ios::binary);
    if (!out) throw std::runtime_error("model: cannot write " + base + ".bin");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("model: write failed for " + base + ".bin");
  }

  json j{{"format", "tvlearn-model"},
         {"version", meta.version},
         {"model_kind", to_string(model.kind)},
         {"patch_size", model.patch_width},
         {"dim", m},
         {"lambda", meta.lambda},
         {"lipschitz", meta.lipschitz},
         {"residual_tolerance", meta.residual_tolerance},
         {"iterations", meta.iterations},
         {"final_residual", meta.final_residual},
         {"converged", meta.converged},
         {"payload", fs::path(base).filename().string() + ".bin"},
         {"payload_crc32", crc32(bytes.data(), bytes.size())},
         {"payload_bytes", bytes.size()}};
  std::ofstream out(base + ".json");
  if (!out) throw std::runtime_error("model: cannot write " + base + ".json");
  out << j.dump(2) << "\n";
}

LoadedModel load_model(const std::string& path) {
  const std::string base = strip_json_suffix(path);
  std::ifstream in(base + ".json");
  if (!in) throw std::runtime_error("model: cannot open " + base + ".json");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("model: bad metadata: " + std::string(e.what()));
  }
  if (j.value("format", "") != "tvlearn-model")
    throw std::runtime_error("model: not a model file");
  if (j.at("version").get<int>() != 1) throw std::runtime_error("model: version mismatch");

  LoadedModel loaded;
  loaded.model.kind = model_kind_from_string(j.at("model_kind").get<std::string>());
  loaded.model.patch_width = j.at("patch_size").get<int>();
  const long m = j.at("dim").get<long>();
  loaded.meta.version = 1;
  loaded.meta.lambda = j.at("lambda").get<double>();
  loaded.meta.lipschitz = j.at("lipschitz").get<double>();
  loaded.meta.residual_tolerance = j.at("residual_tolerance").get<double>();
  loaded.meta.iterations = j.at("iterations").get<long>();
  loaded.meta.final_residual = j.at("final_residual").get<double>();
  loaded.meta.converged = j.at("converged").get<bool>();

  const long expected_dim = loaded.model.kind == ModelKind::quadratic
                                ? static_cast<long>(loaded.model.patch_width) *
                                          loaded.model.patch_width + 1
                                : 1;
  if (m != expected_dim) throw std::runtime_error("model: dimension does not match patch size");

  const auto payload_path =
      (fs::path(base).parent_path() / j.at("payload").get<std::string>()).string();
  std::ifstream pin(payload_path, std::ios::binary);
  if (!pin) throw std::runtime_error("model: cannot open payload " + payload_path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(pin)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() != static_cast<std::size_t>(m) * m * 8)
    throw std::runtime_error("model: truncated payload");
  if (crc32(bytes.data(), bytes.size()) != j.at("payload_crc32").get<std::uint32_t>())
    throw std::runtime_error("model: checksum failure");

  const auto values = unpack_f64_le(bytes);
  loaded.model.a.resize(m, m);
  for (long i = 0; i < m; ++i)
    for (long j2 = 0; j2 < m; ++j2) loaded.model.a(i, j2) = values[static_cast<std::size_t>(i) * m + j2];

  const double scale = 1.0 + loaded.model.a.cwiseAbs().maxCoeff();
  if ((loaded.model.a - loaded.model.a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::runtime_error("model: matrix is not symmetric");
  loaded.psd_warning = min_eigenvalue(loaded.model.a) < -1e-9 * loaded.model.a.norm();
  return loaded;
}

}  // namespace tvlearn
