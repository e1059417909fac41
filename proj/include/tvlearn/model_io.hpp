// Model persistence: JSON metadata next to a raw row-major little-endian
// float payload, mirroring the dataset layout.

#ifndef TVLEARN_MODEL_IO_HPP
#define TVLEARN_MODEL_IO_HPP

#include <string>

#include "tvlearn/learning.hpp"

namespace tvlearn {

struct ModelMeta {
  int version = 1;
  double lambda = 0.0;
  double lipschitz = 0.0;
  double residual_tolerance = 0.0;
  long iterations = 0;
  double final_residual = 0.0;
  bool converged = true;
};

struct LoadedModel {
  QuadraticModel model;
  ModelMeta meta;
  bool psd_warning = false;  // loaded matrix dips below the PSD tolerance
};

// Writes <base>.json and <base>.bin.
void save_model(const std::string& base_path, const QuadraticModel& model,
                const ModelMeta& meta);

// Accepts the base path or the .json path; re-validates symmetry and flags
// PSD violations beyond round-off.
LoadedModel load_model(const std::string& path);

}  // namespace tvlearn

#endif  // TVLEARN_MODEL_IO_HPP
