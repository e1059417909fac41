// Minimal PGM (P2/P5) reader and writer, 8- and 16-bit, values scaled to
// [0, 1] on load. Source images may be rectangular; patches are square.

#ifndef TVLEARN_PGM_HPP
#define TVLEARN_PGM_HPP

#include <string>
#include <vector>

#include "tvlearn/grid.hpp"

namespace tvlearn {

struct GrayImage {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major, nominally [0, 1]

  GrayImage() = default;
  GrayImage(int r, int c, double fill = 0.0);
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * cols + j]; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * cols + j]; }
};

GrayImage to_image(const ScalarField& field);

GrayImage read_pgm(const std::string& path);

// Values are clamped to [0, 1] and quantized to maxval levels. Binary (P5)
// output uses big-endian 16-bit samples when maxval > 255, per the format.
void write_pgm(const std::string& path, const GrayImage& image, int maxval = 65535,
               bool binary = true);

}  // namespace tvlearn

#endif  // TVLEARN_PGM_HPP
