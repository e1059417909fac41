#include "tvlearn/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tvlearn {

GrayImage::GrayImage(int r, int c, double fill)
    : rows(r), cols(c), values(static_cast<std::size_t>(r) * c, fill) {
  if (r < 1 || c < 1) throw std::invalid_argument("GrayImage: dimensions must be >= 1");
}

GrayImage to_image(const ScalarField& field) {
  GrayImage img(field.width, field.width);
  img.values = field.values;
  return img;
}

namespace {

// Next whitespace-delimited token, skipping '#' comments (which the format
// allows anywhere in the ASCII sections).
std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  for (;;) {
    const int c = in.peek();
    if (c == EOF) break;
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    in >> tok;
    break;
  }
  if (tok.empty()) throw std::runtime_error(std::string("pgm: truncated ") + what);
  return tok;
}

long parse_long(std::istream& in, const char* what) {
  const std::string tok = next_token(in, what);
  try {
    return std::stol(tok);
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("pgm: invalid ") + what);
  }
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("pgm: cannot open " + path);

  const std::string magic = next_token(in, "header");
  if (magic != "P2" && magic != "P5")
    throw std::runtime_error("pgm: unsupported format " + magic + " in " + path);

  const int cols = static_cast<int>(parse_long(in, "width"));
  const int rows = static_cast<int>(parse_long(in, "height"));
  const int maxval = static_cast<int>(parse_long(in, "maxval"));
  if (cols < 1 || rows < 1) throw std::runtime_error("pgm: bad dimensions in " + path);
  if (maxval < 1 || maxval > 65535) throw std::runtime_error("pgm: bad maxval in " + path);

  GrayImage img(rows, cols);
  const std::size_t n = img.values.size();

  if (magic == "P2") {
    for (std::size_t i = 0; i < n; ++i) {
      const long v = parse_long(in, "pixel data");
      img.values[i] = static_cast<double>(v) / maxval;
    }
  } else {
    in.get();  // single whitespace after maxval
    const int bytes_per = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(n * bytes_per);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
      throw std::runtime_error("pgm: truncated pixel data in " + path);
    for (std::size_t i = 0; i < n; ++i) {
      // Multi-byte samples are big-endian.
      const unsigned v = bytes_per == 1
                             ? raw[i]
                             : (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
      img.values[i] = static_cast<double>(v) / maxval;
    }
  }
  return img;
}

void write_pgm(const std::string& path, const GrayImage& image, int maxval, bool binary) {
  if (maxval < 1 || maxval > 65535) throw std::invalid_argument("write_pgm: bad maxval");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("pgm: cannot write " + path);

  out << (binary ? "P5" : "P2") << "\n"
      << image.cols << " " << image.rows << "\n"
      << maxval << "\n";

  const auto quantize = [&](double v) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    return static_cast<unsigned>(std::lround(clamped * maxval));
  };

  if (binary) {
    std::vector<unsigned char> raw;
    raw.reserve(image.values.size() * (maxval > 255 ? 2 : 1));
    for (const double v : image.values) {
      const unsigned q = quantize(v);
      if (maxval > 255) raw.push_back(static_cast<unsigned char>(q >> 8));
      raw.push_back(static_cast<unsigned char>(q & 0xFF));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  } else {
    for (int i = 0; i < image.rows; ++i) {
      for (int j = 0; j < image.cols; ++j) {
        out << quantize(image.at(i, j)) << (j + 1 < image.cols ? ' ' : '\n');
      }
    }
  }
  if (!out) throw std::runtime_error("pgm: write failed for " + path);
}

}  // namespace tvlearn
