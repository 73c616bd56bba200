#include "polyedge/pnm_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "polyedge/errors.hpp"

namespace polyedge {

namespace {

constexpr long kMaxPixels = 1L << 28;

class HeaderReader {
 public:
  explicit HeaderReader(const std::string& b) : b_(b) {}

  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      const char c = b_[pos_];
      if (c == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long integer(const char* what) {
    skip_space_and_comments();
    if (pos_ >= b_.size() || !std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
      throw IoError(std::string("malformed PGM: expected ") + what);
    }
    long v = 0;
    while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
      v = v * 10 + (b_[pos_] - '0');
      if (v > kMaxPixels) throw IoError(std::string("PGM ") + what + " overflows");
      ++pos_;
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

 private:
  const std::string& b_;
  std::size_t pos_ = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

unsigned char quantize(double v) {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 255.0) return 255;
  return static_cast<unsigned char>(std::floor(v + 0.5));
}

}  // namespace

Image parse_pgm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw IoError("not a P2/P5 PGM file");
  }
  const bool ascii = bytes[1] == '2';
  HeaderReader hr(bytes);
  hr.advance();
  hr.advance();
  const long width = hr.integer("width");
  const long height = hr.integer("height");
  const long maxval = hr.integer("maxval");
  if (width <= 0 || height <= 0) throw IoError("PGM dimensions must be positive");
  if (width * height > kMaxPixels) throw IoError("PGM dimensions overflow");
  if (maxval != 255) throw IoError("unsupported PGM maxval " + std::to_string(maxval));

  Image img(height, width);
  if (ascii) {
    for (long r = 0; r < height; ++r) {
      for (long c = 0; c < width; ++c) {
        const long v = hr.integer("pixel value");
        if (v > maxval) throw IoError("PGM pixel exceeds maxval");
        img(r, c) = static_cast<double>(v);
      }
    }
    return img;
  }
  // Exactly one whitespace byte separates maxval from the raster.
  if (hr.pos() >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[hr.pos()]))) {
    throw IoError("malformed PGM: missing raster separator");
  }
  const std::size_t start = hr.pos() + 1;
  if (bytes.size() - start < static_cast<std::size_t>(width * height)) {
    throw IoError("PGM raster is truncated");
  }
  for (long r = 0; r < height; ++r) {
    for (long c = 0; c < width; ++c) {
      img(r, c) = static_cast<unsigned char>(bytes[start + static_cast<std::size_t>(r * width + c)]);
    }
  }
  return img;
}

Image read_image(const std::string& path) {
  try {
    return parse_pgm(slurp(path));
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string encode_pgm(const Image& img, bool ascii) {
  std::ostringstream os;
  os << (ascii ? "P2" : "P5") << '\n' << img.cols() << ' ' << img.rows() << "\n255\n";
  std::string out = os.str();
  out.reserve(out.size() + static_cast<std::size_t>(img.size()) * (ascii ? 4 : 1));
  for (Eigen::Index r = 0; r < img.rows(); ++r) {
    for (Eigen::Index c = 0; c < img.cols(); ++c) {
      const unsigned char q = quantize(img(r, c));
      if (ascii) {
        out += std::to_string(q);
        out += (c + 1 == img.cols()) ? '\n' : ' ';
      } else {
        out.push_back(static_cast<char>(q));
      }
    }
  }
  return out;
}

void write_image(const std::string& path, const Image& img) { dump(path, encode_pgm(img)); }

void write_mask(const std::string& path, const EdgeMap& edges) {
  write_image(path, edges.mask.cast<double>() * 255.0);
}

void write_gradmap(const std::string& path, const GradMap& g) {
  write_image(path, g.values * 255.0);
}

Image mosaic(const CoefficientField& x) {
  const int side = x.degree() + 1;
  const Eigen::Index m = x.rows();
  const Eigen::Index n = x.cols();
  const Eigen::ArrayXXd mags = x.stacked().cwiseAbs();
  const double lo = mags.minCoeff();
  const double hi = mags.maxCoeff();
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  Image out = Image::Zero(m * side, n * side);
  for (int k = 0; k < side; ++k) {
    for (int l = 0; l < side; ++l) {
      out.block(k * m, l * n, m, n) = ((x.map(k, l).array().abs() - lo) * scale).matrix();
    }
  }
  return out;
}

void write_mosaic(const std::string& path, const CoefficientField& x) {
  write_image(path, mosaic(x));
}

}  // namespace polyedge
