#include "microforge/core.hpp"

#include <algorithm>
#include <string>

namespace mf {

const char* mode_name(DeformationMode m) {
  switch (m) {
    case DeformationMode::TensileX: return "tensile_x";
    case DeformationMode::TensileY: return "tensile_y";
    case DeformationMode::ShearX: return "shear_x";
    case DeformationMode::ShearY: return "shear_y";
  }
  return "unknown";
}

DeformationMode mode_from_code(int code) {
  if (code < 0 || code >= kNumModes) {
    throw ConfigError("deformation mode code out of range: " + std::to_string(code));
  }
  return static_cast<DeformationMode>(code);
}

MicrostructureImage label_pixels(const Field& phi1, const Field& phi2) {
  if (phi1.width != phi2.width || phi1.height != phi2.height) {
    throw DimensionError("label_pixels: field shapes differ");
  }
  MicrostructureImage img(phi1.width, phi1.height);
  for (std::size_t i = 0; i < phi1.size(); ++i) {
    double p1 = std::clamp(phi1.data[i], 0.0, 1.0);
    double p2 = std::clamp(phi2.data[i], 0.0, 1.0);
    double p0 = 1.0 - p1 - p2;
    // Ferrite wins exact ties, then variant1.
    if (p0 >= p1 && p0 >= p2) {
      img.labels[i] = kFerrite;
    } else if (p1 >= p2) {
      img.labels[i] = kVariant1;
    } else {
      img.labels[i] = kVariant2;
    }
  }
  return img;
}

std::vector<double> one_hot(const MicrostructureImage& image) {
  std::vector<double> t(image.size() * 3, 0.0);
  for (std::size_t i = 0; i < image.size(); ++i) {
    int channel;
    switch (image.labels[i]) {
      case kVariant1: channel = 0; break;
      case kVariant2: channel = 1; break;
      default: channel = 2; break;
    }
    t[i * 3 + channel] = 1.0;
  }
  return t;
}

MicrostructureImage decode_one_hot(const std::vector<double>& tensor, int width, int height) {
  const std::size_t n = static_cast<std::size_t>(width) * height;
  if (tensor.size() != n * 3) {
    throw DimensionError("decode_one_hot: tensor size does not match width*height*3");
  }
  MicrostructureImage img(width, height);
  for (std::size_t i = 0; i < n; ++i) {
    double v1 = tensor[i * 3 + 0];
    double v2 = tensor[i * 3 + 1];
    double f = tensor[i * 3 + 2];
    // Same tie order as label_pixels: ferrite, then variant1.
    if (f >= v1 && f >= v2) {
      img.labels[i] = kFerrite;
    } else if (v1 >= v2) {
      img.labels[i] = kVariant1;
    } else {
      img.labels[i] = kVariant2;
    }
  }
  return img;
}

double martensite_fraction(const MicrostructureImage& image) {
  std::size_t count = 0;
  for (auto l : image.labels) {
    if (l != kFerrite) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(image.size());
}

}  // namespace mf
