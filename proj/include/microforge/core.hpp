#pragma once

#include <cstdint>
#include <vector>

#include "microforge/errors.hpp"

namespace mf {

/// Four loading cases, stable integer codes 0-3 in every file format.
enum class DeformationMode : int {
  TensileX = 0,
  TensileY = 1,
  ShearX = 2,
  ShearY = 3,
};

constexpr int kNumModes = 4;
const char* mode_name(DeformationMode m);
DeformationMode mode_from_code(int code);

/// Per-pixel phase labels.
enum Label : std::uint8_t {
  kFerrite = 0,
  kVariant1 = 1,
  kVariant2 = 2,
};

/// Scalar field on a width x height grid, row-major.
struct Field {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  Field() = default;
  Field(int w, int h, double fill = 0.0) : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}
  double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const { return data.size(); }
};

/// Categorical microstructure image: one label per pixel.
/// The lingua franca between the solver, the networks and the search.
struct MicrostructureImage {
  int width = 32;
  int height = 32;
  std::vector<std::uint8_t> labels;  // row-major, values in {0,1,2}

  MicrostructureImage() : labels(32 * 32, kFerrite) {}
  MicrostructureImage(int w, int h) : width(w), height(h), labels(static_cast<std::size_t>(w) * h, kFerrite) {}

  std::uint8_t& at(int x, int y) { return labels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const { return labels.size(); }
  bool operator==(const MicrostructureImage& o) const = default;
};

/// Strength / ductility pair extracted from one stress-strain curve.
struct MechanicalProps {
  double sigma_max_mpa = 0.0;  // peak nominal stress
  double eps_lim = 0.0;        // true strain at necking onset
  DeformationMode mode = DeformationMode::TensileX;
};

/// Label a pair of order-parameter fields: per pixel the background fraction
/// is phi0 = 1 - phi1 - phi2 and the pixel takes the label of the largest of
/// (phi1, phi2, phi0). Values are clamped to [0,1] first (explicit Euler may
/// overshoot slightly). Exact ties resolve ferrite first, then variant1.
MicrostructureImage label_pixels(const Field& phi1, const Field& phi2);

/// One-hot tensor view, shape height x width x 3, channel-fastest.
/// Channel order is fixed: 0 = variant1, 1 = variant2, 2 = ferrite.
std::vector<double> one_hot(const MicrostructureImage& image);

/// Inverse of one_hot: per-pixel channel argmax back to labels.
MicrostructureImage decode_one_hot(const std::vector<double>& tensor, int width, int height);

/// (#variant1 + #variant2) / #pixels.
double martensite_fraction(const MicrostructureImage& image);

}  // namespace mf
