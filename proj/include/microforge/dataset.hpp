#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "microforge/core.hpp"

namespace mf {

/// On-disk microstructure dataset: a `manifest.json` plus one flat unsigned
/// 8-bit label file per image (`img_{index:05}.lbl`, row-major).
struct DatasetManifest {
  int schema_version = 1;
  int width = 32;
  int height = 32;
  std::uint64_t provenance_seed = 0;
  int n_images = 0;
  // legend is fixed by the label enum: 0 ferrite, 1 variant1, 2 variant2
};

std::string image_filename(int index);

void write_dataset_manifest(const std::filesystem::path& dir, const DatasetManifest& m);
DatasetManifest read_dataset_manifest(const std::filesystem::path& dir);

void write_image(const std::filesystem::path& dir, int index, const MicrostructureImage& img);
MicrostructureImage read_image(const std::filesystem::path& dir, int index, int width = 32, int height = 32);

std::vector<MicrostructureImage> read_all_images(const std::filesystem::path& dir);

/// P3 portable pixmap preview, Fig-style colors: variant1 red, variant2 green,
/// ferrite blue.
void write_ppm(const std::filesystem::path& file, const MicrostructureImage& img);

}  // namespace mf
