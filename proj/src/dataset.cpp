#include "microforge/dataset.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "microforge/errors.hpp"

namespace mf {

using nlohmann::json;

std::string image_filename(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "img_%05d.lbl", index);
  return buf;
}

void write_dataset_manifest(const std::filesystem::path& dir, const DatasetManifest& m) {
  json j;
  j["schema_version"] = m.schema_version;
  j["width"] = m.width;
  j["height"] = m.height;
  j["provenance_seed"] = m.provenance_seed;
  j["n_images"] = m.n_images;
  j["legend"] = {{"0", "ferrite"}, {"1", "variant1"}, {"2", "variant2"}};
  std::ofstream out(dir / "manifest.json");
  if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
  out << j.dump(2) << "\n";
}

DatasetManifest read_dataset_manifest(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw MissingArtifactError("dataset manifest not found in " + dir.string());
  json j;
  in >> j;
  DatasetManifest m;
  m.schema_version = j.at("schema_version").get<int>();
  m.width = j.at("width").get<int>();
  m.height = j.at("height").get<int>();
  m.provenance_seed = j.at("provenance_seed").get<std::uint64_t>();
  m.n_images = j.at("n_images").get<int>();
  return m;
}

void write_image(const std::filesystem::path& dir, int index, const MicrostructureImage& img) {
  std::ofstream out(dir / image_filename(index), std::ios::binary);
  if (!out) throw IoError("cannot write image " + image_filename(index) + " in " + dir.string());
  out.write(reinterpret_cast<const char*>(img.labels.data()), static_cast<std::streamsize>(img.labels.size()));
}

MicrostructureImage read_image(const std::filesystem::path& dir, int index, int width, int height) {
  std::ifstream in(dir / image_filename(index), std::ios::binary);
  if (!in) throw MissingArtifactError("image not found: " + (dir / image_filename(index)).string());
  MicrostructureImage img(width, height);
  in.read(reinterpret_cast<char*>(img.labels.data()), static_cast<std::streamsize>(img.labels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.labels.size())) {
    throw IoError("truncated image file: " + image_filename(index));
  }
  for (auto l : img.labels) {
    if (l > 2) throw IoError("invalid label value in " + image_filename(index));
  }
  return img;
}

std::vector<MicrostructureImage> read_all_images(const std::filesystem::path& dir) {
  DatasetManifest m = read_dataset_manifest(dir);
  std::vector<MicrostructureImage> images;
  images.reserve(m.n_images);
  for (int i = 0; i < m.n_images; ++i) {
    images.push_back(read_image(dir, i, m.width, m.height));
  }
  return images;
}

void write_ppm(const std::filesystem::path& file, const MicrostructureImage& img) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << "P3\n" << img.width << " " << img.height << "\n255\n";
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      switch (img.at(x, y)) {
        case kVariant1: out << "255 0 0"; break;
        case kVariant2: out << "0 255 0"; break;
        default: out << "0 0 255"; break;
      }
      out << (x + 1 == img.width ? "\n" : " ");
    }
  }
}

}  // namespace mf
