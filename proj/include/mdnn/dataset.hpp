// include/mdnn/dataset.hpp

// Copyright 2026  The mdnn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MDNN_DATASET_HPP_
#define MDNN_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mdnn/discriminative.hpp"
#include "mdnn/linalg.hpp"

namespace mdnn {

enum class Split : std::uint8_t { kTrain = 0, kTest = 1 };

inline constexpr int kUnknownLabel = -1;

/// Aligned two-view samples. Column i of x1 and x2 are the two views of
/// sample i. `labels` holds the ground-truth class (kUnknownLabel if none);
/// `labeled` marks the samples whose label may be used for training, so
/// L = count(labeled) and U = N - L on the train split.
///
/// Feature values are kept float32-representable so that the on-disk
/// container (float32 payload) round-trips bit-exactly.
struct PairedDataset {
  std::string name;
  Matrix x1;  // d1 x N
  Matrix x2;  // d2 x N
  std::vector<int> labels;
  std::vector<std::uint8_t> labeled;
  std::vector<Split> split;
  int class_count = 0;

  // Provenance recorded in the manifest.
  std::string generator;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;

  Eigen::Index size() const { return x1.cols(); }
  std::vector<int> Indices(Split which) const;
  std::vector<int> LabeledIndices(Split which) const;
  PairedDataset Subset(const std::vector<int> &indices) const;

  // Throws kFormat when the invariants above do not hold.
  void Validate() const;
};

struct DatasetManifest {
  std::string name;
  int d1 = 0;
  int d2 = 0;
  std::int64_t n = 0;
  std::int64_t n_train = 0;
  std::int64_t n_test = 0;
  std::int64_t n_labeled = 0;
  int class_count = 0;
  std::vector<std::int64_t> class_histogram;  // samples per class
  std::int64_t n_unknown = 0;                 // samples without a label
  std::string generator;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
  int version = 0;
};

DatasetManifest MakeManifest(const PairedDataset &data);
std::string ManifestSummary(const DatasetManifest &m);

// Concatenates samples of b after a. Views must have matching dimensions.
PairedDataset Concat(const PairedDataset &a, const PairedDataset &b);

// ---- IDX ----

struct IdxTensor {
  std::uint32_t magic = 0;
  std::vector<std::uint32_t> dims;
  std::vector<std::uint8_t> data;
};

// Reads an unsigned-byte IDX file (magic 0x00000801 or 0x00000803).
IdxTensor LoadIdx(const std::filesystem::path &path);
IdxTensor ParseIdx(const std::vector<std::uint8_t> &bytes);

// One image per column, pixels rescaled to [0, 1].
Matrix IdxImages(const IdxTensor &t);
LabelVector IdxLabels(const IdxTensor &t);

// ---- generators ----

// Rotates a square side x side image (column-major pixels in a vector)
// about its center by `angle` radians using bilinear interpolation; samples
// falling outside the source are zero.
Vector RotateImage(const Vector &image, int side, double angle);

// Two-view noisy MNIST for one split: view 1 is the image rotated by an
// angle drawn from U[-pi/2, pi/2]; view 2 is another random image of the
// same class with U[0,1] noise added per pixel and clamped to [0, 1].
PairedDataset GenNoisyMnist(const Matrix &images, const LabelVector &labels,
                            Split split, std::uint64_t seed);

// Both splits of noisy MNIST from the four standard IDX files in `dir`,
// keeping the first `train_limit` / `test_limit` images (negative: all).
PairedDataset LoadNoisyMnist(const std::filesystem::path &dir, std::uint64_t seed,
                             int train_limit = -1, int test_limit = -1);

struct SynthOptions {
  int class_count = 3;
  int d1 = 50;
  int d2 = 50;
  int n_train = 2000;
  int n_test = 1000;
  double separation = 2.0;
  int shared_dim = 5;
  double shared_scale = 1.0;
  double noise = 1.0;
  std::uint64_t seed = 0;
};

// Each sample has a shared Gaussian latent (shared_dim coordinates with
// standard deviation shared_scale) plus its class mean (separation times a
// one-hot code in |C| further coordinates); both views are fixed random
// linear maps of that vector plus independent isotropic noise.
PairedDataset GenSynthGaussian(const SynthOptions &opts);

// Marks exactly n_labeled train samples as labeled, class-proportionally via
// largest remainder. Clears any previous mask.
PairedDataset SelectLabeled(const PairedDataset &data, int n_labeled,
                            std::uint64_t seed);

// ---- container ----

inline constexpr int kDatasetFormatVersion = 1;

void SaveDataset(const PairedDataset &data, const std::filesystem::path &path);
PairedDataset LoadDataset(const std::filesystem::path &path);
DatasetManifest ReadManifest(const std::filesystem::path &path);

// Rows of each CSV are samples; labels file has one integer per line and the
// optional split file one of "train"/"test" per line.
PairedDataset ImportCsv(const std::filesystem::path &view1,
                        const std::filesystem::path &view2,
                        const std::filesystem::path &labels,
                        const std::filesystem::path &split,
                        const std::string &name);

}  // namespace mdnn

#endif  // MDNN_DATASET_HPP_
