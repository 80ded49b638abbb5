// src/dataset.cpp

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

#include "mdnn/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mdnn/error.hpp"
#include "mdnn/io.hpp"
#include "mdnn/random.hpp"

namespace mdnn {

namespace {

constexpr char kDatasetMagic[8] = {'M', 'D', 'N', 'N', 'D', 'S', 'E', 'T'};

double ToFloat32(double v) { return static_cast<double>(static_cast<float>(v)); }

void QuantizeToFloat32(Matrix *m) { *m = m->unaryExpr(&ToFloat32); }

std::uint64_t Fnv1a(const std::vector<std::uint8_t> &bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <typename T>
void PutLe(std::vector<std::uint8_t> *out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::uint8_t raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
  out->insert(out->end(), raw, raw + sizeof(T));
}

class ByteReader {
 public:
  ByteReader(const std::vector<std::uint8_t> &bytes, std::string source)
      : bytes_(bytes), source_(std::move(source)) {}

  template <typename T>
  T GetLe(const char *what) {
    Need(sizeof(T), what);
    std::uint8_t raw[sizeof(T)];
    std::memcpy(raw, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
    T value;
    std::memcpy(&value, raw, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::uint32_t GetBe32(const char *what) {
    Need(4, what);
    std::uint32_t v = (std::uint32_t{bytes_[pos_]} << 24) | (std::uint32_t{bytes_[pos_ + 1]} << 16) |
                      (std::uint32_t{bytes_[pos_ + 2]} << 8) | std::uint32_t{bytes_[pos_ + 3]};
    pos_ += 4;
    return v;
  }

  void Need(std::size_t n, const char *what) const {
    if (bytes_.size() - pos_ < n) {
      std::ostringstream os;
      os << source_ << ": truncated " << what << " at byte offset " << pos_
         << ": expected " << n << " bytes, " << (bytes_.size() - pos_) << " available";
      Fail(ErrorKind::kFormat, os.str());
    }
  }

  std::size_t pos() const { return pos_; }
  void Skip(std::size_t n) { pos_ += n; }
  const std::uint8_t *here() const { return bytes_.data() + pos_; }

 private:
  const std::vector<std::uint8_t> &bytes_;
  std::string source_;
  std::size_t pos_ = 0;
};

nlohmann::json ManifestToJson(const DatasetManifest &m) {
  nlohmann::json j;
  j["name"] = m.name;
  j["dims"] = {m.d1, m.d2};
  j["N"] = m.n;
  j["n_train"] = m.n_train;
  j["n_test"] = m.n_test;
  j["n_labeled"] = m.n_labeled;
  j["class_count"] = m.class_count;
  j["class_histogram"] = m.class_histogram;
  j["n_unknown"] = m.n_unknown;
  j["generator"] = m.generator;
  j["seed"] = m.seed;
  j["params"] = m.params;
  j["version"] = m.version;
  return j;
}

DatasetManifest ManifestFromJson(const nlohmann::json &j) {
  DatasetManifest m;
  try {
    m.name = j.at("name").get<std::string>();
    m.d1 = j.at("dims").at(0).get<int>();
    m.d2 = j.at("dims").at(1).get<int>();
    m.n = j.at("N").get<std::int64_t>();
    m.n_train = j.at("n_train").get<std::int64_t>();
    m.n_test = j.at("n_test").get<std::int64_t>();
    m.n_labeled = j.at("n_labeled").get<std::int64_t>();
    m.class_count = j.at("class_count").get<int>();
    m.class_histogram = j.at("class_histogram").get<std::vector<std::int64_t>>();
    m.n_unknown = j.at("n_unknown").get<std::int64_t>();
    m.generator = j.at("generator").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.params = j.at("params").get<std::map<std::string, double>>();
    m.version = j.at("version").get<int>();
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorKind::kFormat, std::string("malformed manifest: ") + e.what());
  }
  return m;
}

void CheckManifestConsistency(const DatasetManifest &m) {
  std::int64_t sum = m.n_unknown;
  for (auto c : m.class_histogram) sum += c;
  if (sum != m.n) {
    std::ostringstream os;
    os << "manifest histogram sums to " << sum << " but N = " << m.n;
    Fail(ErrorKind::kFormat, os.str());
  }
  if (m.n_train + m.n_test != m.n) Fail(ErrorKind::kFormat, "manifest split counts do not sum to N");
  if (static_cast<int>(m.class_histogram.size()) != m.class_count)
    Fail(ErrorKind::kFormat, "manifest histogram length differs from class_count");
}

}  // namespace

// ---------------------------------------------------------------------------
// PairedDataset

std::vector<int> PairedDataset::Indices(Split which) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < split.size(); ++i)
    if (split[i] == which) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> PairedDataset::LabeledIndices(Split which) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < split.size(); ++i)
    if (split[i] == which && labeled[i]) out.push_back(static_cast<int>(i));
  return out;
}

PairedDataset PairedDataset::Subset(const std::vector<int> &indices) const {
  PairedDataset out;
  out.name = name;
  out.class_count = class_count;
  out.generator = generator;
  out.seed = seed;
  out.params = params;
  const auto n = static_cast<Eigen::Index>(indices.size());
  out.x1.resize(x1.rows(), n);
  out.x2.resize(x2.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const int i = indices[k];
    if (i < 0 || i >= size()) Fail(ErrorKind::kShape, "subset index out of range");
    out.x1.col(k) = x1.col(i);
    out.x2.col(k) = x2.col(i);
    out.labels.push_back(labels[i]);
    out.labeled.push_back(labeled[i]);
    out.split.push_back(split[i]);
  }
  return out;
}

void PairedDataset::Validate() const {
  const auto n = static_cast<std::size_t>(x1.cols());
  if (static_cast<std::size_t>(x2.cols()) != n)
    Fail(ErrorKind::kFormat, "views have different sample counts");
  if (labels.size() != n || labeled.size() != n || split.size() != n)
    Fail(ErrorKind::kFormat, "label, mask or split arrays do not match sample count");
  if (!x1.allFinite() || !x2.allFinite()) Fail(ErrorKind::kFormat, "non-finite feature values");
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] < kUnknownLabel || labels[i] >= class_count) {
      Fail(ErrorKind::kFormat, "label " + std::to_string(labels[i]) + " of sample " +
                                   std::to_string(i) + " outside [0, class_count)");
    }
    if (labeled[i] && labels[i] == kUnknownLabel)
      Fail(ErrorKind::kFormat, "sample " + std::to_string(i) + " is marked labeled but has no label");
  }
}

DatasetManifest MakeManifest(const PairedDataset &data) {
  DatasetManifest m;
  m.name = data.name;
  m.d1 = static_cast<int>(data.x1.rows());
  m.d2 = static_cast<int>(data.x2.rows());
  m.n = data.size();
  m.class_count = data.class_count;
  m.class_histogram.assign(data.class_count, 0);
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    if (data.labels[i] == kUnknownLabel)
      ++m.n_unknown;
    else
      ++m.class_histogram[data.labels[i]];
    if (data.split[i] == Split::kTrain) ++m.n_train;
    else ++m.n_test;
    if (data.labeled[i]) ++m.n_labeled;
  }
  m.generator = data.generator;
  m.seed = data.seed;
  m.params = data.params;
  m.version = kDatasetFormatVersion;
  return m;
}

std::string ManifestSummary(const DatasetManifest &m) {
  std::ostringstream os;
  os << "dataset " << m.name << " (" << m.generator << ", seed " << m.seed << ")\n"
     << "  dims " << m.d1 << "+" << m.d2 << ", N=" << m.n << " split " << m.n_train << "/"
     << m.n_test << ", labeled " << m.n_labeled << "\n  classes " << m.class_count << ":";
  for (auto c : m.class_histogram) os << ' ' << c;
  if (m.n_unknown > 0) os << " (+" << m.n_unknown << " unlabeled)";
  return os.str();
}

PairedDataset Concat(const PairedDataset &a, const PairedDataset &b) {
  if (a.x1.rows() != b.x1.rows() || a.x2.rows() != b.x2.rows())
    Fail(ErrorKind::kShape, "cannot concatenate datasets with different view dimensions");
  PairedDataset out = a;
  out.x1.conservativeResize(Eigen::NoChange, a.size() + b.size());
  out.x2.conservativeResize(Eigen::NoChange, a.size() + b.size());
  out.x1.rightCols(b.size()) = b.x1;
  out.x2.rightCols(b.size()) = b.x2;
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  out.labeled.insert(out.labeled.end(), b.labeled.begin(), b.labeled.end());
  out.split.insert(out.split.end(), b.split.begin(), b.split.end());
  out.class_count = std::max(a.class_count, b.class_count);
  return out;
}

PairedDataset LoadNoisyMnist(const std::filesystem::path &dir, std::uint64_t seed, int train_limit, int test_limit) {
  auto load = [&](const char *images, const char *labels, int limit, Split split) {
    Matrix x = IdxImages(LoadIdx(dir / images));
    LabelVector y = IdxLabels(LoadIdx(dir / labels));
    if (static_cast<Eigen::Index>(y.size()) != x.cols())
      Fail(ErrorKind::kFormat, std::string(images) + " and " + labels + " disagree on the sample count");
    if (limit >= 0 && limit < x.cols()) {
      x.conservativeResize(Eigen::NoChange, limit);
      y.resize(static_cast<std::size_t>(limit));
    }
    return GenNoisyMnist(x, y, split, seed);
  };
  return Concat(load("train-images-idx3-ubyte", "train-labels-idx1-ubyte", train_limit, Split::kTrain),
                load("t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte", test_limit, Split::kTest));
}

// ---------------------------------------------------------------------------
// IDX

IdxTensor ParseIdx(const std::vector<std::uint8_t> &bytes) {
  ByteReader reader(bytes, "idx");
  IdxTensor t;
  t.magic = reader.GetBe32("magic");
  if (t.magic != 0x00000801 && t.magic != 0x00000803) {
    std::ostringstream os;
    os << "bad IDX magic 0x" << std::hex << t.magic << " at byte offset 0 (expected 0x801 or 0x803)";
    Fail(ErrorKind::kFormat, os.str());
  }
  const std::uint32_t rank = t.magic & 0xff;
  std::size_t count = 1;
  for (std::uint32_t k = 0; k < rank; ++k) {
    t.dims.push_back(reader.GetBe32("dimension size"));
    count *= t.dims.back();
  }
  reader.Need(count, "payload");
  t.data.assign(reader.here(), reader.here() + count);
  return t;
}

IdxTensor LoadIdx(const std::filesystem::path &path) {
  try {
    return ParseIdx(ReadFile(path));
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::kFormat) Fail(ErrorKind::kFormat, path.string() + ": " + e.what());
    throw;
  }
}

Matrix IdxImages(const IdxTensor &t) {
  if (t.magic != 0x00000803 || t.dims.size() != 3)
    Fail(ErrorKind::kFormat, "IDX tensor is not a rank-3 image file");
  const Eigen::Index n = t.dims[0];
  const Eigen::Index pixels = static_cast<Eigen::Index>(t.dims[1]) * t.dims[2];
  Matrix images(pixels, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index p = 0; p < pixels; ++p)
      images(p, i) = ToFloat32(t.data[i * pixels + p] / 255.0);
  return images;
}

LabelVector IdxLabels(const IdxTensor &t) {
  if (t.magic != 0x00000801 || t.dims.size() != 1)
    Fail(ErrorKind::kFormat, "IDX tensor is not a rank-1 label file");
  return LabelVector(t.data.begin(), t.data.end());
}

// ---------------------------------------------------------------------------
// Generators

Vector RotateImage(const Vector &image, int side, double angle) {
  if (image.size() != static_cast<Eigen::Index>(side) * side)
    Fail(ErrorKind::kShape, "image size is not side*side");
  const double center = (side - 1) / 2.0;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  auto pixel = [&](int row, int col) -> double {
    if (row < 0 || col < 0 || row >= side || col >= side) return 0.0;
    return image(row * side + col);
  };
  Vector out(image.size());
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      // Inverse map: rotate the output coordinate back by -angle.
      const double dx = col - center;
      const double dy = row - center;
      const double sx = c * dx + s * dy + center;
      const double sy = -s * dx + c * dy + center;
      const double fx = std::floor(sx);
      const double fy = std::floor(sy);
      const double ax = sx - fx;
      const double ay = sy - fy;
      const int x0 = static_cast<int>(fx);
      const int y0 = static_cast<int>(fy);
      out(row * side + col) = (1 - ay) * ((1 - ax) * pixel(y0, x0) + ax * pixel(y0, x0 + 1)) +
                              ay * ((1 - ax) * pixel(y0 + 1, x0) + ax * pixel(y0 + 1, x0 + 1));
    }
  }
  return out;
}

PairedDataset GenNoisyMnist(const Matrix &images, const LabelVector &labels, Split split,
                            std::uint64_t seed) {
  if (static_cast<std::size_t>(images.cols()) != labels.size())
    Fail(ErrorKind::kShape, "images and labels are not aligned");
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(images.rows()))));
  if (side * side != images.rows()) Fail(ErrorKind::kShape, "images are not square");

  int class_count = 0;
  std::map<int, std::vector<int>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) Fail(ErrorKind::kFormat, "negative MNIST label");
    by_class[labels[i]].push_back(static_cast<int>(i));
    class_count = std::max(class_count, labels[i] + 1);
  }

  Rng rng = MakeRng(seed, split == Split::kTrain ? 101 : 202);
  std::uniform_real_distribution<double> angle_dist(-std::numbers::pi / 2, std::numbers::pi / 2);
  std::uniform_real_distribution<double> noise_dist(0.0, 1.0);

  PairedDataset out;
  out.name = "noisy-mnist";
  out.generator = "noisy-mnist";
  out.seed = seed;
  out.class_count = class_count;
  const Eigen::Index n = images.cols();
  out.x1.resize(images.rows(), n);
  out.x2.resize(images.rows(), n);
  bool warned = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double angle = angle_dist(rng);
    out.x1.col(i) = RotateImage(images.col(i), side, angle);

    const std::vector<int> &peers = by_class[labels[i]];
    int partner = static_cast<int>(i);
    if (peers.size() > 1) {
      // Uniform over the other members of the class.
      std::size_t pick = rng() % (peers.size() - 1);
      if (peers[pick] == i) pick = peers.size() - 1;
      partner = peers[pick];
    } else if (!warned) {
      Warn("class " + std::to_string(labels[i]) + " has a single image; pairing it with itself");
      warned = true;
    }
    for (Eigen::Index p = 0; p < images.rows(); ++p)
      out.x2(p, i) = std::clamp(images(p, partner) + noise_dist(rng), 0.0, 1.0);
  }
  QuantizeToFloat32(&out.x1);
  QuantizeToFloat32(&out.x2);
  out.labels = labels;
  out.labeled.assign(n, 0);
  out.split.assign(n, split);
  return out;
}

PairedDataset GenSynthGaussian(const SynthOptions &o) {
  if (o.class_count < 2 || o.d1 < 1 || o.d2 < 1 || o.n_train < 1 || o.n_test < 0 ||
      o.shared_dim < 0 || o.shared_dim > std::min(o.d1, o.d2) || o.noise < 0 ||
      o.shared_scale < 0) {
    Fail(ErrorKind::kConfig, "invalid synthetic dataset dimensions");
  }
  Rng rng = MakeRng(o.seed, 7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int latent = o.shared_dim + o.class_count;

  auto random_map = [&](int rows) {
    Matrix a(rows, latent);
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = gauss(rng) / std::sqrt(latent);
    return a;
  };
  const Matrix a1 = random_map(o.d1);
  const Matrix a2 = random_map(o.d2);

  auto make_split = [&](int n, Split split) {
    std::vector<int> classes(n);
    for (int i = 0; i < n; ++i) classes[i] = i % o.class_count;
    Shuffle(&classes, &rng);
    Matrix h = Matrix::Zero(latent, n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < o.shared_dim; ++k) h(k, i) = o.shared_scale * gauss(rng);
      h(o.shared_dim + classes[i], i) = o.separation;
    }
    PairedDataset part;
    part.x1 = a1 * h;
    part.x2 = a2 * h;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index p = 0; p < o.d1; ++p) part.x1(p, i) += o.noise * gauss(rng);
      for (Eigen::Index p = 0; p < o.d2; ++p) part.x2(p, i) += o.noise * gauss(rng);
    }
    part.labels = classes;
    part.labeled.assign(n, 0);
    part.split.assign(n, split);
    part.class_count = o.class_count;
    return part;
  };

  PairedDataset out = make_split(o.n_train, Split::kTrain);
  if (o.n_test > 0) out = Concat(out, make_split(o.n_test, Split::kTest));
  QuantizeToFloat32(&out.x1);
  QuantizeToFloat32(&out.x2);
  out.name = "synth";
  out.generator = "synth-gaussian";
  out.seed = o.seed;
  out.params = {{"class_count", o.class_count}, {"d1", o.d1},
                {"d2", o.d2},                   {"n_train", o.n_train},
                {"n_test", o.n_test},           {"separation", o.separation},
                {"shared_dim", o.shared_dim},   {"shared_scale", o.shared_scale},
                {"noise", o.noise}};
  return out;
}

PairedDataset SelectLabeled(const PairedDataset &data, int n_labeled, std::uint64_t seed) {
  std::vector<std::vector<int>> by_class(data.class_count);
  int available = 0;
  for (int i : data.Indices(Split::kTrain)) {
    if (data.labels[i] == kUnknownLabel) continue;
    by_class[data.labels[i]].push_back(i);
    ++available;
  }
  int present = 0;
  for (const auto &members : by_class) present += members.empty() ? 0 : 1;
  if (n_labeled < present) {
    Fail(ErrorKind::kConfig, "cannot label " + std::to_string(n_labeled) +
                                 " samples across " + std::to_string(present) + " classes");
  }
  if (n_labeled > available) {
    Fail(ErrorKind::kConfig, "requested " + std::to_string(n_labeled) + " labels but only " +
                                 std::to_string(available) + " train samples carry one");
  }
  std::vector<int> sizes;
  for (const auto &members : by_class) sizes.push_back(static_cast<int>(members.size()));
  std::vector<int> quota = LargestRemainder(sizes, n_labeled);

  PairedDataset out = data;
  std::fill(out.labeled.begin(), out.labeled.end(), 0);
  Rng rng = MakeRng(seed, 303);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    std::vector<int> members = by_class[c];
    Shuffle(&members, &rng);
    for (int k = 0; k < quota[c]; ++k) out.labeled[members[k]] = 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Container

void SaveDataset(const PairedDataset &data, const std::filesystem::path &path) {
  data.Validate();
  const std::string manifest = ManifestToJson(MakeManifest(data)).dump();

  std::vector<std::uint8_t> payload;
  const auto n = static_cast<std::size_t>(data.size());
  payload.reserve(4 * n * (data.x1.rows() + data.x2.rows()) + 6 * n);
  for (const Matrix *view : {&data.x1, &data.x2})
    for (Eigen::Index i = 0; i < view->cols(); ++i)
      for (Eigen::Index p = 0; p < view->rows(); ++p) PutLe(&payload, static_cast<float>((*view)(p, i)));
  for (int label : data.labels) PutLe(&payload, static_cast<std::int32_t>(label));
  for (auto m : data.labeled) payload.push_back(m ? 1 : 0);
  for (auto s : data.split) payload.push_back(static_cast<std::uint8_t>(s));

  std::vector<std::uint8_t> bytes(kDatasetMagic, kDatasetMagic + 8);
  PutLe(&bytes, static_cast<std::uint32_t>(kDatasetFormatVersion));
  PutLe(&bytes, static_cast<std::uint64_t>(manifest.size()));
  bytes.insert(bytes.end(), manifest.begin(), manifest.end());
  bytes.insert(bytes.end(), payload.begin(), payload.end());
  PutLe(&bytes, Fnv1a(payload));

  WriteFileAtomic(path, std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()));
}

namespace {

DatasetManifest ReadHeader(ByteReader *reader, const std::vector<std::uint8_t> &bytes,
                           const std::string &source) {
  reader->Need(8, "magic");
  if (std::memcmp(bytes.data(), kDatasetMagic, 8) != 0)
    Fail(ErrorKind::kFormat, source + ": not a dataset container (bad magic)");
  reader->Skip(8);
  const auto version = reader->GetLe<std::uint32_t>("version");
  if (version != kDatasetFormatVersion) {
    Fail(ErrorKind::kFormat, source + ": container version " + std::to_string(version) +
                                 ", this build reads version " +
                                 std::to_string(kDatasetFormatVersion));
  }
  const auto length = reader->GetLe<std::uint64_t>("manifest length");
  reader->Need(length, "manifest");
  std::string text(reinterpret_cast<const char *>(reader->here()), length);
  reader->Skip(length);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) Fail(ErrorKind::kFormat, source + ": manifest is not valid JSON");
  DatasetManifest m = ManifestFromJson(j);
  if (m.version != kDatasetFormatVersion)
    Fail(ErrorKind::kFormat, source + ": manifest version mismatch");
  CheckManifestConsistency(m);
  return m;
}

}  // namespace

DatasetManifest ReadManifest(const std::filesystem::path &path) {
  std::vector<std::uint8_t> bytes = ReadFile(path);
  ByteReader reader(bytes, path.string());
  return ReadHeader(&reader, bytes, path.string());
}

PairedDataset LoadDataset(const std::filesystem::path &path) {
  std::vector<std::uint8_t> bytes = ReadFile(path);
  const std::string source = path.string();
  ByteReader reader(bytes, source);
  DatasetManifest m = ReadHeader(&reader, bytes, source);

  const auto n = static_cast<std::size_t>(m.n);
  const std::size_t payload_size = 4 * n * (m.d1 + m.d2) + 4 * n + 2 * n;
  reader.Need(payload_size + 8, "payload");
  std::vector<std::uint8_t> payload(reader.here(), reader.here() + payload_size);
  ByteReader body(payload, source);
  reader.Skip(payload_size);
  const auto checksum = reader.GetLe<std::uint64_t>("checksum");
  if (checksum != Fnv1a(payload)) Fail(ErrorKind::kFormat, source + ": checksum mismatch");

  PairedDataset data;
  data.name = m.name;
  data.class_count = m.class_count;
  data.generator = m.generator;
  data.seed = m.seed;
  data.params = m.params;
  data.x1.resize(m.d1, m.n);
  data.x2.resize(m.d2, m.n);
  for (Matrix *view : {&data.x1, &data.x2})
    for (Eigen::Index i = 0; i < view->cols(); ++i)
      for (Eigen::Index p = 0; p < view->rows(); ++p) (*view)(p, i) = body.GetLe<float>("features");
  for (std::size_t i = 0; i < n; ++i) data.labels.push_back(body.GetLe<std::int32_t>("labels"));
  for (std::size_t i = 0; i < n; ++i) data.labeled.push_back(body.GetLe<std::uint8_t>("mask"));
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = body.GetLe<std::uint8_t>("split");
    if (s > 1) Fail(ErrorKind::kFormat, source + ": invalid split tag");
    data.split.push_back(static_cast<Split>(s));
  }
  data.Validate();

  DatasetManifest recomputed = MakeManifest(data);
  if (recomputed.class_histogram != m.class_histogram || recomputed.n_unknown != m.n_unknown ||
      recomputed.n_train != m.n_train || recomputed.n_labeled != m.n_labeled) {
    Fail(ErrorKind::kFormat, source + ": manifest does not match payload");
  }
  return data;
}

namespace {

std::vector<std::vector<double>> ReadCsv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception &) {
        Fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) +
                                     ": not a number: '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      Fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) + ": ragged row");
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix RowsToColumns(const std::vector<std::vector<double>> &rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.front().size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t p = 0; p < rows[i].size(); ++p) m(p, i) = ToFloat32(rows[i][p]);
  return m;
}

}  // namespace

PairedDataset ImportCsv(const std::filesystem::path &view1, const std::filesystem::path &view2,
                        const std::filesystem::path &labels, const std::filesystem::path &split,
                        const std::string &name) {
  PairedDataset data;
  data.name = name;
  data.generator = "csv";
  data.x1 = RowsToColumns(ReadCsv(view1));
  data.x2 = RowsToColumns(ReadCsv(view2));
  if (data.x1.cols() != data.x2.cols())
    Fail(ErrorKind::kFormat, "view files have different row counts");
  const auto n = static_cast<std::size_t>(data.x1.cols());

  std::ifstream lin(labels);
  if (!lin) Fail(ErrorKind::kIo, "cannot open " + labels.string());
  std::string token;
  while (lin >> token) data.labels.push_back(std::stoi(token));
  if (data.labels.size() != n) Fail(ErrorKind::kFormat, "label count does not match view rows");
  for (int y : data.labels) data.class_count = std::max(data.class_count, y + 1);

  data.split.assign(n, Split::kTrain);
  if (!split.empty()) {
    std::ifstream sin(split);
    if (!sin) Fail(ErrorKind::kIo, "cannot open " + split.string());
    std::size_t i = 0;
    while (sin >> token) {
      if (i >= n) Fail(ErrorKind::kFormat, "split file longer than dataset");
      if (token == "train") data.split[i] = Split::kTrain;
      else if (token == "test") data.split[i] = Split::kTest;
      else Fail(ErrorKind::kFormat, "unknown split tag '" + token + "'");
      ++i;
    }
    if (i != n) Fail(ErrorKind::kFormat, "split file shorter than dataset");
  }
  data.labeled.assign(n, 0);
  data.Validate();
  return data;
}

}  // namespace mdnn
