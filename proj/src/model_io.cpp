#include "kdda/model_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "kdda/errors.hpp"

namespace kdda {

namespace {

constexpr char kMagic[8] = {'K', 'D', 'D', 'A', 'M', 'D', 'L', '1'};

enum class ModelKind : std::uint8_t {
  kdda = 1,
  kpca = 2,
  svm = 3,
  ovr = 4,
  pairwise = 5,
  nn = 6,
};

const char* kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kdda: return "kdda";
    case ModelKind::kpca: return "kpca";
    case ModelKind::svm: return "svm";
    case ModelKind::ovr: return "ovr";
    case ModelKind::pairwise: return "pairwise";
    case ModelKind::nn: return "nn";
  }
  return "unknown";
}

class Writer {
 public:
  explicit Writer(const std::string& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot write '" + path + "'");
  }

  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }

  void u64(std::uint64_t v) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) {
      bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    }
    out_.write(bytes, 8);
  }

  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }

  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);  // preserve the exact bit pattern
    u64(bits);
  }

  void reals(const std::vector<double>& v) {
    u64(v.size());
    for (double x : v) f64(x);
  }

  void matrix(const Matrix& m) {
    u64(m.rows());
    u64(m.cols());
    for (double x : m.data()) f64(x);
  }

  void vectors(const std::vector<std::vector<double>>& rows) {
    u64(rows.size());
    u64(rows.empty() ? 0 : rows.front().size());
    for (const auto& row : rows) {
      if (row.size() != (rows.empty() ? 0 : rows.front().size())) {
        throw InvalidInput("cannot serialize ragged sample rows");
      }
      for (double x : row) f64(x);
    }
  }

  void kernel(const KernelSpec& spec) {
    u8(static_cast<std::uint8_t>(spec.family));
    f64(spec.sigma2);
    i64(spec.degree);
    f64(spec.offset);
  }

  void finish() {
    out_.flush();
    if (!out_) throw IoError("write failed for '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw IoError("cannot open '" + path + "'");
  }

  std::uint8_t u8() {
    const int ch = in_.get();
    if (ch == EOF) fail();
    return static_cast<std::uint8_t>(ch);
  }

  std::uint64_t u64() {
    char bytes[8];
    in_.read(bytes, 8);
    if (in_.gcount() != 8) fail();
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i]))
           << (8 * i);
    }
    return v;
  }

  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }

  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

  std::vector<double> reals() {
    const std::uint64_t n = checked_count(u64());
    std::vector<double> v;
    v.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(f64());
    return v;
  }

  Matrix matrix() {
    const std::uint64_t rows = checked_count(u64());
    const std::uint64_t cols = checked_count(u64());
    // A stored matrix always has at least one row and column; reject the
    // rest here so corrupt headers surface as IoError, not InvalidMatrix.
    if (rows == 0 || cols == 0 || rows > (1ull << 32) / cols) fail();
    std::vector<double> data;
    data.reserve(rows * cols);
    for (std::uint64_t i = 0; i < rows * cols; ++i) data.push_back(f64());
    return Matrix(rows, cols, std::move(data));
  }

  std::vector<std::vector<double>> vectors() {
    const std::uint64_t count = checked_count(u64());
    const std::uint64_t dim = checked_count(u64());
    std::vector<std::vector<double>> rows;
    rows.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::vector<double> row;
      row.reserve(dim);
      for (std::uint64_t d = 0; d < dim; ++d) row.push_back(f64());
      rows.push_back(std::move(row));
    }
    return rows;
  }

  KernelSpec kernel() {
    KernelSpec spec;
    const std::uint8_t family = u8();
    if (family > static_cast<std::uint8_t>(KernelFamily::sigmoid)) {
      throw IoError("'" + path_ + "': unknown kernel family tag " +
                    std::to_string(family));
    }
    spec.family = static_cast<KernelFamily>(family);
    spec.sigma2 = f64();
    spec.degree = static_cast<int>(i64());
    spec.offset = f64();
    return spec;
  }

  void expect_header(ModelKind kind) {
    char magic[8];
    in_.read(magic, 8);
    if (in_.gcount() != 8 || std::memcmp(magic, kMagic, 8) != 0) {
      throw IoError("'" + path_ + "' is not a model container");
    }
    const std::uint8_t tag = u8();
    if (tag != static_cast<std::uint8_t>(kind)) {
      const char* found = tag >= 1 && tag <= 6
                              ? kind_name(static_cast<ModelKind>(tag))
                              : "unknown";
      throw IoError("'" + path_ + "' holds a " + found + " model, expected " +
                    kind_name(kind));
    }
  }

 private:
  [[noreturn]] void fail() {
    throw IoError("'" + path_ + "' is truncated or corrupt");
  }

  // Guards reserve() against absurd counts from corrupt headers.
  std::uint64_t checked_count(std::uint64_t n) {
    if (n > (1ull << 32)) fail();
    return n;
  }

  std::string path_;
  std::ifstream in_;
};

void write_header(Writer& w, ModelKind kind) {
  for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u8(static_cast<std::uint8_t>(kind));
}

void write_svm_body(Writer& w, const SvmModel& model) {
  w.vectors(model.support_vectors);
  w.reals(model.dual_coeffs);
  w.u64(model.sv_indices.size());
  for (std::size_t idx : model.sv_indices) w.u64(idx);
  w.f64(model.bias);
  w.kernel(model.kernel);
  w.f64(model.c_cost);
  w.u8(model.converged ? 1 : 0);
}

SvmModel read_svm_body(Reader& r) {
  SvmModel model;
  model.support_vectors = r.vectors();
  model.dual_coeffs = r.reals();
  const std::uint64_t n_indices = r.u64();
  model.sv_indices.reserve(n_indices);
  for (std::uint64_t i = 0; i < n_indices; ++i) {
    model.sv_indices.push_back(static_cast<std::size_t>(r.u64()));
  }
  model.bias = r.f64();
  model.kernel = r.kernel();
  model.c_cost = r.f64();
  model.converged = r.u8() != 0;
  return model;
}

}  // namespace

void save_kdda_model(const std::string& path, const KddaModel& model) {
  Writer w(path);
  write_header(w, ModelKind::kdda);
  w.kernel(model.kernel);
  w.vectors(model.train_samples);
  w.matrix(model.coeffs);
  w.u64(model.m_features);
  w.u8(model.m_clamped ? 1 : 0);
  w.finish();
}

KddaModel load_kdda_model(const std::string& path) {
  Reader r(path);
  r.expect_header(ModelKind::kdda);
  KddaModel model;
  model.kernel = r.kernel();
  model.train_samples = r.vectors();
  model.coeffs = r.matrix();
  model.m_features = static_cast<std::size_t>(r.u64());
  model.m_clamped = r.u8() != 0;
  return model;
}

void save_kpca_model(const std::string& path, const KpcaModel& model) {
  Writer w(path);
  write_header(w, ModelKind::kpca);
  w.kernel(model.kernel);
  w.vectors(model.train_samples);
  w.u8(model.coeffs ? 1 : 0);
  if (model.coeffs) w.matrix(*model.coeffs);
  w.u64(model.m_features);
  w.u8(model.m_clamped ? 1 : 0);
  w.u8(model.degenerate ? 1 : 0);
  w.reals(model.component_variances);
  w.reals(model.train_kernel_means);
  w.f64(model.train_kernel_mean_all);
  w.finish();
}

KpcaModel load_kpca_model(const std::string& path) {
  Reader r(path);
  r.expect_header(ModelKind::kpca);
  KpcaModel model;
  model.kernel = r.kernel();
  model.train_samples = r.vectors();
  if (r.u8() != 0) model.coeffs = r.matrix();
  model.m_features = static_cast<std::size_t>(r.u64());
  model.m_clamped = r.u8() != 0;
  model.degenerate = r.u8() != 0;
  model.component_variances = r.reals();
  model.train_kernel_means = r.reals();
  model.train_kernel_mean_all = r.f64();
  return model;
}

void save_svm_model(const std::string& path, const SvmModel& model) {
  Writer w(path);
  write_header(w, ModelKind::svm);
  write_svm_body(w, model);
  w.finish();
}

SvmModel load_svm_model(const std::string& path) {
  Reader r(path);
  r.expect_header(ModelKind::svm);
  return read_svm_body(r);
}

void save_ovr_model(const std::string& path, const OvrModel& model) {
  Writer w(path);
  write_header(w, ModelKind::ovr);
  w.i64(model.num_classes);
  w.u64(model.models.size());
  for (const auto& sub : model.models) write_svm_body(w, sub);
  w.finish();
}

OvrModel load_ovr_model(const std::string& path) {
  Reader r(path);
  r.expect_header(ModelKind::ovr);
  OvrModel model;
  model.num_classes = static_cast<int>(r.i64());
  const std::uint64_t count = r.u64();
  model.models.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    model.models.push_back(read_svm_body(r));
  }
  return model;
}

void save_pairwise_model(const std::string& path, const PairwiseModel& model) {
  Writer w(path);
  write_header(w, ModelKind::pairwise);
  w.i64(model.num_classes);
  w.u64(model.pairs.size());
  for (const auto& pair : model.pairs) {
    w.i64(pair.pos_class);
    w.i64(pair.neg_class);
    write_svm_body(w, pair.model);
    w.f64(pair.mean_pos);
    w.f64(pair.stddev_pos);
    w.f64(pair.mean_neg);
    w.f64(pair.stddev_neg);
  }
  w.finish();
}

PairwiseModel load_pairwise_model(const std::string& path) {
  Reader r(path);
  r.expect_header(ModelKind::pairwise);
  PairwiseModel model;
  model.num_classes = static_cast<int>(r.i64());
  const std::uint64_t count = r.u64();
  model.pairs.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    PairwiseModel::Pair pair;
    pair.pos_class = static_cast<int>(r.i64());
    pair.neg_class = static_cast<int>(r.i64());
    pair.model = read_svm_body(r);
    pair.mean_pos = r.f64();
    pair.stddev_pos = r.f64();
    pair.mean_neg = r.f64();
    pair.stddev_neg = r.f64();
    model.pairs.push_back(std::move(pair));
  }
  return model;
}

void save_nn_model(const std::string& path, const NnModel& model) {
  Writer w(path);
  write_header(w, ModelKind::nn);
  w.vectors(model.features);
  w.u64(model.labels.size());
  for (int label : model.labels) w.i64(label);
  w.finish();
}

NnModel load_nn_model(const std::string& path) {
  Reader r(path);
  r.expect_header(ModelKind::nn);
  NnModel model;
  model.features = r.vectors();
  const std::uint64_t count = r.u64();
  model.labels.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    model.labels.push_back(static_cast<int>(r.i64()));
  }
  return model;
}

}  // namespace kdda
