#include "kdda/kernels.hpp"

#include <cmath>
#include <string>

namespace kdda {

void KernelSpec::validate() const {
  switch (family) {
    case KernelFamily::rbf:
      if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw InvalidConfig("rbf kernel requires sigma2 > 0");
      break;
    case KernelFamily::polynomial:
      if (degree < 1)
        throw InvalidConfig("polynomial kernel requires degree >= 1");
      break;
    case KernelFamily::sigmoid:
      if (!std::isfinite(offset))
        throw InvalidConfig("sigmoid kernel offset must be finite");
      break;
    case KernelFamily::linear:
      break;
  }
}

const char* kernel_family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::linear: return "linear";
    case KernelFamily::polynomial: return "polynomial";
    case KernelFamily::rbf: return "rbf";
    case KernelFamily::sigmoid: return "sigmoid";
  }
  return "?";
}

KernelFamily kernel_family_from_name(const std::string& name) {
  if (name == "linear") return KernelFamily::linear;
  if (name == "polynomial") return KernelFamily::polynomial;
  if (name == "rbf") return KernelFamily::rbf;
  if (name == "sigmoid") return KernelFamily::sigmoid;
  throw InvalidConfig("unknown kernel family: " + name);
}

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// |x-y|^2 as |x|^2 + |y|^2 - 2<x,y>, clamped at zero so near-duplicate
// inputs cannot produce a negative squared distance.
double squared_distance(std::span<const double> x, std::span<const double> y) {
  const double d = dot(x, x) + dot(y, y) - 2.0 * dot(x, y);
  return d > 0.0 ? d : 0.0;
}

}  // namespace

double eval(const KernelSpec& spec, std::span<const double> x,
            std::span<const double> y) {
  if (x.size() != y.size() || x.empty())
    throw InvalidInput("kernel eval: vectors must share a dimension >= 1");
  spec.validate();
  switch (spec.family) {
    case KernelFamily::linear:
      return dot(x, y);
    case KernelFamily::polynomial:
      return std::pow(dot(x, y) + 1.0, static_cast<double>(spec.degree));
    case KernelFamily::rbf:
      return std::exp(-squared_distance(x, y) / (2.0 * spec.sigma2));
    case KernelFamily::sigmoid:
      return std::tanh(dot(x, y) + spec.offset);
  }
  throw InvalidInput("kernel eval: unknown family");
}

Matrix gram_matrix(const KernelSpec& spec,
                   const std::vector<std::vector<double>>& samples) {
  if (samples.empty()) throw InvalidInput("gram_matrix: no samples");
  const std::size_t dim = samples.front().size();
  for (const auto& s : samples)
    if (s.size() != dim)
      throw InvalidInput("gram_matrix: samples have mixed dimensions");

  const std::size_t n = samples.size();
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      k(i, j) = k(j, i) = eval(spec, samples[i], samples[j]);
  k.check_finite();
  return k;
}

std::vector<double> kernel_vector(const KernelSpec& spec,
                                  const std::vector<std::vector<double>>& train,
                                  std::span<const double> z) {
  if (train.empty()) throw InvalidInput("kernel_vector: empty training set");
  std::vector<double> out(train.size());
  for (std::size_t i = 0; i < train.size(); ++i)
    out[i] = eval(spec, train[i], z);
  return out;
}

}  // namespace kdda
