#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chronorec/rng.hpp"

namespace chronorec {

/// Dense row-major tensor of 64-bit floats. Immutable shape; entries are
/// validated finite on construction. Sized for small MLP/RNN work, not BLAS.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape);  // zero-filled
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);

  static Tensor scalar(double v);
  static Tensor zeros(std::vector<std::size_t> shape);
  static Tensor full(std::vector<std::size_t> shape, double v);
  static Tensor uniform(std::vector<std::size_t> shape, double lo, double hi,
                        Rng& rng);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool is_scalar() const { return data_.size() == 1; }

  /// Rows/cols of a rank-1 or rank-2 tensor (rank-1 is a column).
  std::size_t rows() const;
  std::size_t cols() const;

  double item() const;  // throws unless size() == 1

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double at(std::size_t r, std::size_t c) const;
  double& at(std::size_t r, std::size_t c);

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
  bool all_finite() const;

  /// this += a * x (shapes must match).
  void axpy(double a, const Tensor& x);
  void scale_inplace(double a);
  void fill(double v);
  double squared_norm() const;

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

// Raw forward kernels. The autodiff tape records these same kernels, so a
// tape-free forward pass is bit-identical to a recorded one.
Tensor matmul(const Tensor& a, const Tensor& b);          // [m×k]·[k×n]
Tensor matvec(const Tensor& a, const Tensor& x);          // [m×k]·[k] → [m]
Tensor add(const Tensor& a, const Tensor& b);             // exact or scalar
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double c);
Tensor relu(const Tensor& a);
Tensor sigmoid(const Tensor& a);
Tensor tanh_t(const Tensor& a);
double sum(const Tensor& a);
double dot(const Tensor& a, const Tensor& b);

enum class Reduction { sum, mean };

/// Squared-error loss between two equal-length tensors; n must be >= 1.
double mse(const Tensor& pred, const Tensor& target, Reduction r);

/// Stable logistic function.
inline double sigmoid_scalar(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace debug_checks {
/// When on, every op result is checked finite (NaN/Inf → NumericError).
void set_enabled(bool on);
bool enabled();
}  // namespace debug_checks

}  // namespace chronorec
