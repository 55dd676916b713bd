#include "chronorec/tensor.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "chronorec/errors.hpp"

namespace chronorec {

namespace debug_checks {
namespace {
bool g_enabled = true;
}
void set_enabled(bool on) { g_enabled = on; }
bool enabled() { return g_enabled; }
}  // namespace debug_checks

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t s : shape) n *= s;
  return n;
}

std::string shape_str(const Tensor& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.shape().size(); ++i) {
    if (i) s += "x";
    s += std::to_string(t.shape()[i]);
  }
  return s + "]";
}

void check_result(const Tensor& t, const char* op) {
  if (debug_checks::enabled() && !t.all_finite()) {
    throw NumericError(std::string("non-finite result in ") + op);
  }
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(shape_product(shape_), 0.0) {
  for (std::size_t s : shape_) {
    if (s == 0) throw DimensionError("tensor dimensions must be positive");
  }
}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  for (std::size_t s : shape_) {
    if (s == 0) throw DimensionError("tensor dimensions must be positive");
  }
  if (shape_product(shape_) != data_.size()) {
    throw DimensionError("tensor data length does not match shape");
  }
  if (!all_finite()) throw NumericError("non-finite entry in tensor literal");
}

Tensor Tensor::scalar(double v) { return Tensor({1}, {v}); }

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
  return Tensor(std::move(shape));
}

Tensor Tensor::full(std::vector<std::size_t> shape, double v) {
  Tensor t(std::move(shape));
  t.fill(v);
  if (!t.all_finite()) throw NumericError("non-finite fill value");
  return t;
}

Tensor Tensor::uniform(std::vector<std::size_t> shape, double lo, double hi,
                       Rng& rng) {
  Tensor t(std::move(shape));
  for (double& v : t.data_) v = rng.uniform(lo, hi);
  return t;
}

std::size_t Tensor::rows() const {
  if (shape_.empty()) throw DimensionError("rows() of empty tensor");
  return shape_[0];
}

std::size_t Tensor::cols() const {
  if (shape_.size() < 2) return 1;
  return shape_[1];
}

double Tensor::item() const {
  if (data_.size() != 1) {
    throw DimensionError("item() requires a single-element tensor, got " +
                         shape_str(*this));
  }
  return data_[0];
}

double Tensor::at(std::size_t r, std::size_t c) const {
  return data_[r * cols() + c];
}

double& Tensor::at(std::size_t r, std::size_t c) {
  return data_[r * cols() + c];
}

bool Tensor::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Tensor::axpy(double a, const Tensor& x) {
  if (!same_shape(x)) throw DimensionError("axpy shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * x.data_[i];
}

void Tensor::scale_inplace(double a) {
  for (double& v : data_) v *= a;
}

void Tensor::fill(double v) {
  for (double& d : data_) d = v;
}

double Tensor::squared_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return s;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2) {
    throw DimensionError("matmul requires rank-2 tensors");
  }
  const std::size_t m = a.shape()[0], k = a.shape()[1];
  if (b.shape()[0] != k) {
    throw DimensionError("matmul inner dimensions disagree: " + shape_str(a) +
                         " vs " + shape_str(b));
  }
  const std::size_t n = b.shape()[1];
  Tensor c({m, n});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      if (aip == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        c[i * n + j] += aip * b[p * n + j];
      }
    }
  }
  check_result(c, "matmul");
  return c;
}

Tensor matvec(const Tensor& a, const Tensor& x) {
  if (a.rank() != 2 || x.rank() != 1) {
    throw DimensionError("matvec requires matrix and vector");
  }
  const std::size_t m = a.shape()[0], k = a.shape()[1];
  if (x.size() != k) {
    throw DimensionError("matvec inner dimensions disagree: " + shape_str(a) +
                         " vs " + shape_str(x));
  }
  Tensor y({m});
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t p = 0; p < k; ++p) s += a[i * k + p] * x[p];
    y[i] = s;
  }
  check_result(y, "matvec");
  return y;
}

namespace {

enum class Bin { add, sub, mul };

Tensor binary(const Tensor& a, const Tensor& b, Bin op, const char* name) {
  // exact-shape or scalar broadcast only
  if (a.same_shape(b)) {
    Tensor c(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
      switch (op) {
        case Bin::add: c[i] = a[i] + b[i]; break;
        case Bin::sub: c[i] = a[i] - b[i]; break;
        case Bin::mul: c[i] = a[i] * b[i]; break;
      }
    }
    check_result(c, name);
    return c;
  }
  if (b.is_scalar()) {
    const double s = b[0];
    Tensor c(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
      switch (op) {
        case Bin::add: c[i] = a[i] + s; break;
        case Bin::sub: c[i] = a[i] - s; break;
        case Bin::mul: c[i] = a[i] * s; break;
      }
    }
    check_result(c, name);
    return c;
  }
  if (a.is_scalar()) {
    const double s = a[0];
    Tensor c(b);
    for (std::size_t i = 0; i < c.size(); ++i) {
      switch (op) {
        case Bin::add: c[i] = s + b[i]; break;
        case Bin::sub: c[i] = s - b[i]; break;
        case Bin::mul: c[i] = s * b[i]; break;
      }
    }
    check_result(c, name);
    return c;
  }
  throw DimensionError(std::string(name) + " shape mismatch: " + shape_str(a) +
                       " vs " + shape_str(b));
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) { return binary(a, b, Bin::add, "add"); }
Tensor sub(const Tensor& a, const Tensor& b) { return binary(a, b, Bin::sub, "sub"); }
Tensor mul(const Tensor& a, const Tensor& b) { return binary(a, b, Bin::mul, "mul"); }

Tensor scale(const Tensor& a, double c) {
  Tensor r(a);
  r.scale_inplace(c);
  check_result(r, "scale");
  return r;
}

Tensor relu(const Tensor& a) {
  Tensor r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] > 0.0 ? a[i] : 0.0;
  return r;
}

Tensor sigmoid(const Tensor& a) {
  Tensor r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = sigmoid_scalar(a[i]);
  return r;
}

Tensor tanh_t(const Tensor& a) {
  Tensor r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::tanh(a[i]);
  return r;
}

double sum(const Tensor& a) {
  double s = 0.0;
  for (double v : a.data()) s += v;
  return s;
}

double dot(const Tensor& a, const Tensor& b) {
  if (a.size() != b.size()) throw DimensionError("dot length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double mse(const Tensor& pred, const Tensor& target, Reduction r) {
  if (pred.size() == 0) throw EmptyLossError("loss over empty set");
  if (!pred.same_shape(target)) {
    throw DimensionError("mse shape mismatch: " + shape_str(pred) + " vs " +
                         shape_str(target));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    s += d * d;
  }
  return r == Reduction::sum ? s : s / static_cast<double>(pred.size());
}

}  // namespace chronorec
