#include <doctest.h>

#include <cmath>

#include "chronorec/errors.hpp"
#include "chronorec/rng.hpp"
#include "chronorec/tensor.hpp"

using namespace chronorec;

namespace {

// independent triple-loop product used as the matmul oracle
Tensor naive_matmul(const Tensor& a, const Tensor& b) {
  const std::size_t m = a.shape()[0], k = a.shape()[1], n = b.shape()[1];
  Tensor c({m, n});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += a.at(i, p) * b.at(p, j);
      c.at(i, j) = s;
    }
  return c;
}

}  // namespace

TEST_CASE("tensor construction validates shape and finiteness") {
  CHECK_THROWS_AS(Tensor({2, 2}, {1.0, 2.0, 3.0}), DimensionError);
  CHECK_THROWS_AS(Tensor({2}, {1.0, std::nan("")}), NumericError);
  CHECK_THROWS_AS(Tensor({0}), DimensionError);
  Tensor t({2, 3});
  CHECK(t.size() == 6);
  CHECK(t.all_finite());
}

TEST_CASE("matmul identity and hand-computed cases") {
  Tensor eye({2, 2}, {1, 0, 0, 1});
  Tensor a({2, 2}, {1, 2, 3, 4});
  CHECK(matmul(eye, a) == a);

  Tensor row({1, 2}, {1, 2});
  Tensor col({2, 1}, {3, 4});
  Tensor r = matmul(row, col);
  CHECK(r.size() == 1);
  CHECK(r.item() == 11.0);
}

TEST_CASE("matmul matches naive triple-loop oracle") {
  Rng rng(42);
  Tensor a = Tensor::uniform({5, 4}, -2.0, 2.0, rng);
  Tensor b = Tensor::uniform({4, 3}, -2.0, 2.0, rng);
  Tensor c = matmul(a, b);
  Tensor ref = naive_matmul(a, b);
  for (std::size_t i = 0; i < c.size(); ++i)
    CHECK(std::abs(c[i] - ref[i]) < 1e-12);
}

TEST_CASE("matmul rejects shape mismatch") {
  Tensor a({2, 3});
  Tensor b({2, 3});
  CHECK_THROWS_AS(matmul(a, b), DimensionError);
}

TEST_CASE("elementwise kinds") {
  Tensor x({3}, {-1, 0, 2});
  Tensor r = relu(x);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 0.0);
  CHECK(r[2] == 2.0);

  CHECK(sigmoid(Tensor::scalar(0.0)).item() == 0.5);

  // saturation must not produce NaN
  Tensor big({2}, {1e6, -1e6});
  Tensor t = tanh_t(big);
  CHECK(t[0] == 1.0);
  CHECK(t[1] == -1.0);
  Tensor s = sigmoid(big);
  CHECK(s.all_finite());
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] == doctest::Approx(0.0));
}

TEST_CASE("scalar broadcast in add/mul, rejected otherwise") {
  Tensor x({3}, {1, 2, 3});
  Tensor r = add(x, Tensor::scalar(1.0));
  CHECK(r[2] == 4.0);
  Tensor m = mul(Tensor::scalar(2.0), x);
  CHECK(m[1] == 4.0);
  CHECK_THROWS_AS(add(Tensor({3}), Tensor({4})), DimensionError);
}

TEST_CASE("mse sum and mean") {
  Tensor p({2}, {1, 2});
  Tensor t({2}, {0, 0});
  CHECK(mse(p, t, Reduction::sum) == 5.0);
  CHECK(mse(p, t, Reduction::mean) == 2.5);
  CHECK(mse(p, p, Reduction::sum) == 0.0);
  CHECK_THROWS_AS(mse(Tensor(), Tensor(), Reduction::sum), EmptyLossError);
}

TEST_CASE("mse matches scalar-loop oracle") {
  Rng rng(7);
  Tensor p = Tensor::uniform({7}, -5.0, 5.0, rng);
  Tensor t = Tensor::uniform({7}, -5.0, 5.0, rng);
  double expect = 0.0;
  for (std::size_t i = 0; i < 7; ++i)
    expect += (p[i] - t[i]) * (p[i] - t[i]);
  CHECK(std::abs(mse(p, t, Reduction::sum) - expect) < 1e-12);
  CHECK(std::abs(mse(p, t, Reduction::mean) - expect / 7.0) < 1e-12);
}

TEST_CASE("determinism of random construction") {
  Rng a(123), b(123);
  Tensor ta = Tensor::uniform({4, 4}, -1.0, 1.0, a);
  Tensor tb = Tensor::uniform({4, 4}, -1.0, 1.0, b);
  CHECK(ta == tb);
}
