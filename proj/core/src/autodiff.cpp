#include "chronorec/autodiff.hpp"

#include <cmath>
#include <string>

#include "chronorec/errors.hpp"

namespace chronorec {

namespace {
constexpr double kProbEps = 1e-12;
}

const Tensor& Gradients::at(ValueId id) const {
  if (!contains(id)) {
    throw Error("no gradient recorded for node " + std::to_string(id));
  }
  return adjoints_[id];
}

Tape::Tape() { nodes_.reserve(128); }

ValueId Tape::push(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<ValueId>(nodes_.size() - 1);
}

void Tape::check_id(ValueId id) const {
  if (id >= nodes_.size()) {
    throw Error("value id " + std::to_string(id) + " not on this tape");
  }
}

ValueId Tape::leaf(Tensor value) {
  return push({Op::leaf, 0, 0, 0.0, std::move(value)});
}

ValueId Tape::constant(Tensor value) {
  return push({Op::constant, 0, 0, 0.0, std::move(value)});
}

const Tensor& Tape::value(ValueId id) const {
  check_id(id);
  return nodes_[id].value;
}

ValueId Tape::matmul(ValueId a, ValueId b) {
  check_id(a);
  check_id(b);
  return push({Op::matmul, a, b, 0.0,
               chronorec::matmul(nodes_[a].value, nodes_[b].value)});
}

ValueId Tape::matvec(ValueId a, ValueId x) {
  check_id(a);
  check_id(x);
  return push({Op::matvec, a, x, 0.0,
               chronorec::matvec(nodes_[a].value, nodes_[x].value)});
}

ValueId Tape::add(ValueId a, ValueId b) {
  check_id(a);
  check_id(b);
  return push(
      {Op::add, a, b, 0.0, chronorec::add(nodes_[a].value, nodes_[b].value)});
}

ValueId Tape::sub(ValueId a, ValueId b) {
  check_id(a);
  check_id(b);
  return push(
      {Op::sub, a, b, 0.0, chronorec::sub(nodes_[a].value, nodes_[b].value)});
}

ValueId Tape::mul(ValueId a, ValueId b) {
  check_id(a);
  check_id(b);
  return push(
      {Op::mul, a, b, 0.0, chronorec::mul(nodes_[a].value, nodes_[b].value)});
}

ValueId Tape::scale(ValueId a, double c) {
  check_id(a);
  return push({Op::scale, a, 0, c, chronorec::scale(nodes_[a].value, c)});
}

ValueId Tape::relu(ValueId a) {
  check_id(a);
  return push({Op::relu, a, 0, 0.0, chronorec::relu(nodes_[a].value)});
}

ValueId Tape::sigmoid(ValueId a) {
  check_id(a);
  return push({Op::sigmoid, a, 0, 0.0, chronorec::sigmoid(nodes_[a].value)});
}

ValueId Tape::tanh(ValueId a) {
  check_id(a);
  return push({Op::tanh, a, 0, 0.0, chronorec::tanh_t(nodes_[a].value)});
}

ValueId Tape::sum(ValueId a) {
  check_id(a);
  return push({Op::sum, a, 0, 0.0, Tensor::scalar(chronorec::sum(nodes_[a].value))});
}

ValueId Tape::nll(ValueId probs, ValueId targets, bool complement) {
  check_id(probs);
  check_id(targets);
  const Tensor& p = nodes_[probs].value;
  const Tensor& t = nodes_[targets].value;
  if (!p.same_shape(t)) throw DimensionError("nll shape mismatch");
  double loss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = std::min(std::max(p[i], kProbEps), 1.0 - kProbEps);
    loss -= t[i] * std::log(pi);
    if (complement) loss -= (1.0 - t[i]) * std::log(1.0 - pi);
  }
  return push({Op::nll, probs, targets, complement ? 1.0 : 0.0,
               Tensor::scalar(loss)});
}

ValueId Tape::mse(ValueId pred, ValueId target, Reduction r) {
  check_id(pred);
  check_id(target);
  const double v = chronorec::mse(nodes_[pred].value, nodes_[target].value, r);
  return push({r == Reduction::sum ? Op::mse_sum : Op::mse_mean, pred, target,
               0.0, Tensor::scalar(v)});
}

Gradients Tape::backward(ValueId loss) {
  if (consumed_) {
    throw StaleTapeError("backward() called twice on the same tape");
  }
  consumed_ = true;
  check_id(loss);
  if (!nodes_[loss].value.is_scalar()) {
    throw DimensionError("backward() requires a scalar loss node");
  }

  std::vector<Tensor> adj(nodes_.size());
  adj[loss] = Tensor::scalar(1.0);

  // returns nullptr when the target is an untracked constant
  auto acc = [&](ValueId id) -> Tensor* {
    if (nodes_[id].op == Op::constant) return nullptr;
    if (adj[id].empty()) adj[id] = Tensor(nodes_[id].value.shape());
    return &adj[id];
  };

  // scalar-broadcast aware accumulation: d += g, or d += sum(g) if d scalar
  auto acc_add = [&](ValueId id, const Tensor& g) {
    Tensor* d = acc(id);
    if (!d) return;
    if (d->same_shape(g)) {
      d->axpy(1.0, g);
    } else if (d->is_scalar()) {
      (*d)[0] += chronorec::sum(g);
    } else {
      throw DimensionError("adjoint shape mismatch");
    }
  };

  for (ValueId id = loss + 1; id-- > 0;) {
    const Node& n = nodes_[id];
    if (adj[id].empty()) continue;
    const Tensor& g = adj[id];

    switch (n.op) {
      case Op::leaf:
      case Op::constant:
        break;

      case Op::matmul: {
        const Tensor& A = nodes_[n.a].value;
        const Tensor& B = nodes_[n.b].value;
        const std::size_t m = A.shape()[0], k = A.shape()[1],
                          nn = B.shape()[1];
        if (Tensor* dA = acc(n.a)) {
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < nn; ++j) {
              const double gij = g[i * nn + j];
              if (gij == 0.0) continue;
              for (std::size_t p = 0; p < k; ++p)
                (*dA)[i * k + p] += gij * B[p * nn + j];
            }
        }
        if (Tensor* dB = acc(n.b)) {
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t p = 0; p < k; ++p) {
              const double aip = A[i * k + p];
              if (aip == 0.0) continue;
              for (std::size_t j = 0; j < nn; ++j)
                (*dB)[p * nn + j] += aip * g[i * nn + j];
            }
        }
        break;
      }

      case Op::matvec: {
        const Tensor& A = nodes_[n.a].value;
        const Tensor& x = nodes_[n.b].value;
        const std::size_t m = A.shape()[0], k = A.shape()[1];
        if (Tensor* dA = acc(n.a)) {
          for (std::size_t i = 0; i < m; ++i) {
            const double gi = g[i];
            if (gi == 0.0) continue;
            for (std::size_t p = 0; p < k; ++p) (*dA)[i * k + p] += gi * x[p];
          }
        }
        if (Tensor* dx = acc(n.b)) {
          for (std::size_t i = 0; i < m; ++i) {
            const double gi = g[i];
            if (gi == 0.0) continue;
            for (std::size_t p = 0; p < k; ++p) (*dx)[p] += gi * A[i * k + p];
          }
        }
        break;
      }

      case Op::add:
        acc_add(n.a, g);
        acc_add(n.b, g);
        break;

      case Op::sub: {
        acc_add(n.a, g);
        Tensor neg = chronorec::scale(g, -1.0);
        acc_add(n.b, neg);
        break;
      }

      case Op::mul: {
        const Tensor& A = nodes_[n.a].value;
        const Tensor& B = nodes_[n.b].value;
        acc_add(n.a, chronorec::mul(g, B));
        acc_add(n.b, chronorec::mul(g, A));
        break;
      }

      case Op::scale:
        acc_add(n.a, chronorec::scale(g, n.c));
        break;

      case Op::relu: {
        const Tensor& x = nodes_[n.a].value;
        if (Tensor* dx = acc(n.a)) {
          for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] > 0.0) (*dx)[i] += g[i];
        }
        break;
      }

      case Op::sigmoid: {
        const Tensor& y = n.value;
        if (Tensor* dx = acc(n.a)) {
          for (std::size_t i = 0; i < y.size(); ++i)
            (*dx)[i] += g[i] * y[i] * (1.0 - y[i]);
        }
        break;
      }

      case Op::tanh: {
        const Tensor& y = n.value;
        if (Tensor* dx = acc(n.a)) {
          for (std::size_t i = 0; i < y.size(); ++i)
            (*dx)[i] += g[i] * (1.0 - y[i] * y[i]);
        }
        break;
      }

      case Op::sum: {
        const double gs = g[0];
        if (Tensor* dx = acc(n.a)) {
          for (std::size_t i = 0; i < dx->size(); ++i) (*dx)[i] += gs;
        }
        break;
      }

      case Op::nll: {
        const Tensor& p = nodes_[n.a].value;
        const Tensor& t = nodes_[n.b].value;
        const bool complement = n.c != 0.0;
        const double gs = g[0];
        if (Tensor* dp = acc(n.a)) {
          for (std::size_t i = 0; i < p.size(); ++i) {
            // clamp is flat outside [eps, 1-eps]
            if (p[i] > kProbEps) (*dp)[i] -= gs * t[i] / p[i];
            if (complement && p[i] < 1.0 - kProbEps)
              (*dp)[i] += gs * (1.0 - t[i]) / (1.0 - p[i]);
          }
        }
        if (Tensor* dt = acc(n.b)) {
          for (std::size_t i = 0; i < p.size(); ++i) {
            const double pi = std::min(std::max(p[i], kProbEps), 1.0 - kProbEps);
            (*dt)[i] -= gs * std::log(pi);
            if (complement) (*dt)[i] += gs * std::log(1.0 - pi);
          }
        }
        break;
      }

      case Op::mse_sum:
      case Op::mse_mean: {
        const Tensor& p = nodes_[n.a].value;
        const Tensor& t = nodes_[n.b].value;
        double coeff = 2.0 * g[0];
        if (n.op == Op::mse_mean) coeff /= static_cast<double>(p.size());
        if (Tensor* dp = acc(n.a)) {
          for (std::size_t i = 0; i < p.size(); ++i)
            (*dp)[i] += coeff * (p[i] - t[i]);
        }
        if (Tensor* dt = acc(n.b)) {
          for (std::size_t i = 0; i < p.size(); ++i)
            (*dt)[i] -= coeff * (p[i] - t[i]);
        }
        break;
      }
    }
  }

  return Gradients(std::move(adj));
}

}  // namespace chronorec
