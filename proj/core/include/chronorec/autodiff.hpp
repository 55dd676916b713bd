#pragma once

#include <cstdint>
#include <vector>

#include "chronorec/tensor.hpp"

namespace chronorec {

using ValueId = std::uint32_t;

/// Gradient map produced by Tape::backward. Holds one adjoint per node;
/// nodes the loss does not depend on have empty adjoints.
class Gradients {
 public:
  explicit Gradients(std::vector<Tensor> adjoints)
      : adjoints_(std::move(adjoints)) {}

  bool contains(ValueId id) const {
    return id < adjoints_.size() && !adjoints_[id].empty();
  }
  /// Adjoint of the given node; zero tensor shape errors if absent.
  const Tensor& at(ValueId id) const;

 private:
  std::vector<Tensor> adjoints_;
};

/// Reverse-mode tape. Append-only: node ids are topologically ordered.
/// One forward pass per tape; backward() may be called once.
class Tape {
 public:
  Tape();

  /// Tracked leaf (parameter or input the caller wants gradients for).
  ValueId leaf(Tensor value);
  /// Untracked leaf; backward does not accumulate into it.
  ValueId constant(Tensor value);

  ValueId matmul(ValueId a, ValueId b);
  ValueId matvec(ValueId a, ValueId x);
  ValueId add(ValueId a, ValueId b);
  ValueId sub(ValueId a, ValueId b);
  ValueId mul(ValueId a, ValueId b);
  ValueId scale(ValueId a, double c);
  ValueId relu(ValueId a);
  ValueId sigmoid(ValueId a);
  ValueId tanh(ValueId a);
  ValueId sum(ValueId a);
  /// -Σ w_i [t_i log p_i + (1-t_i) log(1-p_i)] with p clamped to
  /// [eps, 1-eps]; `complement` off drops the (1-t) term.
  ValueId nll(ValueId probs, ValueId targets, bool complement);
  ValueId mse(ValueId pred, ValueId target, Reduction r);

  const Tensor& value(ValueId id) const;
  std::size_t node_count() const { return nodes_.size(); }

  /// Reverse sweep from a scalar loss. Visits each node once, in reverse
  /// topological order. Throws StaleTapeError on a second call.
  Gradients backward(ValueId loss);

 private:
  enum class Op : std::uint8_t {
    leaf,
    constant,
    matmul,
    matvec,
    add,
    sub,
    mul,
    scale,
    relu,
    sigmoid,
    tanh,
    sum,
    nll,
    mse_sum,
    mse_mean,
  };

  struct Node {
    Op op;
    ValueId a = 0;
    ValueId b = 0;
    double c = 0.0;  // scale factor / nll flag
    Tensor value;
  };

  ValueId push(Node n);
  void check_id(ValueId id) const;

  std::vector<Node> nodes_;
  bool consumed_ = false;
};

}  // namespace chronorec
