#include "fedpower/tape.hpp"

#include <stdexcept>

namespace fedpower {

GradTape::NodeId GradTape::push(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

void GradTape::check_id(NodeId id) const {
  if (id < 0 || id >= static_cast<NodeId>(nodes_.size()))
    throw std::out_of_range("GradTape: invalid node id");
}

GradTape::NodeId GradTape::leaf(Matrix value, bool is_param) {
  Node n;
  n.op = Op::Leaf;
  n.value = std::move(value);
  n.is_param = is_param;
  return push(std::move(n));
}

GradTape::NodeId GradTape::matmul(NodeId a, NodeId b) {
  check_id(a);
  check_id(b);
  Node n;
  n.op = Op::Matmul;
  n.a = a;
  n.b = b;
  n.value = fedpower::matmul(nodes_[a].value, nodes_[b].value);
  return push(std::move(n));
}

GradTape::NodeId GradTape::add_bias(NodeId a, NodeId bias) {
  check_id(a);
  check_id(bias);
  const Matrix& x = nodes_[a].value;
  const Matrix& b = nodes_[bias].value;
  if (b.rows() != 1 || b.cols() != x.cols())
    throw std::invalid_argument("GradTape::add_bias: bias must be 1 x cols");
  Node n;
  n.op = Op::AddBias;
  n.a = a;
  n.b = bias;
  n.value = x;
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) n.value(r, c) += b(0, c);
  return push(std::move(n));
}

GradTape::NodeId GradTape::apply(NodeId a, Act act, double param) {
  check_id(a);
  Node n;
  n.op = Op::Apply;
  n.a = a;
  n.act = act;
  n.param = param;
  n.aux = nodes_[a].value;  // keep pre-activation for the backward pass
  n.value = n.aux.map([&](double x) { return act_value(act, x, param); });
  return push(std::move(n));
}

GradTape::NodeId GradTape::scale(NodeId a, double s) {
  check_id(a);
  Node n;
  n.op = Op::Scale;
  n.a = a;
  n.param = s;
  n.value = nodes_[a].value * s;
  return push(std::move(n));
}

GradTape::NodeId GradTape::mean(NodeId a) {
  check_id(a);
  const Matrix& x = nodes_[a].value;
  if (x.empty()) throw std::invalid_argument("GradTape::mean: empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i];
  Node n;
  n.op = Op::Mean;
  n.a = a;
  n.value = Matrix(1, 1, acc / static_cast<double>(x.size()));
  return push(std::move(n));
}

GradTape::NodeId GradTape::masked_mean(NodeId a, const Matrix& mask) {
  check_id(a);
  const Matrix& x = nodes_[a].value;
  if (!x.same_shape(mask)) throw std::invalid_argument("GradTape::masked_mean: mask shape");
  double acc = 0.0;
  double count = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (mask[i] != 0.0) {
      acc += x[i];
      count += 1.0;
    }
  }
  Node n;
  n.op = Op::MaskedMean;
  n.a = a;
  n.aux = mask;
  n.param = count;
  n.value = Matrix(1, 1, count > 0.0 ? acc / count : 0.0);
  return push(std::move(n));
}

void GradTape::backward(NodeId output, const Matrix& upstream) {
  check_id(output);
  if (!upstream.same_shape(nodes_[output].value))
    throw std::invalid_argument("GradTape::backward: upstream shape mismatch");

  adjoints_.assign(nodes_.size(), Matrix());
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    adjoints_[i] = Matrix(nodes_[i].value.rows(), nodes_[i].value.cols());
  adjoints_[output] = upstream;

  for (NodeId id = output; id >= 0; --id) {
    const Node& n = nodes_[id];
    const Matrix& g = adjoints_[id];
    switch (n.op) {
      case Op::Leaf:
        break;
      case Op::Matmul:
        adjoints_[n.a] += matmul_transposed_b(g, nodes_[n.b].value);
        adjoints_[n.b] += matmul_transposed_a(nodes_[n.a].value, g);
        break;
      case Op::AddBias: {
        adjoints_[n.a] += g;
        Matrix& gb = adjoints_[n.b];
        for (std::size_t r = 0; r < g.rows(); ++r)
          for (std::size_t c = 0; c < g.cols(); ++c) gb(0, c) += g(r, c);
        break;
      }
      case Op::Apply: {
        Matrix local(g.rows(), g.cols());
        for (std::size_t i = 0; i < g.size(); ++i)
          local[i] = g[i] * act_deriv(n.act, n.aux[i], n.param);
        adjoints_[n.a] += local;
        break;
      }
      case Op::Scale:
        adjoints_[n.a] += g * n.param;
        break;
      case Op::Mean: {
        const double w = g(0, 0) / static_cast<double>(nodes_[n.a].value.size());
        Matrix local(nodes_[n.a].value.rows(), nodes_[n.a].value.cols(), w);
        adjoints_[n.a] += local;
        break;
      }
      case Op::MaskedMean: {
        if (n.param > 0.0) {
          const double w = g(0, 0) / n.param;
          Matrix local(n.aux.rows(), n.aux.cols());
          for (std::size_t i = 0; i < n.aux.size(); ++i) local[i] = n.aux[i] != 0.0 ? w : 0.0;
          adjoints_[n.a] += local;
        }
        break;
      }
    }
  }
}

void GradTape::clear() {
  nodes_.clear();
  adjoints_.clear();
}

}  // namespace fedpower
