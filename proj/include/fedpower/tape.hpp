#pragma once

#include <cstdint>
#include <vector>

#include "fedpower/activations.hpp"
#include "fedpower/matrix.hpp"

namespace fedpower {

// Minimal reverse-mode tape over the fixed primitive set the policies need:
// matmul, bias add, elementwise activation, scale, mean, masked mean. Not a
// general autodiff; the small surface is what makes it checkable against
// finite differences.
//
// Usage: record a forward pass, then call backward() once with the upstream
// gradient of the output node. A tape is single-use per forward pass; the
// caller rebuilds it on the next pass.
class GradTape {
 public:
  using NodeId = int;

  NodeId leaf(Matrix value, bool is_param = false);
  NodeId matmul(NodeId a, NodeId b);
  // Adds a 1 x cols bias row to every row of a.
  NodeId add_bias(NodeId a, NodeId bias);
  NodeId apply(NodeId a, Act act, double param = 0.0);
  NodeId scale(NodeId a, double s);
  // Mean over all entries; result is 1x1.
  NodeId mean(NodeId a);
  // Mean over entries where mask is nonzero; zero-mask input yields 0.
  NodeId masked_mean(NodeId a, const Matrix& mask);

  const Matrix& value(NodeId id) const { return nodes_[id].value; }
  std::size_t node_count() const { return nodes_.size(); }

  // Seeds the output adjoint and replays the tape backward. Adjoints of all
  // leaves (parameters included) are available afterwards via adjoint().
  void backward(NodeId output, const Matrix& upstream);

  // Accumulated gradient for a node after backward(); zero matrix when the
  // node does not influence the seeded output.
  const Matrix& adjoint(NodeId id) const { return adjoints_[id]; }

  void clear();

 private:
  enum class Op { Leaf, Matmul, AddBias, Apply, Scale, Mean, MaskedMean };

  struct Node {
    Op op;
    NodeId a = -1;
    NodeId b = -1;
    Matrix value;
    Matrix aux;       // pre-activation input for Apply; mask for MaskedMean
    Act act = Act::Identity;
    double param = 0.0;
    bool is_param = false;
  };

  NodeId push(Node n);
  void check_id(NodeId id) const;

  std::vector<Node> nodes_;
  std::vector<Matrix> adjoints_;
};

}  // namespace fedpower
