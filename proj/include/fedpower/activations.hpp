#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fedpower {

inline double elu(double x) { return x > 0.0 ? x : std::expm1(x); }
inline double elu_deriv(double x) { return x > 0.0 ? 1.0 : std::exp(x); }

inline double leaky_relu(double x, double slope) { return x > 0.0 ? x : slope * x; }
inline double leaky_relu_deriv(double x, double slope) { return x > 0.0 ? 1.0 : slope; }

// Maps the real line onto (0, p_max); the last policy layer uses this so the
// allocated power respects the box constraint by construction.
inline double scaled_sigmoid(double x, double p_max) {
  return p_max / (1.0 + std::exp(-x));
}
inline double scaled_sigmoid_deriv(double x, double p_max) {
  const double s = 1.0 / (1.0 + std::exp(-x));
  return p_max * s * (1.0 - s);
}

// Elementwise activation id used by the gradient tape and policy configs.
// `param` carries the slope (LeakyRelu) or p_max (ScaledSigmoid).
enum class Act { Identity, Elu, LeakyRelu, ScaledSigmoid, Tanh };

inline double act_value(Act a, double x, double param) {
  switch (a) {
    case Act::Identity: return x;
    case Act::Elu: return elu(x);
    case Act::LeakyRelu: return leaky_relu(x, param);
    case Act::ScaledSigmoid: return scaled_sigmoid(x, param);
    case Act::Tanh: return std::tanh(x);
  }
  throw std::logic_error("act_value: unknown activation");
}

inline double act_deriv(Act a, double x, double param) {
  switch (a) {
    case Act::Identity: return 1.0;
    case Act::Elu: return elu_deriv(x);
    case Act::LeakyRelu: return leaky_relu_deriv(x, param);
    case Act::ScaledSigmoid: return scaled_sigmoid_deriv(x, param);
    case Act::Tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
  }
  throw std::logic_error("act_deriv: unknown activation");
}

inline std::string act_name(Act a) {
  switch (a) {
    case Act::Identity: return "identity";
    case Act::Elu: return "elu";
    case Act::LeakyRelu: return "leaky_relu";
    case Act::ScaledSigmoid: return "scaled_sigmoid";
    case Act::Tanh: return "tanh";
  }
  return "unknown";
}

}  // namespace fedpower
