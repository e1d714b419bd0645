#include "fedpower/matrix.hpp"

#include <cmath>

#include "fedpower/parallel.hpp"

namespace fedpower {

namespace {

void require_inner(const Matrix& a, const Matrix& b, const char* what) {
  if (a.cols() != b.rows())
    throw std::invalid_argument(std::string(what) + ": inner dimension mismatch");
}

inline void matmul_row(const Matrix& a, const Matrix& b, Matrix& out, std::size_t r) {
  const std::size_t inner = a.cols();
  const std::size_t cols = b.cols();
  for (std::size_t c = 0; c < cols; ++c) {
    double acc = 0.0;
    for (std::size_t k = 0; k < inner; ++k) acc += a(r, k) * b(k, c);
    out(r, c) = acc;
  }
}

}  // namespace

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
  require_inner(a, b, "matmul_serial");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) matmul_row(a, b, out, r);
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require_inner(a, b, "matmul");
  Matrix out(a.rows(), b.cols());
  // Grain keeps tiny policy-layer products on the serial path.
  const long grain = static_cast<long>(16384 / (a.cols() * b.cols() + 1) + 1);
  parallel_for(static_cast<long>(a.rows()),
               [&](long r) { matmul_row(a, b, out, static_cast<std::size_t>(r)); }, grain);
  return out;
}

Matrix matmul_transposed_b(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("matmul_transposed_b: inner dimension mismatch");
  Matrix out(a.rows(), b.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.rows(); ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(r, k) * b(c, k);
      out(r, c) = acc;
    }
  return out;
}

Matrix matmul_transposed_a(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("matmul_transposed_a: inner dimension mismatch");
  Matrix out(a.cols(), b.cols());
  for (std::size_t r = 0; r < a.cols(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) acc += a(k, r) * b(k, c);
      out(r, c) = acc;
    }
  return out;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("hadamard: shape mismatch");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double frobenius_norm(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * a[i];
  return std::sqrt(acc);
}

}  // namespace fedpower
