#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pervq/covers.hpp"
#include "pervq/exactnum.hpp"
#include "pervq/quiver.hpp"

namespace pervq::test {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(PERVQ_TEST_DATA) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline GaussRational q(long num, long den = 1) { return GaussRational(make_rational(num, den)); }

inline Frame default_frame() { return {GaussRational::i(), 1}; }

inline CoverOptions fixed_numbering() {
  CoverOptions options;
  options.numbering = SheetNumbering::FixedSheets;
  return options;
}

// Laplace expansion along the first row; shares no code with the eliminating
// determinant in the library.
inline GaussRational cofactor_determinant(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  GaussRational det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, k = 0; c < n; ++c)
        if (c != j) minor(r - 1, k++) = m(r, c);
    const GaussRational term = m(0, j) * cofactor_determinant(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

// Adjugate over determinant.
inline Matrix adjugate_inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  const GaussRational det_inv = cofactor_determinant(m).inverse();
  if (n == 1) return Matrix{{det_inv}};
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c)
          if (c != j) minor(rr, cc++) = m(r, c);
        ++rr;
      }
      GaussRational cof = cofactor_determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      out(j, i) = cof * det_inv;
    }
  }
  return out;
}

// Straight from the entrywise definitions: block (i, j) of S_plus is u_i v_j
// above the diagonal; S_minus has 1 - u_i v_i on the diagonal and -u_i v_j below.
inline std::pair<Matrix, Matrix> naive_stokes(const Quiver& quiver) {
  std::vector<std::size_t> offset{0};
  for (const auto& node : quiver.nodes()) offset.push_back(offset.back() + node.phi_dim());
  const std::size_t total = offset.back();
  Matrix plus(total, total);
  Matrix minus(total, total);
  for (std::size_t i = 0; i < quiver.size(); ++i) {
    for (std::size_t j = 0; j < quiver.size(); ++j) {
      const Matrix uv = quiver.node(i).u * quiver.node(j).v;
      for (std::size_t r = 0; r < uv.rows(); ++r) {
        for (std::size_t c = 0; c < uv.cols(); ++c) {
          const GaussRational one = (i == j && r == c) ? 1 : 0;
          if (i < j) plus(offset[i] + r, offset[j] + c) = uv(r, c);
          if (i == j) {
            plus(offset[i] + r, offset[j] + c) = one;
            minus(offset[i] + r, offset[j] + c) = one - uv(r, c);
          }
          if (i > j) minus(offset[i] + r, offset[j] + c) = -uv(r, c);
        }
      }
    }
  }
  return {plus, minus};
}

inline Quiver airy_quiver() {
  return validate_and_order(default_frame(), 3,
                            {{2, {{0, 1, -1}}, {{0}, {1}, {-1}}}, {-2, {{1, 0, -1}}, {{1}, {0}, {-1}}}});
}

inline Quiver elementary_quiver() {
  return validate_and_order(default_frame(), 2,
                            {{-2, {{1, -1}}, {{1}, {-1}}}, {2, {{1, -1}}, {{1}, {-1}}}});
}

// Psi = k, nodes c = 0 (u = 1, v = 2) and c = 1 (u = 1, v = 3).
inline Quiver scalar_two_node() {
  return validate_and_order(default_frame(), 1, {{0, {{1}}, {{2}}}, {1, {{1}}, {{3}}}});
}

}  // namespace pervq::test
