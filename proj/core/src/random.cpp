#include "pervq/random.hpp"

#include <algorithm>

#include "pervq/error.hpp"

namespace pervq {

std::size_t Sampler::uniform(std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(next() % (hi - lo + 1));
}

Rational Sampler::rational() {
  const long num = static_cast<long>(uniform(0, 2 * static_cast<std::size_t>(max_abs_))) - max_abs_;
  const long den = static_cast<long>(uniform(1, static_cast<std::size_t>(max_abs_)));
  return make_rational(num, den);
}

GaussRational Sampler::gauss(bool complex_part) {
  Rational re = rational();
  Rational im = complex_part && chance(50) ? rational() : Rational(0);
  return {re, im};
}

Matrix Sampler::matrix(std::size_t rows, std::size_t cols, bool complex_entries) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!chance(25)) m(r, c) = gauss(complex_entries);
    }
  }
  return m;
}

Matrix Sampler::invertible(std::size_t n, bool complex_entries) {
  for (;;) {
    Matrix m = matrix(n, n, complex_entries);
    if (is_invertible(m)) return m;
  }
}

Frame Sampler::frame() {
  // alpha = i k conj(beta) makes alpha beta = i k |beta|^2 purely imaginary.
  GaussRational beta;
  do {
    beta = gauss(chance(30));
  } while (beta.is_zero());
  Rational k;
  do {
    k = rational();
  } while (sgn(k) == 0);
  return {GaussRational(0, k) * beta.conj(), beta};
}

namespace {

std::vector<GaussRational> separated_points(Sampler& rng, const Frame& frame, std::size_t count) {
  std::vector<GaussRational> points;
  std::vector<Rational> keys;
  while (points.size() < count) {
    GaussRational c = rng.gauss(true);
    Rational key = order_key(c, frame);
    if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
    keys.push_back(key);
    points.push_back(std::move(c));
  }
  return points;
}

}  // namespace

Quiver random_quiver(Sampler& rng, std::size_t nodes, std::size_t max_dim) {
  const Frame frame = rng.frame();
  const bool complex_entries = rng.chance(25);
  const std::size_t psi = rng.uniform(0, max_dim);
  std::vector<QuiverNode> out;
  for (GaussRational& c : separated_points(rng, frame, nodes)) {
    const std::size_t d = rng.uniform(0, max_dim);
    QuiverNode node{std::move(c), Matrix(d, psi), Matrix(psi, d)};
    for (int attempt = 0; attempt < 64; ++attempt) {
      Matrix u = rng.matrix(d, psi, complex_entries);
      Matrix v = rng.matrix(psi, d, complex_entries);
      if (is_invertible(Matrix::identity(d) - u * v)) {
        node.u = std::move(u);
        node.v = std::move(v);
        break;
      }
    }
    out.push_back(std::move(node));
  }
  return validate_and_order(frame, psi, std::move(out));
}

LocalSystem random_local_system(Sampler& rng, std::size_t points, std::size_t max_rank) {
  const Frame frame = rng.frame();
  const bool complex_entries = rng.chance(25);
  const std::size_t rank = rng.uniform(1, std::max<std::size_t>(max_rank, 1));
  std::vector<Matrix> monos;
  for (std::size_t k = 0; k < points; ++k) monos.push_back(rng.invertible(rank, complex_entries));
  return make_local_system(frame, rank, separated_points(rng, frame, points), std::move(monos));
}

Gauge random_gauge(Sampler& rng, const Quiver& q) {
  Gauge g;
  const bool complex_entries = rng.chance(25);
  g.psi = rng.invertible(q.psi_dim(), complex_entries);
  for (const auto& n : q.nodes()) g.phi.push_back(rng.invertible(n.phi_dim(), complex_entries));
  return g;
}

}  // namespace pervq
