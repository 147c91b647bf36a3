#include "pervq/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pervq/error.hpp"

namespace pervq {

namespace {

std::string describe_shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

std::string node_label(std::size_t index, const GaussRational& c) {
  return "node " + std::to_string(index) + " (c=" + c.to_string() + ")";
}

// Pivot columns of a matrix already in reduced row echelon form.
std::vector<std::size_t> echelon_pivots(const Matrix& m) {
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_zero()) {
        pivots.push_back(c);
        break;
      }
    }
  }
  return pivots;
}

Matrix select_columns(const Matrix& m, std::span<const std::size_t> cols) {
  Matrix out(m.rows(), cols.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t k = 0; k < cols.size(); ++k) out(r, k) = m(r, cols[k]);
  }
  return out;
}

// The unique X with X * proj = target, where proj is in reduced row echelon
// form with full row rank; fails if target does not factor through proj.
std::optional<Matrix> factor_through(const Matrix& target, const Matrix& proj) {
  const auto pivots = echelon_pivots(proj);
  Matrix x = select_columns(target, pivots);
  if (!(x * proj == target)) return std::nullopt;
  return x;
}

}  // namespace

void check_frame(const Frame& frame) {
  if (frame.alpha.is_zero()) throw Error(ErrorKind::BadFrame, "alpha is zero");
  if (frame.beta.is_zero()) throw Error(ErrorKind::BadFrame, "beta is zero");
  const GaussRational pairing = frame.alpha * frame.beta;
  if (sgn(pairing.re()) != 0) {
    throw Error(ErrorKind::BadFrame, "Re(alpha*beta) = " + to_string(pairing.re()) + " is not zero");
  }
}

Rational order_key(const GaussRational& c, const Frame& frame) { return (c * frame.beta).re(); }

Quiver validate_and_order(const Frame& frame, std::size_t psi_dim, std::vector<QuiverNode> nodes) {
  check_frame(frame);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const QuiverNode& n = nodes[i];
    const std::size_t d = n.u.rows();
    if (n.u.cols() != psi_dim || n.v.rows() != psi_dim || n.v.cols() != d) {
      throw Error(ErrorKind::DimensionMismatch, node_label(i, n.point) + ": u is " + describe_shape(n.u) +
                                                    ", v is " + describe_shape(n.v) + ", expected u " +
                                                    std::to_string(d) + "x" + std::to_string(psi_dim) +
                                                    " and v " + std::to_string(psi_dim) + "x" +
                                                    std::to_string(d));
    }
  }

  std::vector<std::size_t> perm(nodes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Rational> keys;
  keys.reserve(nodes.size());
  for (const auto& n : nodes) keys.push_back(order_key(n.point, frame));
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  for (std::size_t k = 1; k < perm.size(); ++k) {
    if (keys[perm[k - 1]] == keys[perm[k]]) {
      throw Error(ErrorKind::TieBreak, "points " + nodes[perm[k - 1]].point.to_string() + " and " +
                                           nodes[perm[k]].point.to_string() +
                                           " have equal Re(c*beta) = " + to_string(keys[perm[k]]));
    }
  }

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const QuiverNode& n = nodes[i];
    const bool phi_ok = is_invertible(Matrix::identity(n.phi_dim()) - n.u * n.v);
    const bool psi_ok = is_invertible(Matrix::identity(psi_dim) - n.v * n.u);
    if (phi_ok != psi_ok) {
      throw Error(ErrorKind::InternalInconsistency,
                  node_label(i, n.point) + ": 1-uv and 1-vu disagree on invertibility");
    }
    if (!phi_ok) throw Error(ErrorKind::SingularMonodromy, node_label(i, n.point) + ": 1-uv is singular");
  }

  Quiver q;
  q.frame_ = frame;
  q.psi_dim_ = psi_dim;
  q.nodes_.reserve(nodes.size());
  for (std::size_t k : perm) q.nodes_.push_back(std::move(nodes[k]));
  return q;
}

std::vector<NodeMonodromy> monodromies(const Quiver& q) {
  std::vector<NodeMonodromy> out;
  out.reserve(q.size());
  const Matrix one = Matrix::identity(q.psi_dim());
  for (const auto& n : q.nodes()) {
    out.push_back({one - n.v * n.u, Matrix::identity(n.phi_dim()) - n.u * n.v});
  }
  return out;
}

Matrix total_monodromy_psi(const Quiver& q) {
  Matrix total = Matrix::identity(q.psi_dim());
  for (const auto& m : monodromies(q)) total = total * m.psi;
  return total;
}

LocalSystem make_local_system(const Frame& frame, std::size_t rank, std::vector<GaussRational> points,
                              std::vector<Matrix> monodromies) {
  check_frame(frame);
  if (points.size() != monodromies.size()) {
    throw Error(ErrorKind::DimensionMismatch, std::to_string(points.size()) + " points but " +
                                                  std::to_string(monodromies.size()) + " monodromies");
  }
  for (std::size_t i = 0; i < monodromies.size(); ++i) {
    const Matrix& t = monodromies[i];
    if (t.rows() != rank || t.cols() != rank) {
      throw Error(ErrorKind::DimensionMismatch, "monodromy " + std::to_string(i) + " is " + describe_shape(t) +
                                                    ", expected " + std::to_string(rank) + "x" +
                                                    std::to_string(rank));
    }
    if (!is_invertible(t)) {
      throw Error(ErrorKind::SingularMatrix, "monodromy at " + points[i].to_string() + " is singular");
    }
  }
  std::vector<std::size_t> perm(points.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return order_key(points[a], frame) < order_key(points[b], frame);
  });
  for (std::size_t k = 1; k < perm.size(); ++k) {
    if (order_key(points[perm[k - 1]], frame) == order_key(points[perm[k]], frame)) {
      throw Error(ErrorKind::TieBreak, "points " + points[perm[k - 1]].to_string() + " and " +
                                           points[perm[k]].to_string() + " have equal Re(c*beta)");
    }
  }
  LocalSystem ls;
  ls.frame_ = frame;
  ls.rank_ = rank;
  for (std::size_t k : perm) {
    ls.points_.push_back(std::move(points[k]));
    ls.monodromies_.push_back(std::move(monodromies[k]));
  }
  return ls;
}

Quiver localized_quiver(const LocalSystem& ls) {
  const std::size_t n = ls.rank();
  const Matrix one = Matrix::identity(n);
  std::vector<QuiverNode> nodes;
  for (std::size_t i = 0; i < ls.points().size(); ++i) {
    nodes.push_back({ls.points()[i], one, one - ls.monodromies()[i]});
  }
  return validate_and_order(ls.frame(), n, std::move(nodes));
}

Quiver beilinson_quiver(const LocalSystem& ls) {
  const std::size_t n = ls.rank();
  const Matrix one = Matrix::identity(n);
  const Matrix u = vstack(one, Matrix::zero(n, n));
  std::vector<QuiverNode> nodes;
  for (std::size_t i = 0; i < ls.points().size(); ++i) {
    nodes.push_back({ls.points()[i], u, hstack(one - ls.monodromies()[i], -one)});
  }
  return validate_and_order(ls.frame(), n, std::move(nodes));
}

Quiver skyscraper_quiver(const Frame& frame, std::vector<GaussRational> points,
                         std::span<const std::size_t> dims) {
  if (points.size() != dims.size()) {
    throw Error(ErrorKind::DimensionMismatch, "skyscraper: points and dims differ in length");
  }
  std::vector<QuiverNode> nodes;
  for (std::size_t i = 0; i < points.size(); ++i) {
    nodes.push_back({std::move(points[i]), Matrix(dims[i], 0), Matrix(0, dims[i])});
  }
  return validate_and_order(frame, 0, std::move(nodes));
}

Quiver quotient_by_phi_subspaces(const Quiver& q, std::span<const Matrix> subspaces) {
  if (subspaces.size() != q.size()) {
    throw Error(ErrorKind::DimensionMismatch, "quotient: " + std::to_string(subspaces.size()) +
                                                  " subspaces for " + std::to_string(q.size()) + " nodes");
  }
  std::vector<QuiverNode> nodes;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const QuiverNode& n = q.node(i);
    const Matrix& s = subspaces[i];
    if (s.rows() != n.phi_dim()) {
      throw Error(ErrorKind::DimensionMismatch,
                  node_label(i, n.point) + ": subspace has " + std::to_string(s.rows()) + " rows, Phi has dim " +
                      std::to_string(n.phi_dim()));
    }
    if (!(n.v * s).is_zero()) {
      throw Error(ErrorKind::SubspaceNotInKernel, node_label(i, n.point) + ": v does not vanish on S");
    }
    const Cokernel coker = cokernel_projection(s);
    auto v = factor_through(n.v, coker.projection);
    if (!v) throw Error(ErrorKind::InternalInconsistency, node_label(i, n.point) + ": v does not factor");
    nodes.push_back({n.point, coker.projection * n.u, std::move(*v)});
  }
  return validate_and_order(q.frame(), q.psi_dim(), std::move(nodes));
}

Reconstruction reconstruct_G(const Quiver& q) {
  const std::size_t m = q.psi_dim();
  const Matrix one = Matrix::identity(m);
  Reconstruction out;
  out.psi_iso = one;
  std::vector<QuiverNode> nodes;
  const auto monos = monodromies(q);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const QuiverNode& n = q.node(i);
    const std::size_t d = n.phi_dim();
    const std::string where = node_label(i, n.point);
    const Matrix one_minus_t = one - monos[i].psi;

    // Psi -> (Psi + Psi) + Phi and (Psi + Psi) + Phi -> Psi.
    const Matrix first = vstack(vstack(one, one_minus_t), n.u);
    const Matrix second = hstack(hstack(Matrix::zero(m, m), -one), n.v);
    if (!(second * first).is_zero()) throw Error(ErrorKind::InternalInconsistency, where + ": d^2 != 0");
    if (rank(first) != m) throw Error(ErrorKind::InternalInconsistency, where + ": first map not injective");
    if (rank(second) != m) throw Error(ErrorKind::InternalInconsistency, where + ": last map not surjective");

    const Matrix cycles = kernel_basis(second);
    const auto image_coords = solve(cycles, first);
    if (!image_coords) throw Error(ErrorKind::InternalInconsistency, where + ": image not inside kernel");
    const Cokernel homology = cokernel_projection(*image_coords);
    if (homology.dim != d) {
      throw Error(ErrorKind::InternalInconsistency, where + ": middle cohomology has dim " +
                                                        std::to_string(homology.dim) + ", expected " +
                                                        std::to_string(d));
    }
    const Matrix& pi = homology.projection;

    // u on the Beilinson part is x -> (x, 0); v is (x, y) -> (1 - T)x - y.
    const Matrix u_lift = vstack(one, Matrix::zero(m + d, m));
    const auto u_coords = solve(cycles, u_lift);
    if (!u_coords) throw Error(ErrorKind::InternalInconsistency, where + ": u lift not a cycle");
    const Matrix u_h = pi * *u_coords;
    const Matrix v_beil = hstack(hstack(one_minus_t, -one), Matrix::zero(m, d));
    const auto v_h = factor_through(v_beil * cycles, pi);
    if (!v_h) throw Error(ErrorKind::InternalInconsistency, where + ": v does not descend");

    // Canonical representative (x, y, phi) -> u x - phi.
    const Matrix iota = hstack(hstack(n.u, Matrix::zero(d, m)), -Matrix::identity(d));
    const auto iota_h = factor_through(iota * cycles, pi);
    if (!iota_h || !is_invertible(*iota_h)) {
      throw Error(ErrorKind::InternalInconsistency, where + ": representative map not an isomorphism");
    }

    // Basis of Phi lifted as (0, -v e, -e); its image under iota is the identity.
    const Matrix reps = vstack(vstack(Matrix::zero(m, d), -n.v), -Matrix::identity(d));
    const auto rep_coords = solve(cycles, reps);
    if (!rep_coords) throw Error(ErrorKind::InternalInconsistency, where + ": Phi lift not a cycle");

    out.phi_isos.push_back(*iota_h * (pi * *rep_coords));
    nodes.push_back({n.point, *iota_h * u_h, *v_h * inverse(*iota_h)});
  }
  out.g = validate_and_order(q.frame(), m, std::move(nodes));
  return out;
}

Quiver apply_gauge(const Quiver& q, const Matrix& psi_change, std::span<const Matrix> phi_changes) {
  if (psi_change.rows() != q.psi_dim() || psi_change.cols() != q.psi_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "gauge on Psi is " + describe_shape(psi_change));
  }
  if (phi_changes.size() != q.size()) {
    throw Error(ErrorKind::DimensionMismatch, "gauge has " + std::to_string(phi_changes.size()) +
                                                  " Phi blocks for " + std::to_string(q.size()) + " nodes");
  }
  const Matrix psi_inv = inverse(psi_change);
  std::vector<QuiverNode> nodes;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const QuiverNode& n = q.node(i);
    const Matrix& d = phi_changes[i];
    if (d.rows() != n.phi_dim() || d.cols() != n.phi_dim()) {
      throw Error(ErrorKind::DimensionMismatch, node_label(i, n.point) + ": gauge block is " + describe_shape(d));
    }
    nodes.push_back({n.point, d * n.u * psi_inv, psi_change * n.v * inverse(d)});
  }
  return validate_and_order(q.frame(), q.psi_dim(), std::move(nodes));
}

}  // namespace pervq
