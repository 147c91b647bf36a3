#include "pervq/stokes.hpp"

#include "pervq/error.hpp"

namespace pervq {

namespace {

std::vector<std::size_t> block_offsets(const Quiver& q) {
  std::vector<std::size_t> offsets(q.size() + 1, 0);
  for (std::size_t i = 0; i < q.size(); ++i) offsets[i + 1] = offsets[i] + q.node(i).phi_dim();
  return offsets;
}

// suffix[i] = T_i T_{i+1} ... T_{n-1} (0-based), suffix[n] = 1.
std::vector<Matrix> suffix_products(const Quiver& q, const std::vector<NodeMonodromy>& monos) {
  std::vector<Matrix> suffix(q.size() + 1, Matrix::identity(q.psi_dim()));
  for (std::size_t i = q.size(); i-- > 0;) suffix[i] = monos[i].psi * suffix[i + 1];
  return suffix;
}

std::string first_mismatch(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return "shape mismatch";
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (!(a(r, c) == b(r, c))) {
        return "entry (" + std::to_string(r) + "," + std::to_string(c) + "): " + a(r, c).to_string() +
               " vs " + b(r, c).to_string();
      }
    }
  }
  return {};
}

}  // namespace

StokesPair stokes_matrices(const Quiver& q) {
  const std::size_t n = q.size();
  const auto offsets = block_offsets(q);
  const std::size_t total = offsets[n];
  const auto monos = monodromies(q);
  const auto suffix = suffix_products(q, monos);

  StokesPair s;
  s.S_plus = Matrix::identity(total);
  s.S_minus = Matrix::zero(total, total);
  s.U_sigma = Matrix::zero(total, q.psi_dim());
  s.V_sigma = Matrix::zero(q.psi_dim(), total);
  for (std::size_t i = 0; i < n; ++i) {
    const QuiverNode& ni = q.node(i);
    s.order.push_back(ni.point);
    s.block_dims.push_back(ni.phi_dim());
    s.S_minus.set_block(offsets[i], offsets[i], monos[i].phi);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Matrix block = ni.u * q.node(j).v;
      if (i < j) {
        s.S_plus.set_block(offsets[i], offsets[j], block);
      } else {
        s.S_minus.set_block(offsets[i], offsets[j], -block);
      }
    }
    s.U_sigma.set_block(offsets[i], 0, ni.u * suffix[i + 1]);
    s.V_sigma.set_block(0, offsets[i], ni.v);
  }
  return s;
}

Matrix stokes_plus_inverse(const Quiver& q) {
  const std::size_t n = q.size();
  const auto offsets = block_offsets(q);
  const auto monos = monodromies(q);
  Matrix inv = Matrix::identity(offsets[n]);
  for (std::size_t i = 0; i < n; ++i) {
    // Running product T_{i+1} ... T_{j-1}.
    Matrix between = Matrix::identity(q.psi_dim());
    for (std::size_t j = i + 1; j < n; ++j) {
      inv.set_block(offsets[i], offsets[j], -(q.node(i).u * between * q.node(j).v));
      between = between * monos[j].psi;
    }
  }
  return inv;
}

IdentityReport verify_theorem_identity(const Quiver& q) {
  const StokesPair s = stokes_matrices(q);
  IdentityReport report;
  const Matrix lhs_phi = stokes_plus_inverse(q) * s.S_minus;
  const Matrix rhs_phi = Matrix::identity(s.S_plus.rows()) - s.U_sigma * s.V_sigma;
  report.phi_ok = lhs_phi == rhs_phi;
  const Matrix lhs_psi = Matrix::identity(q.psi_dim()) - s.V_sigma * s.U_sigma;
  const Matrix rhs_psi = total_monodromy_psi(q);
  report.psi_ok = lhs_psi == rhs_psi;
  if (!report.phi_ok) {
    report.detail = "phi identity, " + first_mismatch(lhs_phi, rhs_phi);
  } else if (!report.psi_ok) {
    report.detail = "psi identity, " + first_mismatch(lhs_psi, rhs_psi);
  }
  return report;
}

Quiver smash_quiver(const Quiver& q) {
  const StokesPair s = stokes_matrices(q);
  std::vector<QuiverNode> nodes;
  nodes.push_back({GaussRational(0), s.U_sigma, s.V_sigma});
  return validate_and_order(q.frame(), q.psi_dim(), std::move(nodes));
}

Quiver fourier_sato_point(const Quiver& q) {
  if (q.size() != 1 || !q.node(0).point.is_zero()) {
    throw Error(ErrorKind::NotSinglePointAtZero,
                "expected one node at 0, got " + std::to_string(q.size()) + " node(s)");
  }
  const QuiverNode& n = q.node(0);
  std::vector<QuiverNode> nodes;
  nodes.push_back({GaussRational(0), n.v, n.u});
  const Frame swapped{q.frame().beta, -q.frame().alpha};
  return validate_and_order(swapped, n.phi_dim(), std::move(nodes));
}

Quiver fourier_quiver(const Quiver& q) {
  const StokesPair s = stokes_matrices(q);
  std::vector<QuiverNode> nodes;
  nodes.push_back({GaussRational(0), s.V_sigma, s.U_sigma});
  const Frame swapped{q.frame().beta, -q.frame().alpha};
  return validate_and_order(swapped, s.S_plus.rows(), std::move(nodes));
}

std::vector<ExponentialComponent> exponential_components(const Quiver& q) {
  std::vector<ExponentialComponent> out;
  for (const auto& n : q.nodes()) {
    if (n.phi_dim() > 0) out.push_back({n.point, n.phi_dim()});
  }
  return out;
}

}  // namespace pervq
