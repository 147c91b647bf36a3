#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pervq/exactnum.hpp"
#include "pervq/quiver.hpp"

namespace pervq {

// Stokes multipliers of the Fourier transform in block form. Block (i, j)
// maps Phi_{c_j} to Phi_{c_i}; blocks follow the beta-order of the quiver.
struct StokesPair {
  std::vector<GaussRational> order;
  std::vector<std::size_t> block_dims;
  Matrix S_plus;   // S_beta: identity diagonal, (i<j) block u_i v_j
  Matrix S_minus;  // S_-beta: diagonal 1 - u_i v_i, (i>j) block -u_i v_j
  Matrix U_sigma;  // rows U_i = u_i T_{i+1} ... T_n stacked, |Phi_Sigma| x psi
  Matrix V_sigma;  // V_i = v_i side by side, psi x |Phi_Sigma|
};

StokesPair stokes_matrices(const Quiver& q);

// Closed form: identity diagonal, (i<j) block -u_i T_{i+1} ... T_{j-1} v_j.
Matrix stokes_plus_inverse(const Quiver& q);

struct IdentityReport {
  bool phi_ok = false;  // S_plus^-1 S_minus == 1 - U V
  bool psi_ok = false;  // 1 - V U == T_1 ... T_n
  std::string detail;   // first mismatching entry, empty when both hold

  bool ok() const { return phi_ok && psi_ok; }
};

IdentityReport verify_theorem_identity(const Quiver& q);

// One node at 0 with nearby space Psi, vanishing space Phi_Sigma, u = U_Sigma,
// v = V_Sigma; same frame.
Quiver smash_quiver(const Quiver& q);

// (Psi, Phi, u, v) at 0 with frame (alpha, beta) becomes (Phi, Psi, v, u)
// with frame (beta, -alpha). Throws NotSinglePointAtZero otherwise.
Quiver fourier_sato_point(const Quiver& q);

// Quiver at the origin of the Fourier transform: (Phi_Sigma, Psi, V_Sigma,
// U_Sigma) with frame (beta, -alpha).
Quiver fourier_quiver(const Quiver& q);

struct ExponentialComponent {
  GaussRational point;
  std::size_t multiplicity = 0;

  friend bool operator==(const ExponentialComponent&, const ExponentialComponent&) = default;
};

// Exponents c w at infinity with multiplicity dim Phi_c, in beta-order,
// omitting nodes whose vanishing space is zero.
std::vector<ExponentialComponent> exponential_components(const Quiver& q);

}  // namespace pervq
