#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pervq/exactnum.hpp"

namespace pervq {

// Cut direction alpha and ordering covector beta, with Re(alpha beta) = 0.
struct Frame {
  GaussRational alpha;
  GaussRational beta;

  // Sign of Im(alpha beta); recorded, never constrained.
  int orientation() const { return sgn((alpha * beta).im()); }

  friend bool operator==(const Frame&, const Frame&) = default;
};

// Throws BadFrame if alpha = 0, beta = 0 or Re(alpha beta) != 0.
void check_frame(const Frame& frame);

// Re(c beta): the key of the total order on singular points.
Rational order_key(const GaussRational& c, const Frame& frame);

struct QuiverNode {
  GaussRational point;
  Matrix u;  // phi_dim x psi_dim, nearby -> vanishing
  Matrix v;  // psi_dim x phi_dim, vanishing -> nearby

  std::size_t phi_dim() const { return u.rows(); }

  friend bool operator==(const QuiverNode&, const QuiverNode&) = default;
};

// A validated quiver. Nodes are strictly ascending in Re(c beta); the only
// way to build one is validate_and_order.
class Quiver {
 public:
  const Frame& frame() const { return frame_; }
  std::size_t psi_dim() const { return psi_dim_; }
  std::span<const QuiverNode> nodes() const { return nodes_; }
  const QuiverNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t size() const { return nodes_.size(); }

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  friend Quiver validate_and_order(const Frame&, std::size_t, std::vector<QuiverNode>);
  Frame frame_;
  std::size_t psi_dim_ = 0;
  std::vector<QuiverNode> nodes_;
};

// Checks the frame, every node shape against psi_dim, pairwise order
// separation Re((c - c') beta) != 0 and invertibility of 1 - uv and 1 - vu;
// returns the nodes sorted by Re(c beta).
// Errors: BadFrame, DimensionMismatch, TieBreak, SingularMonodromy.
Quiver validate_and_order(const Frame& frame, std::size_t psi_dim, std::vector<QuiverNode> nodes);

struct NodeMonodromy {
  Matrix psi;  // T_c = 1 - v u on the nearby space
  Matrix phi;  // 1 - u v on the vanishing space
};

std::vector<NodeMonodromy> monodromies(const Quiver& q);

// T_1 T_2 ... T_n (T_n applied first); identity for an empty quiver.
Matrix total_monodromy_psi(const Quiver& q);

// Monodromy representation of a local system on the complement of the points,
// already expressed on a single nearby space k^rank.
class LocalSystem {
 public:
  const Frame& frame() const { return frame_; }
  std::size_t rank() const { return rank_; }
  std::span<const GaussRational> points() const { return points_; }
  std::span<const Matrix> monodromies() const { return monodromies_; }

  friend bool operator==(const LocalSystem&, const LocalSystem&) = default;

 private:
  friend LocalSystem make_local_system(const Frame&, std::size_t, std::vector<GaussRational>,
                                       std::vector<Matrix>);
  Frame frame_;
  std::size_t rank_ = 0;
  std::vector<GaussRational> points_;
  std::vector<Matrix> monodromies_;
};

// Sorts points (with their monodromies) into the beta-order.
// Errors: BadFrame, DimensionMismatch, TieBreak, SingularMatrix.
LocalSystem make_local_system(const Frame& frame, std::size_t rank, std::vector<GaussRational> points,
                              std::vector<Matrix> monodromies);

// u_c = 1, v_c = 1 - T_c on Phi_c = Psi = k^N.
Quiver localized_quiver(const LocalSystem& ls);

// Beilinson maximal extension: Phi_c = Psi + Psi, u_c = (1; 0), v_c = (1 - T_c, -1).
Quiver beilinson_quiver(const LocalSystem& ls);

// Quiver supported on the points: Psi = 0 and Phi_c = k^dims[c].
Quiver skyscraper_quiver(const Frame& frame, std::vector<GaussRational> points,
                         std::span<const std::size_t> dims);

// Quotient by the sub-quiver (0, S_c) where the columns of subspaces[c] span
// S_c inside ker v_c. Phi'_c is coordinatized by cokernel_projection(S_c).
// Errors: DimensionMismatch, SubspaceNotInKernel, SingularMonodromy.
Quiver quotient_by_phi_subspaces(const Quiver& q, std::span<const Matrix> subspaces);

struct Reconstruction {
  Quiver g;
  Matrix psi_iso;               // Psi(g) -> Psi(q)
  std::vector<Matrix> phi_isos;  // Phi_c(g) -> Phi_c(q)
};

// Rebuilds each node from the three-term complex
//   Psi --(1, 1-T, u)--> Psi + Psi + Phi --(-p2 + v)--> Psi
// and reads the quiver maps off its middle cohomology. Throws
// InternalInconsistency if an exactness check fails.
Reconstruction reconstruct_G(const Quiver& q);

// u'_c = D_c u_c P^-1, v'_c = P v_c D_c^-1. Errors: DimensionMismatch, SingularMatrix.
Quiver apply_gauge(const Quiver& q, const Matrix& psi_change, std::span<const Matrix> phi_changes);

}  // namespace pervq
