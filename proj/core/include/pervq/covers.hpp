#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pervq/exactnum.hpp"
#include "pervq/quiver.hpp"
#include "pervq/stokes.hpp"

namespace pervq {

using Complex = std::complex<double>;

enum class CoverKind { Polynomial, Laurent };

// f(u) = sum a_k u^k, with negative k allowed for Laurent covers. Poles (only
// u = 0 here) are excluded from the domain.
class CoverSpec {
 public:
  // Coefficients ascending by power starting at u^0.
  static CoverSpec polynomial(std::vector<GaussRational> coefficients);
  static CoverSpec laurent(std::map<int, GaussRational> terms);

  CoverKind kind() const { return kind_; }
  const std::map<int, GaussRational>& terms() const { return terms_; }
  int min_power() const { return terms_.begin()->first; }
  int max_power() const { return terms_.rbegin()->first; }
  // Number of finite solutions of f(u) = z for generic z.
  std::size_t generic_degree() const { return static_cast<std::size_t>(max_power() - std::min(0, min_power())); }

  Complex eval(Complex u) const;
  Complex derivative(Complex u) const;
  // Ascending coefficients of the polynomial u^s (f(u) - z), s = max(0, -min_power).
  std::vector<Complex> fiber_polynomial(Complex z) const;

 private:
  CoverKind kind_ = CoverKind::Polynomial;
  std::map<int, GaussRational> terms_;  // zero coefficients dropped
};

CoverSpec airy_cover();        // u^3 - 3u
CoverSpec elementary_cover();  // u + 1/u

// Roots of an ascending-coefficient polynomial (companion matrix eigenvalues,
// then Newton polish), sorted by real part, then imaginary part.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& ascending);

// Best rational approximation with denominator <= max_den by continued
// fractions, accepted only if within tol.
std::optional<Rational> snap_rational(double x, long max_den = 1'000'000, double tol = 1e-9);
std::optional<GaussRational> snap_gauss(Complex z, long max_den = 1'000'000, double tol = 1e-9);

struct CriticalValue {
  Complex value;
  std::optional<GaussRational> exact;  // missing if the snap failed
};

struct CriticalData {
  std::vector<Complex> points;          // roots of f', sorted
  std::vector<CriticalValue> values;    // distinct f(points), sorted by (re, im)
  std::vector<std::string> warnings;    // SnapFailed diagnostics
};

// Errors: DegenerateCover if f' is identically zero or the fiber degree < 1.
CriticalData critical_data(const CoverSpec& f);

// One piece of a path in the z-plane.
struct PathPiece {
  enum class Shape { Segment, Arc } shape = Shape::Segment;
  Complex from;
  Complex to;          // segment end
  Complex center;      // arc center
  double radius = 0;   // arc radius
  double start_angle = 0;
  double sweep = 0;    // signed; positive is counterclockwise

  Complex at(double s) const;  // s in [0, 1]
  Complex end() const { return at(1.0); }
  double length() const;
};

struct Loop {
  std::size_t critical_index = 0;  // index into the critical value list
  std::vector<PathPiece> pieces;   // closed at the basepoint
};

struct LoopSystem {
  Complex basepoint;
  double clearance = 0;  // detour radius; no path point is closer to another critical value
  double radius = 0;     // circle radius around the encircled value
  std::vector<Loop> loops;
};

// Basepoint (max Re) + max(1, r0) + i r0/2 with r0 = delta/2 and delta half the
// minimum pairwise distance (1 for a single value). Each loop runs straight
// towards its value, passes other values counterclockwise on arcs of radius
// r0, circles its value once counterclockwise at radius radius_scale * r0 and
// returns the same way.
// Errors: BasepointTooClose if a user basepoint is within r0 of a value.
LoopSystem default_loops(const std::vector<Complex>& critical_values,
                         std::optional<Complex> basepoint = std::nullopt, double radius_scale = 1.0);

// Closed loop from the basepoint around every critical value once, counterclockwise.
Loop enclosing_loop(const std::vector<Complex>& critical_values, Complex basepoint);

struct TrackerOptions {
  double step_scale = 1.0;      // multiplies initial and maximal steps
  double newton_tol = 1e-12;
  int max_newton = 25;
  int slow_newton = 5;          // more corrector iterations halve the step
  double residual_tol = 1e-9;
  double separation_ratio = 10.0;
};

using Permutation = std::vector<std::size_t>;  // sheet j ends at sheet p[j]

std::size_t cycle_count(const Permutation& p);
Permutation compose(const Permutation& first, const Permutation& second);  // first, then second
// T e_j = e_{p[j]}.
Matrix permutation_matrix(const Permutation& p);

struct LoopTrack {
  Permutation permutation;
  double max_residual = 0;
  std::size_t steps = 0;
};

// Tracks all sheets of f(u) = z along the loop starting from the given roots.
// Errors: PathThroughCriticalValue, NoConvergence, ContinuationAmbiguous.
LoopTrack track_loop(const CoverSpec& f, const std::vector<Complex>& start_roots, const Loop& loop,
                     const std::vector<Complex>& critical_values, const TrackerOptions& options = {});

struct CoverMonodromy {
  std::vector<CriticalValue> critical_values;
  std::vector<Permutation> permutations;  // per critical value
  std::vector<std::size_t> preimage_counts;  // distinct finite preimages per critical value
  std::vector<Complex> sheet_labels;      // basepoint roots in sheet order
  Complex basepoint;
  double max_residual = 0;
};

CoverMonodromy monodromy_permutations(const CoverSpec& f, const LoopSystem& loops,
                                      const TrackerOptions& options = {});

enum class SheetNumbering {
  Basepoint,  // basepoint roots sorted by real part, then imaginary part
  // Walking critical values from last to first in beta-order, the sheets fixed
  // by each local monodromy take the next labels; the rest follow in basepoint
  // order. Gives the Airy numbering T_2 = (1)(23), T_-2 = (13)(2).
  FixedSheets,
};

CoverMonodromy renumber_sheets(const CoverMonodromy& m, const Permutation& new_label_of_sheet);

struct CoverOptions {
  SheetNumbering numbering = SheetNumbering::Basepoint;
  std::optional<Complex> basepoint;
  double radius_scale = 1.0;
  TrackerOptions tracker;
  std::optional<std::vector<GaussRational>> exact_values;  // overrides snapping
};

struct CoverExtraction {
  CoverMonodromy monodromy;
  LocalSystem local_system;
  Quiver quiver;
};

// Localized quiver of the permutation local system modulo the skyscraper
// sub-quiver S_c = Fix(T_c). Errors: SnapFailed, TieBreak and pipeline errors.
CoverExtraction extract_cover_quiver(const CoverSpec& f, const Frame& frame, const CoverOptions& options = {});
Quiver quiver_from_cover(const CoverSpec& f, const Frame& frame, const CoverOptions& options = {});

enum class BuiltinCover { Airy, Elementary };

struct Sector {
  std::string label;
  Matrix S;
};

struct SectorReport {
  BuiltinCover example = BuiltinCover::Airy;
  CoverExtraction extraction;
  StokesPair stokes;
  std::vector<Sector> sectors;
};

// Airy: six sectors with S_even = S_minus and S_odd = S_plus^-1.
// Elementary: lines l+ and l- carry S_minus and S_plus.
// Frame (i, 1); numbering defaults to FixedSheets.
SectorReport ramified_sector_multipliers(BuiltinCover example, const CoverOptions& options);
SectorReport ramified_sector_multipliers(BuiltinCover example);

}  // namespace pervq
