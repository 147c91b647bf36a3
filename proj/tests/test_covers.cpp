#include "doctest.h"

#include <cmath>

#include "pervq/covers.hpp"
#include "pervq/error.hpp"
#include "support.hpp"

using namespace pervq;
using test::default_frame;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InternalInconsistency;
}

std::vector<Complex> values_of(const CriticalData& data) {
  std::vector<Complex> out;
  for (const auto& v : data.values) out.push_back(v.value);
  return out;
}

// Samples every loop densely and checks the clearance promises.
void check_loop_geometry(const LoopSystem& system, const std::vector<Complex>& values) {
  for (const Loop& loop : system.loops) {
    REQUIRE_FALSE(loop.pieces.empty());
    CHECK(std::abs(loop.pieces.front().from - system.basepoint) < 1e-12);
    CHECK(std::abs(loop.pieces.back().end() - system.basepoint) < 1e-12);
    for (std::size_t k = 1; k < loop.pieces.size(); ++k) {
      CHECK(std::abs(loop.pieces[k - 1].end() - loop.pieces[k].at(0.0)) < 1e-12);
    }
    for (const PathPiece& piece : loop.pieces) {
      for (int s = 0; s <= 400; ++s) {
        const Complex z = piece.at(s / 400.0);
        for (std::size_t c = 0; c < values.size(); ++c) {
          const double bound = (c == loop.critical_index) ? system.radius : system.clearance;
          CHECK(std::abs(z - values[c]) >= bound * (1 - 1e-9));
        }
      }
    }
  }
}

Permutation tracked_product(const CoverSpec& f, const std::vector<Complex>& values, Complex basepoint) {
  const auto roots = polynomial_roots(f.fiber_polynomial(basepoint));
  return track_loop(f, roots, enclosing_loop(values, basepoint), values).permutation;
}

}  // namespace

TEST_CASE("cover specs") {
  const CoverSpec airy = airy_cover();
  CHECK(airy.generic_degree() == 3);
  CHECK(std::abs(airy.eval(2.0) - Complex(2.0)) < 1e-15);
  CHECK(std::abs(airy.derivative(1.0)) < 1e-15);
  const CoverSpec elem = elementary_cover();
  CHECK(elem.kind() == CoverKind::Laurent);
  CHECK(elem.generic_degree() == 2);
  CHECK(std::abs(elem.eval(1.0) - Complex(2.0)) < 1e-15);
  const auto fiber = elem.fiber_polynomial(2.0);
  REQUIRE(fiber.size() == 3);
  CHECK(std::abs(fiber[0] - Complex(1.0)) < 1e-15);
  CHECK(std::abs(fiber[1] - Complex(-2.0)) < 1e-15);
  CHECK(kind_of([] { CoverSpec::polynomial({0, 0}); }) == ErrorKind::DegenerateCover);
}

TEST_CASE("roots and snapping") {
  const auto roots = polynomial_roots({-1.0, 0.0, 1.0});
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] + 1.0) < 1e-14);
  CHECK(std::abs(roots[1] - 1.0) < 1e-14);
  const auto cube = polynomial_roots({-1.0, 0.0, 0.0, 1.0});
  REQUIRE(cube.size() == 3);
  CHECK(cube[0].imag() < cube[1].imag());
  CHECK(std::abs(cube[2] - 1.0) < 1e-14);

  CHECK(snap_rational(0.5) == make_rational(1, 2));
  CHECK(snap_rational(-2.0 / 3.0) == make_rational(-2, 3));
  CHECK_FALSE(snap_rational(std::sqrt(2.0), 100).has_value());
  CHECK(snap_gauss({0.25, -3.0}) == GaussRational(make_rational(1, 4), -3));
}

TEST_CASE("critical data") {
  const CriticalData airy = critical_data(airy_cover());
  REQUIRE(airy.points.size() == 2);
  CHECK(std::abs(airy.points[0] + 1.0) < 1e-12);
  CHECK(std::abs(airy.points[1] - 1.0) < 1e-12);
  CHECK(std::abs(airy_cover().eval(airy.points[1]) + 2.0) < 1e-12);
  REQUIRE(airy.values.size() == 2);
  CHECK(airy.values[0].exact == GaussRational(-2));
  CHECK(airy.values[1].exact == GaussRational(2));
  CHECK(airy.warnings.empty());

  const CriticalData elem = critical_data(elementary_cover());
  REQUIRE(elem.values.size() == 2);
  CHECK(elem.values[0].exact == GaussRational(-2));
  CHECK(elem.values[1].exact == GaussRational(2));

  const CriticalData square = critical_data(CoverSpec::polynomial({0, 0, 1}));
  REQUIRE(square.points.size() == 1);
  CHECK(std::abs(square.points[0]) < 1e-12);
  CHECK(square.values[0].exact == GaussRational(0));

  const CriticalData complex_cover = critical_data(CoverSpec::polynomial({0, GaussRational::i(), 1}));
  CHECK(complex_cover.values[0].exact == GaussRational(make_rational(1, 4)));

  // u^3 - 2u has critical values +-(4/3) sqrt(2/3): no exact snap survives.
  const CriticalData irrational = critical_data(CoverSpec::polynomial({0, -2, 0, 1}));
  CHECK_FALSE(irrational.values[0].exact.has_value());
  CHECK(irrational.warnings.size() == 2);
  CHECK(kind_of([] { quiver_from_cover(CoverSpec::polynomial({0, -2, 0, 1}), default_frame()); }) ==
        ErrorKind::SnapFailed);

  CHECK(kind_of([] { critical_data(CoverSpec::polynomial({3})); }) == ErrorKind::DegenerateCover);
}

TEST_CASE("default loops") {
  const std::vector<Complex> two{-2.0, 2.0};
  const LoopSystem loops = default_loops(two);
  CHECK(std::abs(loops.basepoint - Complex(3.0, 0.5)) < 1e-15);
  CHECK(loops.radius == doctest::Approx(1.0));
  CHECK(loops.clearance == doctest::Approx(1.0));
  REQUIRE(loops.loops.size() == 2);
  check_loop_geometry(loops, two);

  bool detour_above = false;
  for (const PathPiece& piece : loops.loops[0].pieces) {
    if (piece.shape == PathPiece::Shape::Arc && std::abs(piece.center - Complex(2.0)) < 1e-12 &&
        piece.at(0.5).imag() > 0.5) {
      detour_above = true;
    }
  }
  CHECK(detour_above);

  const std::vector<Complex> one{0.0};
  const LoopSystem single = default_loops(one);
  CHECK(std::abs(single.basepoint - Complex(1.0, 0.25)) < 1e-15);
  check_loop_geometry(single, one);

  CHECK(kind_of([&] { default_loops(two, Complex(2.1, 0.0)); }) == ErrorKind::BasepointTooClose);
  CHECK(kind_of([] { default_loops({}); }) == ErrorKind::DegenerateCover);

  const std::vector<Complex> grid{Complex(0, 0), Complex(1, 1), Complex(-1, 2), Complex(2, -1), Complex(1, 0.2)};
  check_loop_geometry(default_loops(grid), grid);
  check_loop_geometry(default_loops(grid, std::nullopt, 0.5), grid);
}

TEST_CASE("permutation helpers") {
  CHECK(cycle_count({0, 1, 2}) == 3);
  CHECK(cycle_count({1, 0, 2}) == 2);
  CHECK(cycle_count({1, 2, 0}) == 1);
  CHECK(compose({1, 0, 2}, {0, 2, 1}) == Permutation{2, 0, 1});
  const Matrix t = permutation_matrix({1, 2, 0});
  CHECK(t == Matrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  CHECK(permutation_matrix(compose({1, 0, 2}, {0, 2, 1})) ==
        permutation_matrix({0, 2, 1}) * permutation_matrix({1, 0, 2}));
}

TEST_CASE("Airy monodromy") {
  const CoverSpec f = airy_cover();
  const auto values = values_of(critical_data(f));
  const CoverMonodromy m = monodromy_permutations(f, default_loops(values));
  REQUIRE(m.permutations.size() == 2);
  for (const Permutation& p : m.permutations) CHECK(cycle_count(p) == 2);
  CHECK(m.preimage_counts == std::vector<std::size_t>{2, 2});
  CHECK(m.max_residual < 1e-9);

  const CoverExtraction fixed = extract_cover_quiver(f, default_frame(), test::fixed_numbering());
  CHECK(fixed.monodromy.permutations[0] == Permutation{2, 1, 0});
  CHECK(fixed.monodromy.permutations[1] == Permutation{0, 2, 1});
  CHECK(fixed.quiver == test::airy_quiver());

  // dim Phi_c = N - #cycles(T_c)
  for (std::size_t c = 0; c < 2; ++c) {
    CHECK(fixed.quiver.node(c).phi_dim() == 3 - cycle_count(fixed.monodromy.permutations[c]));
  }
}

TEST_CASE("elementary monodromy") {
  const CoverExtraction e = extract_cover_quiver(elementary_cover(), default_frame(), test::fixed_numbering());
  CHECK(e.monodromy.permutations[0] == Permutation{1, 0});
  CHECK(e.monodromy.permutations[1] == Permutation{1, 0});
  CHECK(e.monodromy.preimage_counts == std::vector<std::size_t>{1, 1});
  CHECK(e.quiver == test::elementary_quiver());

  const CoverExtraction b = extract_cover_quiver(elementary_cover(), default_frame());
  CHECK(b.monodromy.permutations == e.monodromy.permutations);
}

TEST_CASE("stability under halving") {
  for (const CoverSpec& f : {airy_cover(), elementary_cover()}) {
    const auto values = values_of(critical_data(f));
    const CoverMonodromy base = monodromy_permutations(f, default_loops(values));
    TrackerOptions fine;
    fine.step_scale = 0.5;
    const CoverMonodromy small_step = monodromy_permutations(f, default_loops(values), fine);
    const CoverMonodromy small_radius = monodromy_permutations(f, default_loops(values, std::nullopt, 0.5));
    CHECK(small_step.permutations == base.permutations);
    CHECK(small_radius.permutations == base.permutations);
    CHECK(small_step.max_residual < 1e-9);
    CHECK(small_radius.max_residual < 1e-9);
  }
}

TEST_CASE("loop products against one enclosing circle") {
  const CoverSpec airy = airy_cover();
  const auto av = values_of(critical_data(airy));
  const CoverMonodromy am = monodromy_permutations(airy, default_loops(av));
  const Permutation a_prod = compose(am.permutations[0], am.permutations[1]);
  CHECK(cycle_count(a_prod) == 1);
  CHECK(tracked_product(airy, av, am.basepoint) == a_prod);

  const CoverSpec elem = elementary_cover();
  const auto ev = values_of(critical_data(elem));
  const CoverMonodromy em = monodromy_permutations(elem, default_loops(ev));
  const Permutation e_prod = compose(em.permutations[0], em.permutations[1]);
  CHECK(e_prod == Permutation{0, 1});
  CHECK(tracked_product(elem, ev, em.basepoint) == e_prod);
}

TEST_CASE("track_loop refuses loops through critical values") {
  Loop through;
  PathPiece piece;
  piece.from = Complex(3.0, 0.0);
  piece.to = Complex(1.0, 0.0);
  through.pieces = {piece};
  const auto roots = polynomial_roots(airy_cover().fiber_polynomial(3.0));
  CHECK(kind_of([&] { track_loop(airy_cover(), roots, through, {-2.0, 2.0}); }) ==
        ErrorKind::PathThroughCriticalValue);
}

TEST_CASE("renumbering sheets") {
  const auto values = values_of(critical_data(airy_cover()));
  const CoverMonodromy m = monodromy_permutations(airy_cover(), default_loops(values));
  const Permutation relabel{2, 0, 1};
  const CoverMonodromy r = renumber_sheets(m, relabel);
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(r.permutations[c][relabel[j]] == relabel[m.permutations[c][j]]);
  }
  for (std::size_t j = 0; j < 3; ++j) CHECK(r.sheet_labels[relabel[j]] == m.sheet_labels[j]);
}

TEST_CASE("sheet numbering changes the quiver only by a gauge") {
  const Quiver fixed = quiver_from_cover(airy_cover(), default_frame(), test::fixed_numbering());
  CoverOptions other;
  other.basepoint = Complex(0.0, 3.0);
  const Quiver moved = quiver_from_cover(airy_cover(), default_frame(), other);
  const StokesPair a = stokes_matrices(fixed);
  const StokesPair b = stokes_matrices(moved);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(a.S_plus(k, k) == b.S_plus(k, k));
    CHECK(a.S_minus(k, k) == b.S_minus(k, k));
  }
  CHECK(a.S_plus(0, 1) * a.S_minus(1, 0) == b.S_plus(0, 1) * b.S_minus(1, 0));
  CHECK(verify_theorem_identity(moved).ok());
}

TEST_CASE("trivial local monodromy leaves no vanishing cycles") {
  const Matrix swap = permutation_matrix({1, 0});
  const LocalSystem ls = make_local_system(default_frame(), 2, {-1, 1}, {swap, Matrix::identity(2)});
  const Quiver loc = localized_quiver(ls);
  std::vector<Matrix> fixed;
  for (const Matrix& t : ls.monodromies()) fixed.push_back(kernel_basis(Matrix::identity(2) - t));
  const Quiver quotient = quotient_by_phi_subspaces(loc, fixed);
  CHECK(quotient.node(1).phi_dim() == 0);
  CHECK(exponential_components(quotient) == std::vector<ExponentialComponent>{{-1, 1}});
}

TEST_CASE("sector multipliers") {
  const SectorReport airy = ramified_sector_multipliers(BuiltinCover::Airy);
  REQUIRE(airy.sectors.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    const Matrix expected = (k % 2 == 1) ? Matrix{{-1, 0}, {-1, -1}} : Matrix{{1, -1}, {0, 1}};
    CHECK(airy.sectors[k].S == expected);
  }
  CHECK(airy.sectors[0].label == "S1");
  CHECK(airy.extraction.quiver == test::airy_quiver());

  const SectorReport elem = ramified_sector_multipliers(BuiltinCover::Elementary);
  REQUIRE(elem.sectors.size() == 2);
  CHECK(elem.sectors[0].S == Matrix{{-1, 0}, {-2, -1}});
  CHECK(elem.sectors[1].S == Matrix{{1, 2}, {0, 1}});
}

TEST_CASE("pipeline is deterministic") {
  const SectorReport a = ramified_sector_multipliers(BuiltinCover::Airy);
  const SectorReport b = ramified_sector_multipliers(BuiltinCover::Airy);
  CHECK(a.extraction.quiver == b.extraction.quiver);
  CHECK(a.extraction.monodromy.max_residual == b.extraction.monodromy.max_residual);
}
