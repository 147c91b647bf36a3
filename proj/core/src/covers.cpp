#include "pervq/covers.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <numeric>

#include "pervq/error.hpp"

namespace pervq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex to_complex(const GaussRational& g) { return {g.re_double(), g.im_double()}; }

std::string describe(Complex z) {
  return "(" + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") + std::to_string(z.imag()) + "i)";
}

// Orders by real part, treating real parts within tolerance as equal.
bool complex_less(Complex a, Complex b) {
  const double tol = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a.real() - b.real()) > tol) return a.real() < b.real();
  return a.imag() < b.imag();
}

Complex horner(const std::vector<Complex>& ascending, Complex u) {
  Complex acc = 0;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * u + *it;
  return acc;
}

std::vector<Complex> derivative_coeffs(const std::vector<Complex>& ascending) {
  std::vector<Complex> d;
  for (std::size_t k = 1; k < ascending.size(); ++k) d.push_back(static_cast<double>(k) * ascending[k]);
  return d;
}

// c is a critical value iff g(u) = u^s (f(u) - c) has a repeated root, i.e.
// the Sylvester resultant of g and g' vanishes. u = 0 is never a root of g.
bool certified_critical_value(const CoverSpec& f, const GaussRational& c) {
  const int shift = std::max(0, -f.min_power());
  const std::size_t n = static_cast<std::size_t>(std::max(f.max_power(), 0) + shift);
  std::vector<GaussRational> g(n + 1);
  for (const auto& [k, a] : f.terms()) g[static_cast<std::size_t>(k + shift)] += a;
  g[static_cast<std::size_t>(shift)] -= c;
  if (n < 2) return false;
  std::vector<GaussRational> dg(n);
  for (std::size_t k = 1; k <= n; ++k) dg[k - 1] = GaussRational(static_cast<long>(k)) * g[k];
  const std::size_t size = 2 * n - 1;
  Matrix sylvester(size, size);
  for (std::size_t r = 0; r + 1 < n; ++r)
    for (std::size_t k = 0; k <= n; ++k) sylvester(r, r + n - k) = g[k];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) sylvester(n - 1 + r, r + n - 1 - k) = dg[k];
  return determinant(sylvester).is_zero();
}

double distance_to_piece(const PathPiece& piece, Complex p) {
  if (piece.shape == PathPiece::Shape::Segment) {
    const Complex d = piece.to - piece.from;
    const double len2 = std::norm(d);
    if (len2 == 0) return std::abs(p - piece.from);
    const double s = std::clamp(((p - piece.from) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (piece.from + s * d));
  }
  if (std::abs(piece.sweep) >= kTwoPi - 1e-12) return std::abs(std::abs(p - piece.center) - piece.radius);
  const double phi = std::arg(p - piece.center);
  double offset = (phi - piece.start_angle) * (piece.sweep >= 0 ? 1.0 : -1.0);
  offset = std::fmod(offset, kTwoPi);
  if (offset < 0) offset += kTwoPi;
  if (offset <= std::abs(piece.sweep)) return std::abs(std::abs(p - piece.center) - piece.radius);
  return std::min(std::abs(p - piece.at(0.0)), std::abs(p - piece.at(1.0)));
}

PathPiece segment(Complex from, Complex to) {
  PathPiece p;
  p.shape = PathPiece::Shape::Segment;
  p.from = from;
  p.to = to;
  return p;
}

PathPiece arc(Complex center, double radius, double start_angle, double sweep) {
  PathPiece p;
  p.shape = PathPiece::Shape::Arc;
  p.center = center;
  p.radius = radius;
  p.start_angle = start_angle;
  p.sweep = sweep;
  p.from = p.at(0.0);
  return p;
}

PathPiece reversed(const PathPiece& p) {
  if (p.shape == PathPiece::Shape::Segment) return segment(p.to, p.from);
  return arc(p.center, p.radius, p.start_angle + p.sweep, -p.sweep);
}

// Straight leg from a to b; whenever it crosses the disk of radius rho around
// one of the obstacles it follows the counterclockwise boundary arc instead.
std::vector<PathPiece> detoured_leg(Complex a, Complex b, const std::vector<Complex>& obstacles, double rho) {
  struct Crossing {
    double s_in;
    double s_out;
    Complex center;
  };
  std::vector<Crossing> crossings;
  const Complex d = b - a;
  const double dd = std::norm(d);
  for (Complex c : obstacles) {
    // |a + s d - c|^2 = rho^2
    const Complex w = a - c;
    const double half_b = (w * std::conj(d)).real();
    const double cc = std::norm(w) - rho * rho;
    const double disc = half_b * half_b - dd * cc;
    if (disc <= 0) continue;
    const double root = std::sqrt(disc);
    const double s1 = (-half_b - root) / dd;
    const double s2 = (-half_b + root) / dd;
    if (s2 <= 0 || s1 >= 1) continue;
    crossings.push_back({s1, s2, c});
  }
  std::sort(crossings.begin(), crossings.end(), [](const Crossing& x, const Crossing& y) { return x.s_in < y.s_in; });
  std::vector<PathPiece> pieces;
  Complex cursor = a;
  for (const auto& c : crossings) {
    const Complex p_in = a + c.s_in * d;
    const Complex p_out = a + c.s_out * d;
    pieces.push_back(segment(cursor, p_in));
    const double theta_in = std::arg(p_in - c.center);
    double sweep = std::arg(p_out - c.center) - theta_in;
    while (sweep <= 0) sweep += kTwoPi;
    while (sweep > kTwoPi) sweep -= kTwoPi;
    pieces.push_back(arc(c.center, rho, theta_in, sweep));
    cursor = p_out;
  }
  pieces.push_back(segment(cursor, b));
  return pieces;
}

double loop_clearance(const Loop& loop, const std::vector<Complex>& values) {
  double clear = std::numeric_limits<double>::infinity();
  for (const auto& piece : loop.pieces) {
    for (Complex c : values) clear = std::min(clear, distance_to_piece(piece, c));
  }
  return clear;
}

std::vector<std::size_t> cluster_count_roots(const std::vector<Complex>& roots) {
  // Returns one representative index per cluster of numerically equal roots.
  std::vector<std::size_t> reps;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    bool merged = false;
    for (std::size_t r : reps) {
      if (std::abs(roots[k] - roots[r]) < 1e-4 * std::max(1.0, std::abs(roots[r]))) {
        merged = true;
        break;
      }
    }
    if (!merged) reps.push_back(k);
  }
  return reps;
}

}  // namespace

CoverSpec CoverSpec::polynomial(std::vector<GaussRational> coefficients) {
  CoverSpec f;
  f.kind_ = CoverKind::Polynomial;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (!coefficients[k].is_zero()) f.terms_.emplace(static_cast<int>(k), coefficients[k]);
  }
  if (f.terms_.empty()) throw Error(ErrorKind::DegenerateCover, "all coefficients are zero");
  return f;
}

CoverSpec CoverSpec::laurent(std::map<int, GaussRational> terms) {
  CoverSpec f;
  f.kind_ = CoverKind::Laurent;
  for (auto& [power, coeff] : terms) {
    if (!coeff.is_zero()) f.terms_.emplace(power, std::move(coeff));
  }
  if (f.terms_.empty()) throw Error(ErrorKind::DegenerateCover, "all coefficients are zero");
  return f;
}

CoverSpec airy_cover() { return CoverSpec::polynomial({0, -3, 0, 1}); }

CoverSpec elementary_cover() { return CoverSpec::laurent({{1, 1}, {-1, 1}}); }

Complex CoverSpec::eval(Complex u) const {
  Complex acc = 0;
  for (const auto& [k, a] : terms_) acc += to_complex(a) * std::pow(u, k);
  return acc;
}

Complex CoverSpec::derivative(Complex u) const {
  Complex acc = 0;
  for (const auto& [k, a] : terms_) {
    if (k != 0) acc += static_cast<double>(k) * to_complex(a) * std::pow(u, k - 1);
  }
  return acc;
}

std::vector<Complex> CoverSpec::fiber_polynomial(Complex z) const {
  const int shift = std::max(0, -min_power());
  const int top = std::max(max_power(), 0) + shift;
  std::vector<Complex> c(static_cast<std::size_t>(top) + 1, 0.0);
  for (const auto& [k, a] : terms_) c[static_cast<std::size_t>(k + shift)] += to_complex(a);
  c[static_cast<std::size_t>(shift)] -= z;
  return c;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& ascending) {
  std::vector<Complex> a = ascending;
  while (!a.empty() && a.back() == Complex(0)) a.pop_back();
  if (a.size() <= 1) return {};
  const std::size_t n = a.size() - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k < n; ++k) companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n - 1)) = -a[k] / a[n];
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots;
  const auto deriv = derivative_coeffs(a);
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    Complex r = solver.eigenvalues()(k);
    for (int it = 0; it < 8; ++it) {
      const Complex df = horner(deriv, r);
      if (std::abs(df) < 1e-14) break;
      const Complex step = horner(a, r) / df;
      const Complex next = r - step;
      if (std::abs(horner(a, next)) > std::abs(horner(a, r))) break;
      r = next;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(r))) break;
    }
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), complex_less);
  return roots;
}

std::optional<Rational> snap_rational(double x, long max_den, double tol) {
  if (!std::isfinite(x) || std::abs(x) > 1e12) return std::nullopt;
  long long h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  double rem = x;
  long long best_h = static_cast<long long>(std::llround(x)), best_k = 1;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(rem);
    const long long ai = static_cast<long long>(fl);
    const long long h = ai * h_prev + h_prev2;
    const long long k = ai * k_prev + k_prev2;
    if (k > max_den) break;
    best_h = h;
    best_k = k;
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) < 1e-15 * std::max(1.0, std::abs(x))) break;
    const double frac = rem - fl;
    if (frac < 1e-300) break;
    rem = 1.0 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  if (std::abs(static_cast<double>(best_h) / static_cast<double>(best_k) - x) >= tol) return std::nullopt;
  Rational q{mpz_class(std::to_string(best_h)), mpz_class(std::to_string(best_k))};
  q.canonicalize();
  return q;
}

std::optional<GaussRational> snap_gauss(Complex z, long max_den, double tol) {
  auto re = snap_rational(z.real(), max_den, tol);
  auto im = snap_rational(z.imag(), max_den, tol);
  if (!re || !im) return std::nullopt;
  return GaussRational(*re, *im);
}

CriticalData critical_data(const CoverSpec& f) {
  if (f.max_power() < 1) throw Error(ErrorKind::DegenerateCover, "f needs a positive power of u");
  if (f.generic_degree() < 1) throw Error(ErrorKind::DegenerateCover, "generic fiber is empty");
  // u^t f'(u) as an ordinary polynomial.
  std::map<int, Complex> dterms;
  for (const auto& [k, a] : f.terms()) {
    if (k != 0) dterms[k - 1] += static_cast<double>(k) * to_complex(a);
  }
  if (dterms.empty()) throw Error(ErrorKind::DegenerateCover, "f' is identically zero");
  const int shift = std::max(0, -dterms.begin()->first);
  std::vector<Complex> dpoly(static_cast<std::size_t>(dterms.rbegin()->first + shift) + 1, 0.0);
  for (const auto& [k, a] : dterms) dpoly[static_cast<std::size_t>(k + shift)] = a;

  CriticalData out;
  out.points = polynomial_roots(dpoly);
  std::vector<Complex> values;
  for (Complex p : out.points) {
    const Complex v = f.eval(p);
    const bool seen = std::any_of(values.begin(), values.end(), [&](Complex w) {
      return std::abs(v - w) < 1e-7 * std::max(1.0, std::abs(w));
    });
    if (!seen) values.push_back(v);
  }
  std::sort(values.begin(), values.end(), complex_less);
  for (Complex v : values) {
    CriticalValue cv{v, snap_gauss(v)};
    if (cv.exact && !certified_critical_value(f, *cv.exact)) {
      out.warnings.push_back("SnapFailed: " + cv.exact->to_string() + " is not an exact critical value near " +
                             describe(v));
      cv.exact.reset();
    } else if (!cv.exact) {
      out.warnings.push_back("SnapFailed: critical value " + describe(v) + " has no exact snap");
    }
    out.values.push_back(cv);
  }
  return out;
}

Complex PathPiece::at(double s) const {
  if (shape == Shape::Segment) return from + s * (to - from);
  return center + std::polar(radius, start_angle + s * sweep);
}

double PathPiece::length() const {
  if (shape == Shape::Segment) return std::abs(to - from);
  return radius * std::abs(sweep);
}

LoopSystem default_loops(const std::vector<Complex>& critical_values, std::optional<Complex> basepoint,
                         double radius_scale) {
  if (critical_values.empty()) throw Error(ErrorKind::DegenerateCover, "no critical values to encircle");
  if (!(radius_scale > 0 && radius_scale <= 1)) {
    throw Error(ErrorKind::PathThroughCriticalValue, "radius scale must lie in (0, 1]");
  }
  double delta = 1.0;
  if (critical_values.size() > 1) {
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < critical_values.size(); ++i) {
      for (std::size_t j = i + 1; j < critical_values.size(); ++j) {
        min_dist = std::min(min_dist, std::abs(critical_values[i] - critical_values[j]));
      }
    }
    delta = min_dist / 2;
  }
  const double r0 = delta / 2;
  LoopSystem sys;
  sys.clearance = r0;
  sys.radius = radius_scale * r0;
  if (basepoint) {
    for (Complex c : critical_values) {
      if (std::abs(*basepoint - c) < r0) {
        throw Error(ErrorKind::BasepointTooClose, "basepoint " + describe(*basepoint) + " is within " +
                                                      std::to_string(r0) + " of critical value " + describe(c));
      }
    }
    sys.basepoint = *basepoint;
  } else {
    double max_re = critical_values.front().real();
    for (Complex c : critical_values) max_re = std::max(max_re, c.real());
    sys.basepoint = Complex(max_re + std::max(1.0, r0), r0 / 2);
  }

  for (std::size_t idx = 0; idx < critical_values.size(); ++idx) {
    const Complex c = critical_values[idx];
    std::vector<Complex> others;
    for (std::size_t j = 0; j < critical_values.size(); ++j) {
      if (j != idx) others.push_back(critical_values[j]);
    }
    const Complex dir = (sys.basepoint - c) / std::abs(sys.basepoint - c);
    const Complex target = c + sys.radius * dir;
    Loop loop;
    loop.critical_index = idx;
    const auto leg = detoured_leg(sys.basepoint, target, others, r0);
    loop.pieces = leg;
    loop.pieces.push_back(arc(c, sys.radius, std::arg(dir), kTwoPi));
    for (auto it = leg.rbegin(); it != leg.rend(); ++it) loop.pieces.push_back(reversed(*it));
    sys.loops.push_back(std::move(loop));
  }
  return sys;
}

Loop enclosing_loop(const std::vector<Complex>& critical_values, Complex basepoint) {
  Complex center = 0;
  for (Complex c : critical_values) center += c;
  if (!critical_values.empty()) center /= static_cast<double>(critical_values.size());
  double reach = 0;
  for (Complex c : critical_values) reach = std::max(reach, std::abs(c - center));
  const double margin = std::max(1.0, reach / 2);
  Loop loop;
  loop.critical_index = critical_values.size();
  const double base_radius = std::abs(basepoint - center);
  const Complex dir = base_radius > 0 ? (basepoint - center) / base_radius : Complex(1, 0);
  if (base_radius >= reach + margin / 2) {
    loop.pieces.push_back(arc(center, base_radius, std::arg(dir), kTwoPi));
    return loop;
  }
  const Complex out = center + (reach + margin) * dir;
  loop.pieces.push_back(segment(basepoint, out));
  loop.pieces.push_back(arc(center, reach + margin, std::arg(dir), kTwoPi));
  loop.pieces.push_back(segment(out, basepoint));
  return loop;
}

std::size_t cycle_count(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::size_t cycles = 0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (std::size_t k = s; !seen[k]; k = p[k]) seen[k] = true;
  }
  return cycles;
}

Permutation compose(const Permutation& first, const Permutation& second) {
  Permutation out(first.size());
  for (std::size_t j = 0; j < first.size(); ++j) out[j] = second[first[j]];
  return out;
}

Matrix permutation_matrix(const Permutation& p) {
  Matrix t(p.size(), p.size());
  for (std::size_t j = 0; j < p.size(); ++j) t(p[j], j) = 1;
  return t;
}

LoopTrack track_loop(const CoverSpec& f, const std::vector<Complex>& start_roots, const Loop& loop,
                     const std::vector<Complex>& critical_values, const TrackerOptions& options) {
  const double clear = loop_clearance(loop, critical_values);
  if (!(clear > 1e-6)) {
    throw Error(ErrorKind::PathThroughCriticalValue,
                "loop passes within " + std::to_string(clear) + " of a critical value");
  }
  const std::size_t n = start_roots.size();
  const double h_max = options.step_scale * 0.5 * clear;
  const double h_min = 1e-12 * h_max;
  LoopTrack out;
  std::vector<Complex> roots = start_roots;
  std::vector<Complex> trial(n);

  auto min_separation = [n](const std::vector<Complex>& r) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) sep = std::min(sep, std::abs(r[i] - r[j]));
    }
    return sep;
  };

  // Newton on u -> f(u) - z; returns the iteration count or -1.
  auto correct = [&](Complex& u, Complex z) {
    for (int it = 1; it <= options.max_newton; ++it) {
      const Complex df = f.derivative(u);
      if (df == Complex(0)) return -1;
      const Complex step = (f.eval(u) - z) / df;
      u -= step;
      if (!std::isfinite(u.real()) || !std::isfinite(u.imag())) return -1;
      if (std::abs(step) <= options.newton_tol * std::max(1.0, std::abs(u))) return it;
    }
    return -1;
  };

  for (const auto& piece : loop.pieces) {
    const double len = piece.length();
    if (len == 0) continue;
    double s = 0;
    double h = h_max / 4;
    int streak = 0;
    while (s < 1.0) {
      const double ds = std::min(h / len, 1.0 - s);
      const Complex z0 = piece.at(s);
      const Complex z1 = s + ds >= 1.0 ? piece.end() : piece.at(s + ds);
      const Complex dz = z1 - z0;
      bool accepted = true;
      double step_error = 0;
      for (std::size_t i = 0; i < n && accepted; ++i) {
        const Complex u = roots[i];
        const Complex k1 = 1.0 / f.derivative(u);
        const Complex k2 = 1.0 / f.derivative(u + dz * k1);
        Complex v = u + dz * 0.5 * (k1 + k2);
        const Complex predicted = v;
        const int iters = correct(v, z1);
        if (iters < 0 || iters > options.slow_newton) accepted = false;
        if (accepted && std::abs(f.eval(v) - z1) >= options.residual_tol) accepted = false;
        step_error = std::max(step_error, std::abs(v - predicted));
        trial[i] = v;
      }
      if (accepted && n > 1) {
        const double sep_old = min_separation(roots);
        const double sep_new = min_separation(trial);
        if (sep_new < options.separation_ratio * options.newton_tol) accepted = false;
        for (std::size_t i = 0; i < n && accepted; ++i) {
          if (std::abs(trial[i] - roots[i]) > 0.25 * sep_old) accepted = false;
        }
        if (step_error > 0.1 * sep_new) accepted = false;
      }
      if (!accepted) {
        h /= 2;
        streak = 0;
        if (h < h_min) {
          throw Error(ErrorKind::NoConvergence, "step size underflow near z = " + describe(z0));
        }
        continue;
      }
      roots.swap(trial);
      for (const Complex& u : roots) {
        out.max_residual = std::max(out.max_residual, std::abs(f.eval(u) - z1));
      }
      s += ds;
      ++out.steps;
      if (++streak >= 3) {
        h = std::min(2 * h, h_max);
        streak = 0;
      }
    }
  }

  out.permutation.assign(n, 0);
  std::vector<bool> taken(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best = 0;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      const double d = std::abs(roots[j] - start_roots[k]);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        best = k;
      } else if (d < d2) {
        d2 = d;
      }
    }
    if (n > 1 && d2 < options.separation_ratio * d1) {
      throw Error(ErrorKind::ContinuationAmbiguous, "endpoint of sheet " + std::to_string(j + 1) +
                                                        " is not separated (ratio " + std::to_string(d2 / d1) +
                                                        ")");
    }
    if (taken[best]) {
      throw Error(ErrorKind::ContinuationAmbiguous, "two sheets end at sheet " + std::to_string(best + 1));
    }
    taken[best] = true;
    out.permutation[j] = best;
  }
  return out;
}

CoverMonodromy monodromy_permutations(const CoverSpec& f, const LoopSystem& loops, const TrackerOptions& options) {
  const CriticalData crit = critical_data(f);
  std::vector<Complex> values;
  for (const auto& cv : crit.values) values.push_back(cv.value);

  CoverMonodromy m;
  m.critical_values = crit.values;
  m.basepoint = loops.basepoint;
  m.sheet_labels = polynomial_roots(f.fiber_polynomial(loops.basepoint));
  if (m.sheet_labels.size() != f.generic_degree() || cluster_count_roots(m.sheet_labels).size() != m.sheet_labels.size()) {
    throw Error(ErrorKind::PathThroughCriticalValue, "basepoint fiber is not generic");
  }

  std::vector<std::future<LoopTrack>> jobs;
  for (const auto& loop : loops.loops) {
    jobs.push_back(std::async(std::launch::async, [&f, &m, &loop, &values, &options] {
      return track_loop(f, m.sheet_labels, loop, values, options);
    }));
  }
  m.permutations.assign(values.size(), Permutation{});
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    LoopTrack t = jobs[k].get();
    m.max_residual = std::max(m.max_residual, t.max_residual);
    m.permutations.at(loops.loops[k].critical_index) = std::move(t.permutation);
  }
  for (const auto& cv : crit.values) {
    m.preimage_counts.push_back(cluster_count_roots(polynomial_roots(f.fiber_polynomial(cv.value))).size());
  }
  return m;
}

CoverMonodromy renumber_sheets(const CoverMonodromy& m, const Permutation& new_label_of_sheet) {
  CoverMonodromy out = m;
  const std::size_t n = m.sheet_labels.size();
  for (std::size_t j = 0; j < n; ++j) out.sheet_labels[new_label_of_sheet[j]] = m.sheet_labels[j];
  for (std::size_t c = 0; c < m.permutations.size(); ++c) {
    for (std::size_t j = 0; j < n; ++j) {
      out.permutations[c][new_label_of_sheet[j]] = new_label_of_sheet[m.permutations[c][j]];
    }
  }
  return out;
}

CoverExtraction extract_cover_quiver(const CoverSpec& f, const Frame& frame, const CoverOptions& options) {
  check_frame(frame);
  const CriticalData crit = critical_data(f);
  std::vector<Complex> values;
  for (const auto& cv : crit.values) values.push_back(cv.value);

  std::vector<GaussRational> exact;
  if (options.exact_values) {
    for (Complex v : values) {
      const auto it = std::find_if(options.exact_values->begin(), options.exact_values->end(),
                                   [&](const GaussRational& g) { return std::abs(to_complex(g) - v) < 1e-6; });
      if (it == options.exact_values->end()) {
        throw Error(ErrorKind::SnapFailed, "no supplied exact value matches " + describe(v));
      }
      exact.push_back(*it);
    }
  } else {
    for (const auto& cv : crit.values) {
      if (!cv.exact) throw Error(ErrorKind::SnapFailed, "critical value " + describe(cv.value) + " is not exact");
      exact.push_back(*cv.exact);
    }
  }

  const LoopSystem loops = default_loops(values, options.basepoint, options.radius_scale);
  CoverMonodromy mono = monodromy_permutations(f, loops, options.tracker);
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (cycle_count(mono.permutations[c]) != mono.preimage_counts[c]) {
      throw Error(ErrorKind::ContinuationAmbiguous,
                  "monodromy at " + describe(values[c]) + " has " + std::to_string(cycle_count(mono.permutations[c])) +
                      " cycles but " + std::to_string(mono.preimage_counts[c]) + " preimages");
    }
  }

  if (options.numbering == SheetNumbering::FixedSheets) {
    std::vector<std::size_t> by_order(values.size());
    std::iota(by_order.begin(), by_order.end(), 0);
    std::stable_sort(by_order.begin(), by_order.end(), [&](std::size_t a, std::size_t b) {
      return order_key(exact[a], frame) < order_key(exact[b], frame);
    });
    const std::size_t n = mono.sheet_labels.size();
    Permutation label(n, n);
    std::size_t next = 0;
    for (auto it = by_order.rbegin(); it != by_order.rend(); ++it) {
      const Permutation& p = mono.permutations[*it];
      for (std::size_t j = 0; j < n; ++j) {
        if (p[j] == j && label[j] == n) label[j] = next++;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (label[j] == n) label[j] = next++;
    }
    mono = renumber_sheets(mono, label);
  }

  std::vector<Matrix> monos;
  for (const auto& p : mono.permutations) monos.push_back(permutation_matrix(p));
  LocalSystem ls = make_local_system(frame, mono.sheet_labels.size(), exact, std::move(monos));
  const Quiver localized = localized_quiver(ls);
  std::vector<Matrix> fixed;
  for (const auto& t : ls.monodromies()) fixed.push_back(kernel_basis(Matrix::identity(ls.rank()) - t));
  Quiver q = quotient_by_phi_subspaces(localized, fixed);
  return {std::move(mono), std::move(ls), std::move(q)};
}

Quiver quiver_from_cover(const CoverSpec& f, const Frame& frame, const CoverOptions& options) {
  return extract_cover_quiver(f, frame, options).quiver;
}

SectorReport ramified_sector_multipliers(BuiltinCover example, const CoverOptions& options) {
  const Frame frame{GaussRational::i(), GaussRational(1)};
  SectorReport report;
  report.example = example;
  report.extraction =
      extract_cover_quiver(example == BuiltinCover::Airy ? airy_cover() : elementary_cover(), frame, options);
  const Quiver& q = report.extraction.quiver;
  report.stokes = stokes_matrices(q);
  if (example == BuiltinCover::Airy) {
    const Matrix odd = stokes_plus_inverse(q);
    for (int j = 1; j <= 6; ++j) {
      report.sectors.push_back({"S" + std::to_string(j), j % 2 == 0 ? report.stokes.S_minus : odd});
    }
  } else {
    report.sectors.push_back({"l+", report.stokes.S_minus});
    report.sectors.push_back({"l-", report.stokes.S_plus});
  }
  return report;
}

SectorReport ramified_sector_multipliers(BuiltinCover example) {
  CoverOptions options;
  options.numbering = SheetNumbering::FixedSheets;
  return ramified_sector_multipliers(example, options);
}

}  // namespace pervq
