#include "pervq/documents.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "pervq/error.hpp"

namespace pervq {

using Json = nlohmann::ordered_json;

namespace {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, "invalid JSON at line " + std::to_string(line) + ", column " +
                                           std::to_string(col) + ": " + e.what());
  }
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t parse_count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

Rational parse_rational_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      fail(where, e.detail());
    }
  }
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  fail(where, "expected a rational string or integer");
}

GaussRational parse_gauss_json(const Json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 2) fail(where, "expected [re, im]");
    return {parse_rational_json(j[0], where + "[0]"), parse_rational_json(j[1], where + "[1]")};
  }
  return {parse_rational_json(j, where), 0};
}

Json gauss_pair(const GaussRational& g) { return Json::array({to_string(g.re()), to_string(g.im())}); }

Json entry_json(const GaussRational& g) { return g.is_real() ? Json(to_string(g.re())) : gauss_pair(g); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(entry_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix parse_matrix_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of rows");
  if (j.size() != rows) {
    throw Error(ErrorKind::DimensionMismatch,
                where + " has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array()) fail(rw, "expected a row");
    if (row.size() != cols) {
      throw Error(ErrorKind::DimensionMismatch,
                  rw + " has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_gauss_json(row[c], rw + "[" + std::to_string(c) + "]");
  }
  return m;
}

Json frame_json(const Frame& f) { return Json{{"alpha", gauss_pair(f.alpha)}, {"beta", gauss_pair(f.beta)}}; }

Frame parse_frame_json(const Json& doc) {
  const Json& f = field(doc, "frame", "document");
  return {parse_gauss_json(field(f, "alpha", "frame"), "frame.alpha"),
          parse_gauss_json(field(f, "beta", "frame"), "frame.beta")};
}

void expect_format(const Json& doc, const char* format) {
  const Json& f = field(doc, "format", "document");
  if (!f.is_string() || f.get<std::string>() != format) {
    fail("document", std::string("format must be \"") + format + "\"");
  }
}

std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

}  // namespace

std::string document_format(std::string_view text) {
  const Json doc = parse_json(text);
  const Json& f = field(doc, "format", "document");
  if (!f.is_string()) fail("document", "format must be a string");
  return f.get<std::string>();
}

Quiver parse_quiver_document(std::string_view text) {
  const Json doc = parse_json(text);
  expect_format(doc, "quiver-v1");
  const Frame frame = parse_frame_json(doc);
  const std::size_t psi = parse_count(field(doc, "psi_dim", "document"), "psi_dim");
  const Json& nodes_json = field(doc, "nodes", "document");
  if (!nodes_json.is_array()) fail("nodes", "expected a list");
  std::vector<QuiverNode> nodes;
  for (std::size_t i = 0; i < nodes_json.size(); ++i) {
    const Json& nj = nodes_json[i];
    const std::string where = "node " + std::to_string(i);
    const Json& uj = field(nj, "u", where);
    std::size_t d = 0;
    if (nj.contains("phi_dim")) {
      d = parse_count(nj["phi_dim"], where + ".phi_dim");
    } else if (uj.is_array()) {
      d = uj.size();
    }
    nodes.push_back({parse_gauss_json(field(nj, "c", where), where + ".c"),
                     parse_matrix_json(uj, d, psi, where + ".u"),
                     parse_matrix_json(field(nj, "v", where), psi, d, where + ".v")});
  }
  return validate_and_order(frame, psi, std::move(nodes));
}

std::string serialize_quiver(const Quiver& q, bool pretty) {
  Json nodes = Json::array();
  for (const auto& n : q.nodes()) {
    nodes.push_back(Json{{"c", gauss_pair(n.point)},
                         {"phi_dim", n.phi_dim()},
                         {"u", matrix_json(n.u)},
                         {"v", matrix_json(n.v)}});
  }
  Json doc{{"format", "quiver-v1"}, {"frame", frame_json(q.frame())}, {"psi_dim", q.psi_dim()}, {"nodes", nodes}};
  return dump(doc, pretty);
}

LocalSystem parse_local_system_document(std::string_view text) {
  const Json doc = parse_json(text);
  expect_format(doc, "localsys-v1");
  const Frame frame = parse_frame_json(doc);
  const std::size_t rank = parse_count(field(doc, "rank", "document"), "rank");
  const Json& pts = field(doc, "points", "document");
  const Json& mons = field(doc, "monodromies", "document");
  if (!pts.is_array() || !mons.is_array()) fail("document", "points and monodromies must be lists");
  std::vector<GaussRational> points;
  for (std::size_t k = 0; k < pts.size(); ++k) points.push_back(parse_gauss_json(pts[k], "points[" + std::to_string(k) + "]"));
  std::vector<Matrix> monodromies;
  for (std::size_t k = 0; k < mons.size(); ++k) {
    monodromies.push_back(parse_matrix_json(mons[k], rank, rank, "monodromies[" + std::to_string(k) + "]"));
  }
  return make_local_system(frame, rank, std::move(points), std::move(monodromies));
}

std::string serialize_local_system(const LocalSystem& ls, bool pretty) {
  Json points = Json::array();
  for (const auto& p : ls.points()) points.push_back(gauss_pair(p));
  Json monos = Json::array();
  for (const auto& t : ls.monodromies()) monos.push_back(matrix_json(t));
  Json doc{{"format", "localsys-v1"},
           {"frame", frame_json(ls.frame())},
           {"rank", ls.rank()},
           {"points", points},
           {"monodromies", monos}};
  return dump(doc, pretty);
}

CoverDocument parse_cover_document(std::string_view text) {
  const Json doc = parse_json(text);
  expect_format(doc, "cover-v1");
  const Json& kind = field(doc, "kind", "document");
  const Json& coeffs = field(doc, "coefficients", "document");
  if (!coeffs.is_array()) fail("coefficients", "expected a list");
  CoverDocument out;
  if (kind == "polynomial") {
    std::vector<GaussRational> a;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      a.push_back(parse_gauss_json(coeffs[k], "coefficients[" + std::to_string(k) + "]"));
    }
    out.cover = CoverSpec::polynomial(std::move(a));
  } else if (kind == "laurent") {
    std::map<int, GaussRational> terms;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const std::string where = "coefficients[" + std::to_string(k) + "]";
      const Json& t = coeffs[k];
      if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer()) fail(where, "expected [power, coefficient]");
      const int power = t[0].get<int>();
      if (terms.count(power)) fail(where, "repeated power " + std::to_string(power));
      terms.emplace(power, parse_gauss_json(t[1], where + "[1]"));
    }
    out.cover = CoverSpec::laurent(std::move(terms));
  } else {
    fail("kind", "expected \"polynomial\" or \"laurent\"");
  }
  if (doc.contains("basepoint")) {
    const Json& b = doc["basepoint"];
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
      fail("basepoint", "expected [x, y] numbers");
    }
    out.basepoint = Complex(b[0].get<double>(), b[1].get<double>());
  }
  if (doc.contains("critical_values")) {
    const Json& cv = doc["critical_values"];
    if (!cv.is_array()) fail("critical_values", "expected a list");
    std::vector<GaussRational> values;
    for (std::size_t k = 0; k < cv.size(); ++k) {
      values.push_back(parse_gauss_json(cv[k], "critical_values[" + std::to_string(k) + "]"));
    }
    out.critical_values = std::move(values);
  }
  return out;
}

std::string serialize_cover_document(const CoverDocument& doc, bool pretty) {
  Json coeffs = Json::array();
  const CoverSpec& f = doc.cover;
  if (f.kind() == CoverKind::Polynomial) {
    for (int k = 0; k <= f.max_power(); ++k) {
      const auto it = f.terms().find(k);
      coeffs.push_back(entry_json(it == f.terms().end() ? GaussRational(0) : it->second));
    }
  } else {
    for (const auto& [k, a] : f.terms()) coeffs.push_back(Json::array({k, entry_json(a)}));
  }
  Json out{{"format", "cover-v1"},
           {"kind", f.kind() == CoverKind::Polynomial ? "polynomial" : "laurent"},
           {"coefficients", coeffs}};
  if (doc.basepoint) out["basepoint"] = Json::array({doc.basepoint->real(), doc.basepoint->imag()});
  if (doc.critical_values) {
    Json cv = Json::array();
    for (const auto& g : *doc.critical_values) cv.push_back(gauss_pair(g));
    out["critical_values"] = cv;
  }
  return dump(out, pretty);
}

std::string serialize_stokes(const StokesPair& s, const Matrix& plus_inverse, const IdentityReport& checks,
                             bool pretty) {
  Json order = Json::array();
  for (const auto& c : s.order) order.push_back(gauss_pair(c));
  Json doc{{"format", "stokes-v1"},
           {"order", order},
           {"block_dims", s.block_dims},
           {"S_plus", matrix_json(s.S_plus)},
           {"S_minus", matrix_json(s.S_minus)},
           {"S_plus_inverse", matrix_json(plus_inverse)},
           {"identity_checks", Json{{"phi", checks.phi_ok}, {"psi", checks.psi_ok}}}};
  return dump(doc, pretty);
}

namespace {

void print_blocks(std::ostringstream& os, const char* name, const Matrix& m, const std::vector<std::size_t>& dims) {
  std::size_t width = 1;
  for (const auto& x : m.entries()) width = std::max(width, x.to_string().size());
  std::vector<bool> boundary(m.cols() + 1, false);
  std::size_t acc = 0;
  for (std::size_t d : dims) {
    acc += d;
    boundary[acc] = true;
  }
  os << name << " =\n";
  std::size_t row_acc = 0;
  std::size_t block = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    while (block < dims.size() && row_acc + dims[block] <= r) row_acc += dims[block++];
    if (r > 0 && r == row_acc && dims[block] > 0 && block > 0) {
      os << "  " << std::string(m.cols() * (width + 1) + 2 * (dims.size() - 1), '-') << '\n';
    }
    os << "  ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0 && boundary[c]) os << "| ";
      os << std::setw(static_cast<int>(width)) << m(r, c).to_string() << ' ';
    }
    os << '\n';
  }
}

}  // namespace

std::string format_stokes_text(const StokesPair& s, const Matrix& plus_inverse, const IdentityReport& checks) {
  std::ostringstream os;
  os << "beta-order:";
  for (std::size_t i = 0; i < s.order.size(); ++i) {
    os << (i ? " < " : " ") << s.order[i].to_string() << " (dim " << s.block_dims[i] << ")";
  }
  os << '\n';
  print_blocks(os, "S_plus", s.S_plus, s.block_dims);
  print_blocks(os, "S_minus", s.S_minus, s.block_dims);
  print_blocks(os, "S_plus^-1", plus_inverse, s.block_dims);
  os << "identity S_plus^-1 S_minus = 1 - U V: " << (checks.phi_ok ? "ok" : "FAILED") << '\n';
  os << "identity 1 - V U = T_1...T_n: " << (checks.psi_ok ? "ok" : "FAILED") << '\n';
  if (!checks.detail.empty()) os << checks.detail << '\n';
  return os.str();
}

std::string serialize_exponents(const std::vector<ExponentialComponent>& components) {
  Json list = Json::array();
  for (const auto& c : components) list.push_back(Json{{"c", gauss_pair(c.point)}, {"multiplicity", c.multiplicity}});
  return Json{{"format", "exponents-v1"}, {"components", list}}.dump();
}

std::string serialize_sector_report(const SectorReport& report, bool pretty) {
  Json sectors = Json::array();
  for (const auto& s : report.sectors) sectors.push_back(Json{{"label", s.label}, {"S", matrix_json(s.S)}});
  Json perms = Json::array();
  const auto& mono = report.extraction.monodromy;
  for (std::size_t c = 0; c < mono.permutations.size(); ++c) {
    Json p = Json::array();
    for (std::size_t x : mono.permutations[c]) p.push_back(x + 1);
    const CriticalValue& cv = mono.critical_values[c];
    perms.push_back(Json{{"critical_value", cv.exact ? gauss_pair(*cv.exact)
                                                     : Json::array({cv.value.real(), cv.value.imag()})},
                         {"permutation", p}});
  }
  Json doc{{"format", "sector-v1"},
           {"example", report.example == BuiltinCover::Airy ? "airy" : "elementary"},
           {"sectors", sectors},
           {"permutations", perms},
           {"quiver", Json::parse(serialize_quiver(report.extraction.quiver))}};
  return dump(doc, pretty);
}

}  // namespace pervq
