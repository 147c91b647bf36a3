#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pervq/covers.hpp"
#include "pervq/quiver.hpp"
#include "pervq/stokes.hpp"

namespace pervq {

// Value of the top-level "format" field. Throws ParseError.
std::string document_format(std::string_view text);

// quiver-v1:
//   {"format":"quiver-v1","frame":{"alpha":[re,im],"beta":[re,im]},"psi_dim":m,
//    "nodes":[{"c":[re,im],"phi_dim":d,"u":[[...]],"v":[[...]]}]}
// Matrices are lists of rows. Entries are rational strings "p/q", integers or
// [re,im] pairs; "phi_dim" is optional when u has at least one row.
Quiver parse_quiver_document(std::string_view text);
std::string serialize_quiver(const Quiver& q, bool pretty = false);

// localsys-v1: {"format":"localsys-v1","frame":...,"rank":N,"points":[...],"monodromies":[...]}
LocalSystem parse_local_system_document(std::string_view text);
std::string serialize_local_system(const LocalSystem& ls, bool pretty = false);

// cover-v1: {"format":"cover-v1","kind":"polynomial","coefficients":["0","-3","0","1"]}
// or "kind":"laurent","coefficients":[[1,"1"],[-1,"1"]]. Optional
// "basepoint":[x,y] (floating) and "critical_values":[[re,im],...] (exact).
struct CoverDocument {
  CoverSpec cover = CoverSpec::polynomial({0, 0, 1});
  std::optional<Complex> basepoint;
  std::optional<std::vector<GaussRational>> critical_values;
};
CoverDocument parse_cover_document(std::string_view text);
std::string serialize_cover_document(const CoverDocument& doc, bool pretty = false);

// stokes-v1 output document.
std::string serialize_stokes(const StokesPair& s, const Matrix& plus_inverse, const IdentityReport& checks,
                             bool pretty = false);
// Aligned block matrices under a header listing the beta-order.
std::string format_stokes_text(const StokesPair& s, const Matrix& plus_inverse, const IdentityReport& checks);

std::string serialize_exponents(const std::vector<ExponentialComponent>& components);
std::string serialize_sector_report(const SectorReport& report, bool pretty = false);

}  // namespace pervq
