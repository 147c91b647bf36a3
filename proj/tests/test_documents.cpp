#include "doctest.h"

#include <string>

#include "pervq/documents.hpp"
#include "pervq/error.hpp"
#include "pervq/random.hpp"
#include "support.hpp"

using namespace pervq;

namespace {

Error error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error raised");
  return Error(ErrorKind::InternalInconsistency, "");
}

}  // namespace

TEST_CASE("Airy document") {
  const Quiver q = parse_quiver_document(test::read_data("airy.json"));
  CHECK(q == test::airy_quiver());
  CHECK(document_format(test::read_data("airy.json")) == "quiver-v1");
  CHECK(parse_quiver_document(test::read_data("elementary.json")) == test::elementary_quiver());
}

TEST_CASE("serialized form") {
  const std::string text = serialize_quiver(test::scalar_two_node());
  CHECK(text ==
        R"({"format":"quiver-v1","frame":{"alpha":["0","1"],"beta":["1","0"]},"psi_dim":1,"nodes":[)"
        R"({"c":["0","0"],"phi_dim":1,"u":[["1"]],"v":[["2"]]},{"c":["1","0"],"phi_dim":1,"u":[["1"]],"v":[["3"]]}]})");
}

TEST_CASE("entry encodings") {
  const std::string text = R"({"format":"quiver-v1","frame":{"alpha":[0,1],"beta":["1","0"]},"psi_dim":1,
    "nodes":[{"c":[0,0],"u":[[2]],"v":[[["1/4","-1/2"]]]}]})";
  const Quiver q = parse_quiver_document(text);
  CHECK(q.node(0).u == Matrix{{2}});
  CHECK(q.node(0).v == Matrix{{GaussRational(make_rational(1, 4), make_rational(-1, 2))}});
  CHECK(parse_quiver_document(serialize_quiver(q)) == q);

  const std::string empty_phi = R"({"format":"quiver-v1","frame":{"alpha":[0,1],"beta":[1,0]},"psi_dim":2,
    "nodes":[{"c":[0,0],"phi_dim":0,"u":[],"v":[[],[]]}]})";
  const Quiver e = parse_quiver_document(empty_phi);
  CHECK(e.node(0).phi_dim() == 0);
  CHECK(parse_quiver_document(serialize_quiver(e)) == e);
}

TEST_CASE("document errors") {
  const Error shape = error_of([] { parse_quiver_document(test::read_data("bad_shape.json")); });
  CHECK(shape.kind() == ErrorKind::DimensionMismatch);
  CHECK(shape.detail().find("node 0") != std::string::npos);

  const Error zero = error_of([] { parse_quiver_document(test::read_data("zero_denominator.json")); });
  CHECK(zero.kind() == ErrorKind::ParseError);
  CHECK(zero.detail().find("1/0") != std::string::npos);

  const Error syntax = error_of([] { parse_quiver_document(test::read_data("truncated.json")); });
  CHECK(syntax.kind() == ErrorKind::ParseError);
  CHECK(syntax.detail().find("line 2") != std::string::npos);

  const Error tie = error_of([] { parse_quiver_document(test::read_data("tied.json")); });
  CHECK(tie.kind() == ErrorKind::TieBreak);

  CHECK(error_of([] { parse_quiver_document(R"({"format":"localsys-v1"})"); }).kind() == ErrorKind::ParseError);
  CHECK(error_of([] { parse_quiver_document(R"({"format":"quiver-v1","psi_dim":1,"nodes":[]})"); }).kind() ==
        ErrorKind::ParseError);
  CHECK(error_of([] { parse_quiver_document("[]"); }).kind() == ErrorKind::ParseError);
}

TEST_CASE("local system documents") {
  const LocalSystem ls = parse_local_system_document(test::read_data("airy_localsys.json"));
  CHECK(ls.rank() == 3);
  CHECK(ls.points()[0] == GaussRational(-2));
  CHECK(ls.monodromies()[1] == Matrix{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  CHECK(parse_local_system_document(serialize_local_system(ls)) == ls);
  CHECK(error_of([] {
          parse_local_system_document(
              R"({"format":"localsys-v1","frame":{"alpha":[0,1],"beta":[1,0]},"rank":2,"points":[[0,0]],"monodromies":[[["1"]]]})");
        }).kind() == ErrorKind::DimensionMismatch);
}

TEST_CASE("cover documents") {
  const CoverDocument airy = parse_cover_document(test::read_data("airy_cover.json"));
  CHECK(airy.cover.kind() == CoverKind::Polynomial);
  CHECK(airy.cover.generic_degree() == 3);
  const CoverDocument elem = parse_cover_document(test::read_data("elementary_cover.json"));
  CHECK(elem.cover.kind() == CoverKind::Laurent);
  CHECK(elem.cover.min_power() == -1);

  CoverDocument doc = airy;
  doc.basepoint = Complex(3.0, 0.5);
  doc.critical_values = std::vector<GaussRational>{-2, 2};
  const std::string text = serialize_cover_document(doc);
  const CoverDocument back = parse_cover_document(text);
  CHECK(back.basepoint == doc.basepoint);
  CHECK(back.critical_values == doc.critical_values);
  CHECK(serialize_cover_document(back) == text);
}

TEST_CASE("output documents") {
  const Quiver q = test::airy_quiver();
  const StokesPair s = stokes_matrices(q);
  const std::string stokes = serialize_stokes(s, stokes_plus_inverse(q), verify_theorem_identity(q));
  CHECK(stokes.find(R"("S_plus":[["1","1"],["0","1"]])") != std::string::npos);
  CHECK(stokes.find(R"("S_minus":[["-1","0"],["-1","-1"]])") != std::string::npos);
  CHECK(stokes.find(R"("identity_checks":{"phi":true,"psi":true})") != std::string::npos);

  const std::string pretty = format_stokes_text(s, stokes_plus_inverse(q), verify_theorem_identity(q));
  CHECK(pretty.find("beta-order: -2 (dim 1) < 2 (dim 1)") != std::string::npos);

  CHECK(serialize_exponents(exponential_components(q)).find(R"("multiplicity":1)") != std::string::npos);
}

TEST_CASE("property: round trips are bit-identical") {
  Sampler rng(314);
  for (int trial = 0; trial < 300; ++trial) {
    const Quiver q = random_quiver(rng, rng.uniform(0, 5), 4);
    const std::string text = serialize_quiver(q);
    const Quiver back = parse_quiver_document(text);
    CHECK(back == q);
    CHECK(serialize_quiver(back) == text);
    CHECK(parse_quiver_document(serialize_quiver(q, true)) == q);

    const LocalSystem ls = random_local_system(rng, rng.uniform(1, 4), 4);
    const std::string lt = serialize_local_system(ls);
    CHECK(serialize_local_system(parse_local_system_document(lt)) == lt);
  }
}
