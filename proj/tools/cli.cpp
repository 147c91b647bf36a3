#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "pervq/covers.hpp"
#include "pervq/documents.hpp"
#include "pervq/error.hpp"
#include "pervq/quiver.hpp"
#include "pervq/random.hpp"
#include "pervq/stokes.hpp"

namespace pervq::cli {

namespace {

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::ParseError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

Frame parse_frame_flag(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "--frame expects alpha,beta");
  return {parse_gauss(text.substr(0, comma)), parse_gauss(text.substr(comma + 1))};
}

SheetNumbering parse_numbering(const std::string& text) {
  if (text == "basepoint") return SheetNumbering::Basepoint;
  if (text == "fixed") return SheetNumbering::FixedSheets;
  throw Error(ErrorKind::ParseError, "--numbering must be basepoint or fixed");
}

std::string validate_summary(const std::string& text) {
  const std::string format = document_format(text);
  std::ostringstream os;
  if (format == "quiver-v1") {
    const Quiver q = parse_quiver_document(text);
    os << "{\"format\":\"validate-v1\",\"document\":\"quiver-v1\",\"valid\":true,\"psi_dim\":" << q.psi_dim()
       << ",\"order\":[";
    for (std::size_t i = 0; i < q.size(); ++i) os << (i ? "," : "") << '"' << q.node(i).point.to_string() << '"';
    os << "]}";
  } else if (format == "localsys-v1") {
    const LocalSystem ls = parse_local_system_document(text);
    os << "{\"format\":\"validate-v1\",\"document\":\"localsys-v1\",\"valid\":true,\"rank\":" << ls.rank() << "}";
  } else if (format == "cover-v1") {
    const CoverDocument doc = parse_cover_document(text);
    os << "{\"format\":\"validate-v1\",\"document\":\"cover-v1\",\"valid\":true,\"generic_degree\":"
       << doc.cover.generic_degree() << "}";
  } else {
    throw Error(ErrorKind::ParseError, "unknown format \"" + format + "\"");
  }
  return os.str();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stokes multipliers, Fourier quivers and cover monodromy for perverse-sheaf quivers", "pervq"};
  app.require_subcommand(1);
  bool pretty = false;
  std::string file;

  auto* validate = app.add_subcommand("validate", "Validate a quiver-v1, localsys-v1 or cover-v1 document");
  validate->add_option("FILE", file)->required();

  auto* stokes = app.add_subcommand("stokes", "Stokes multipliers of a quiver-v1 document");
  stokes->add_option("FILE", file)->required();
  stokes->add_flag("--pretty", pretty, "Aligned block matrices instead of JSON");

  auto* fourier = app.add_subcommand("fourier", "Quiver of the Fourier transform at the origin");
  fourier->add_option("FILE", file)->required();
  auto* smash = app.add_subcommand("smash", "One-point smash quiver");
  smash->add_option("FILE", file)->required();
  auto* beilinson = app.add_subcommand("beilinson", "Beilinson quiver of a localsys-v1 document");
  beilinson->add_option("FILE", file)->required();
  auto* reconstruct = app.add_subcommand("reconstruct-check", "Check that G(F) reproduces the quiver");
  reconstruct->add_option("FILE", file)->required();
  auto* exponents = app.add_subcommand("exponents", "Exponential components at infinity");
  exponents->add_option("FILE", file)->required();

  std::string frame_text = "i,1";
  std::string numbering = "basepoint";
  double radius_scale = 1.0;
  double step_scale = 1.0;
  auto* from_cover = app.add_subcommand("from-cover", "Quiver of a cover-v1 branched cover");
  from_cover->add_option("FILE", file)->required();
  from_cover->add_option("--frame", frame_text, "alpha,beta as Gaussian rationals")->capture_default_str();
  from_cover->add_option("--numbering", numbering, "basepoint or fixed")->capture_default_str();
  from_cover->add_option("--radius-scale", radius_scale)->capture_default_str();
  from_cover->add_option("--step-scale", step_scale)->capture_default_str();

  std::string example;
  std::string sector_numbering = "fixed";
  auto* sector = app.add_subcommand("sector", "Sector Stokes multipliers of a built-in example");
  sector->add_option("--example", example)->required()->check(CLI::IsMember({"airy", "elementary"}));
  sector->add_option("--numbering", sector_numbering, "fixed or basepoint")->capture_default_str();

  std::uint64_t seed = 0;
  std::size_t nodes = 2;
  std::size_t dims = 2;
  auto* random = app.add_subcommand("random", "A valid pseudo-random quiver-v1 document");
  random->add_option("--seed", seed)->capture_default_str();
  random->add_option("--n", nodes, "number of nodes")->capture_default_str();
  random->add_option("--dims", dims, "maximal dimension of Psi and each Phi")->capture_default_str();

  if (!args.empty() && args.front().rfind('-', 0) != 0 && app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "error: unknown subcommand \"" << args.front() << "\"\n" << app.help();
    return kUsageError;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (*validate) {
      out << validate_summary(read_input(file, in)) << '\n';
    } else if (*stokes) {
      const Quiver q = parse_quiver_document(read_input(file, in));
      const StokesPair s = stokes_matrices(q);
      const Matrix inv = stokes_plus_inverse(q);
      const IdentityReport checks = verify_theorem_identity(q);
      out << (pretty ? format_stokes_text(s, inv, checks) : serialize_stokes(s, inv, checks) + "\n");
      if (!checks.ok()) {
        err << "identity check failed: " << checks.detail << '\n';
        return kDomainError;
      }
    } else if (*fourier) {
      out << serialize_quiver(fourier_quiver(parse_quiver_document(read_input(file, in)))) << '\n';
    } else if (*smash) {
      out << serialize_quiver(smash_quiver(parse_quiver_document(read_input(file, in)))) << '\n';
    } else if (*beilinson) {
      out << serialize_quiver(beilinson_quiver(parse_local_system_document(read_input(file, in)))) << '\n';
    } else if (*reconstruct) {
      const Quiver q = parse_quiver_document(read_input(file, in));
      const Reconstruction r = reconstruct_G(q);
      bool identities = r.psi_iso == Matrix::identity(q.psi_dim());
      for (std::size_t i = 0; i < q.size(); ++i) {
        identities = identities && r.phi_isos[i] == Matrix::identity(q.node(i).phi_dim());
      }
      const bool pass = r.g == q && identities;
      out << "{\"format\":\"reconstruct-check-v1\",\"pass\":" << (pass ? "true" : "false") << "}\n";
      if (!pass) return kDomainError;
    } else if (*exponents) {
      out << serialize_exponents(exponential_components(parse_quiver_document(read_input(file, in)))) << '\n';
    } else if (*from_cover) {
      const CoverDocument doc = parse_cover_document(read_input(file, in));
      CoverOptions options;
      options.numbering = parse_numbering(numbering);
      options.basepoint = doc.basepoint;
      options.exact_values = doc.critical_values;
      options.radius_scale = radius_scale;
      options.tracker.step_scale = step_scale;
      out << serialize_quiver(quiver_from_cover(doc.cover, parse_frame_flag(frame_text), options)) << '\n';
    } else if (*sector) {
      CoverOptions options;
      options.numbering = parse_numbering(sector_numbering);
      const auto which = example == "airy" ? BuiltinCover::Airy : BuiltinCover::Elementary;
      out << serialize_sector_report(ramified_sector_multipliers(which, options)) << '\n';
    } else if (*random) {
      Sampler rng(seed);
      out << serialize_quiver(random_quiver(rng, nodes, dims)) << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::ParseError ? kUsageError : kDomainError;
  }
  return kOk;
}

}  // namespace pervq::cli
