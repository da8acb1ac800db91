#pragma once

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "blaschke/blaschke.hpp"
#include "blaschke/io.hpp"
#include "blaschke/svg.hpp"

namespace blaschke::cli {

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

/// Parses "v1,v2,...,vk" into exactly `count` reals.
inline std::optional<std::vector<Real>> parse_reals(const std::string& text, std::size_t count) {
  std::vector<Real> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string field = text.substr(start, end - start);
    try {
      std::size_t used = 0;
      const Real v = std::stod(field, &used);
      if (used != field.size()) return std::nullopt;
      values.push_back(v);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    start = end + 1;
  }
  if (values.size() != count) return std::nullopt;
  return values;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Complex parse_complex(const std::string& text, const char* flag) {
  const auto v = parse_reals(text, 2);
  if (!v) throw UsageError(std::string(flag) + " expects RE,IM");
  return {(*v)[0], (*v)[1]};
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) fail(ErrorKind::InvalidArgument, "cannot write " + path);
  file << text;
}

/// Entry point shared by the executable and the tests. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite Blaschke products: invariants, decompositions, Poncelet ellipses"};
  app.require_subcommand(1);

  std::string alpha_text, c_text, lambda_text, moebius_text, product_path, inner_path, outer_path;
  std::string out_path = "-";
  std::size_t degree = 0;
  std::size_t samples = 100;
  std::optional<double> tol;
  double invariant_tol = 1e-8;
  std::string method = "auto";
  std::string inner_form = "origin-orbit";
  std::optional<std::size_t> a1_index;
  std::vector<std::string> lambda_list;
  bool want_ellipse = false, want_orbit = false;
  int canvas = 512;

  auto* solve = app.add_subcommand("solve-c", "unimodular constants closing the orbit of 0");
  solve->add_option("--alpha", alpha_text, "pole parameter RE,IM")->required();
  solve->add_option("--degree", degree, "orbit length n")->required()->check(CLI::Range(2, 64));
  solve->add_option("--tol", tol, "orbit distinctness tolerance")->check(CLI::NonNegativeNumber);

  auto* construct = app.add_subcommand("construct", "invariant product from the orbit of 0");
  construct->add_option("--alpha", alpha_text)->required();
  construct->add_option("--c", c_text)->required();
  construct->add_option("--degree", degree)->required()->check(CLI::Range(1, 64));
  construct->add_option("--tol", tol)->check(CLI::NonNegativeNumber);

  auto* invariants = app.add_subcommand("invariants", "invariant group of a canonical product");
  invariants->add_option("--product", product_path)->required();
  invariants->add_option("--tol", invariant_tol)->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "max |B(M(z)) - B(z)| over the probe set");
  verify->add_option("--product", product_path)->required();
  verify->add_option("--moebius", moebius_text, "CRE,CIM,ALPHARE,ALPHAIM")->required();
  verify->add_option("--samples", samples)->check(CLI::PositiveNumber);

  auto* decomp = app.add_subcommand("decompose", "write B as outer ∘ inner");
  decomp->add_option("--product", product_path)->required();
  decomp->add_option("--method", method)->check(CLI::IsMember({"auto", "invariants", "paired", "tripled"}));
  decomp->add_option("--inner-form", inner_form)->check(CLI::IsMember({"origin-orbit", "fixed-point"}));

  auto* comp = app.add_subcommand("compose", "outer ∘ inner");
  comp->add_option("--inner", inner_path)->required();
  comp->add_option("--outer", outer_path)->required();

  auto* pre = app.add_subcommand("preimages", "solutions of B(z) = lambda on the circle");
  pre->add_option("--product", product_path)->required();
  pre->add_option("--lambda", lambda_text)->required();

  auto* pon = app.add_subcommand("poncelet", "Poncelet ellipse of a degree-4 product");
  pon->add_option("--product", product_path)->required();
  pon->add_option("--a1-index", a1_index);

  auto* plot = app.add_subcommand("plot", "SVG figure");
  plot->add_option("--product", product_path)->required();
  plot->add_option("--lambda", lambda_list, "RE,IM (repeatable)");
  plot->add_flag("--ellipse", want_ellipse);
  plot->add_flag("--orbit", want_orbit);
  plot->add_option("--canvas", canvas)->check(CLI::Range(64, 8192));
  plot->add_option("--out", out_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kUsageError;
  }

  using io::Json;
  auto emit = [&](const Json& j) { out << j.dump(2) << "\n"; };
  try {
    if (*solve) {
      const auto sols = solve_unimodular_c(parse_complex(alpha_text, "--alpha"), degree, tol.value_or(1e-7));
      Json arr = Json::array();
      for (const auto& s : sols) arr.push_back(io::to_json(s));
      emit(arr);
    } else if (*construct) {
      const MoebiusTransform m(parse_complex(c_text, "--c"), parse_complex(alpha_text, "--alpha"));
      emit(io::to_json(construct_invariant_product(m, degree, tol.value_or(kOrbitClosureTol))));
    } else if (*invariants) {
      Json arr = Json::array();
      for (const auto& g : find_invariant_group(io::read_product(product_path, in), invariant_tol))
        arr.push_back(io::to_json(g));
      emit(arr);
    } else if (*verify) {
      const auto v = parse_reals(moebius_text, 4);
      if (!v) throw UsageError("--moebius expects CRE,CIM,ALPHARE,ALPHAIM");
      const MoebiusTransform m({(*v)[0], (*v)[1]}, {(*v)[2], (*v)[3]});
      const auto b = io::read_product(product_path, in);
      emit(Json{{"max_residual", verify_invariance(b, m, std::max(samples, b.degree() + 1))}});
    } else if (*decomp) {
      const DecomposeMethod dm = method == "invariants" ? DecomposeMethod::Invariants
                                 : method == "paired"   ? DecomposeMethod::Paired
                                 : method == "tripled"  ? DecomposeMethod::Tripled
                                                        : DecomposeMethod::Auto;
      const InnerForm form = inner_form == "fixed-point" ? InnerForm::FixedPointPower : InnerForm::OriginOrbit;
      emit(io::to_json(decompose(io::read_product(product_path, in), dm, form)));
    } else if (*comp) {
      const auto inner = io::read_product(inner_path, in);
      const auto outer = io::read_product(outer_path, in);
      emit(io::to_json(blaschke_compose(outer, inner)));
    } else if (*pre) {
      const auto pts = blaschke_preimages(io::read_product(product_path, in), parse_complex(lambda_text, "--lambda"));
      emit(io::points_to_json(pts));
    } else if (*pon) {
      const auto b = io::read_product(product_path, in);
      emit(io::to_json(poncelet_ellipse(b, find_poncelet_foci(b, a1_index))));
    } else if (*plot) {
      svg::FigureSpec spec{io::read_product(product_path, in), want_orbit, want_ellipse, {}, canvas};
      for (const auto& t : lambda_list) spec.chord_lambdas.push_back(parse_complex(t, "--lambda"));
      write_output(out_path, svg::render(spec), out);
    }
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << Json{{"error", std::string(to_string(e.kind()))}, {"detail", e.what()}}.dump() << "\n";
    return kDomainError;
  }
  return kSuccess;
}

}  // namespace blaschke::cli
