#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "blaschke/invariants.hpp"
#include "blaschke/numerics.hpp"
#include "blaschke/poncelet.hpp"
#include "blaschke/product.hpp"

namespace blaschke::svg {

struct FigureSpec {
  BlaschkeProduct product;
  bool orbit = false;
  bool ellipse = false;
  std::vector<Complex> chord_lambdas;
  int canvas = 512;
};

/// Maps the closed unit disk onto a centred square with a 5% margin (y axis up).
class Viewport {
 public:
  explicit Viewport(int canvas) : size_(canvas), scale_(0.45 * canvas) {}

  Real x(Complex z) const noexcept { return size_ / 2.0 + scale_ * z.real(); }
  Real y(Complex z) const noexcept { return size_ / 2.0 - scale_ * z.imag(); }
  Real length(Real r) const noexcept { return scale_ * r; }
  int size() const noexcept { return size_; }

 private:
  int size_;
  Real scale_;
};

namespace detail {

inline std::string num(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string point_list(const Viewport& vp, const std::vector<Complex>& pts) {
  std::string s;
  for (const Complex& z : pts) {
    if (!s.empty()) s += ' ';
    s += num(vp.x(z)) + "," + num(vp.y(z));
  }
  return s;
}

inline std::string line(const Viewport& vp, Complex a, Complex b, const char* cls) {
  return "  <line class=\"" + std::string(cls) + "\" x1=\"" + num(vp.x(a)) + "\" y1=\"" + num(vp.y(a)) +
         "\" x2=\"" + num(vp.x(b)) + "\" y2=\"" + num(vp.y(b)) + "\"/>\n";
}

}  // namespace detail

/// Self-contained SVG 1.1 figure: unit circle, zeros, and the requested overlays.
inline std::string render(const FigureSpec& spec) {
  using detail::num;
  const Viewport vp(spec.canvas);
  const BlaschkeProduct& b = spec.product;
  const Complex origin{};
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(vp.size()) +
         "\" height=\"" + std::to_string(vp.size()) + "\" viewBox=\"0 0 " + std::to_string(vp.size()) + " " +
         std::to_string(vp.size()) + "\">\n";
  out += "  <style>.circle{fill:none;stroke:#000;stroke-width:1.5}.zero{fill:#c00}"
         ".orbit{fill:none;stroke:#06c;stroke-dasharray:4 3}.ellipse{fill:none;stroke:#080;stroke-width:1.5}"
         ".polygon{fill:none;stroke:#888}.chord{stroke:#a60}.focus{fill:#080}</style>\n";
  out += "  <circle class=\"circle\" cx=\"" + num(vp.x(origin)) + "\" cy=\"" + num(vp.y(origin)) + "\" r=\"" +
         num(vp.length(1)) + "\"/>\n";

  if (spec.ellipse) {
    const auto foci = find_poncelet_foci(b);
    const PonceletEllipse e = poncelet_ellipse(b, foci);
    const Real degrees = e.rotation() * 180 / std::numbers::pi;
    const Complex c = e.center();
    // SVG rotates clockwise with y down, so the math angle flips sign.
    out += "  <ellipse class=\"ellipse\" cx=\"" + num(vp.x(c)) + "\" cy=\"" + num(vp.y(c)) + "\" rx=\"" +
           num(vp.length(e.semi_major())) + "\" ry=\"" + num(vp.length(e.semi_minor())) + "\" transform=\"rotate(" +
           num(-degrees) + " " + num(vp.x(c)) + " " + num(vp.y(c)) + ")\"/>\n";
    for (const Complex& f : {e.focus1, e.focus2})
      out += "  <circle class=\"focus\" cx=\"" + num(vp.x(f)) + "\" cy=\"" + num(vp.y(f)) + "\" r=\"2\"/>\n";
  }

  for (const Complex& lambda : spec.chord_lambdas) {
    auto pts = blaschke_preimages(b, lambda);
    auto closed = pts;
    closed.push_back(pts.front());
    out += "  <polyline class=\"polygon\" points=\"" + detail::point_list(vp, closed) + "\"/>\n";
    if (b.degree() == 4) {
      try {
        const auto foci = find_poncelet_foci(b);
        std::size_t a1 = 0;
        const std::size_t origin_index = origin_zero_index(b);
        while (a1 == origin_index || a1 == foci.first || a1 == foci.second) ++a1;
        const auto report = chord_concurrency(b, b.zeros()[a1], lambda);
        for (const auto& [i, j] : report.chords) out += detail::line(vp, pts[i], pts[j], "chord");
      } catch (const Error&) {
        // Products without the concurrency structure only get the polygon.
      }
    }
  }

  if (spec.orbit && is_canonical(b) && b.degree() >= 2) {
    const auto groups = find_invariant_group(b);
    if (!groups.empty()) {
      auto orbit = moebius_iterate_zero(groups.front().generator, groups.front().order).points;
      orbit.push_back(orbit.front());
      out += "  <polyline class=\"orbit\" points=\"" + detail::point_list(vp, orbit) + "\"/>\n";
    }
  }

  for (const Complex& a : b.zeros())
    out += "  <circle class=\"zero\" cx=\"" + num(vp.x(a)) + "\" cy=\"" + num(vp.y(a)) + "\" r=\"3\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace blaschke::svg
