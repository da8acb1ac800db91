// Walks through the main library calls on small products.
#include <complex>
#include <iostream>

#include "blaschke/blaschke.hpp"

int main() {
  using namespace blaschke;

  // Rotation constants that close the orbit of 0 after five steps.
  for (const auto& s : solve_unimodular_c(0.5, 5)) {
    const MoebiusTransform m(s.c, 0.5);
    const BlaschkeProduct b = construct_invariant_product(m, 5);
    std::cout << "c = " << s.c << "  invariance residual = " << verify_invariance(b, m, 100) << "\n";
  }

  // (z (z - 2/3)/(1 - 2z/3))^2 splits back into its two factors.
  const BlaschkeProduct squared({0.0, 0.0, 2.0 / 3.0, 2.0 / 3.0});
  const Decomposition d = decompose(squared);
  std::cout << "decomposition via " << to_string(d.source) << ": inner degree " << d.inner.degree()
            << ", outer degree " << d.outer.degree() << ", residual " << d.roundtrip_residual << "\n";

  // Ellipse inscribed in the chords of a degree-4 product.
  const BlaschkeProduct quartic({0.0, 2.0 / 3.0, {0.5, -0.5}, {0.5, 0.5}});
  const PonceletEllipse e = poncelet_ellipse(quartic, find_poncelet_foci(quartic));
  std::cout << "foci " << e.focus1 << " " << e.focus2 << ", focal sum " << e.focal_sum << "\n";
  return 0;
}
