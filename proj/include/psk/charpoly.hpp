#pragma once

#include <complex>
#include <span>
#include <vector>

#include "psk/banded.hpp"
#include "psk/kernel.hpp"

namespace psk {

// Characteristic polynomial of the interior band omega_0..omega_q:
//   sum_{d=-q}^{q} omega_|d| rho^(d+q) = 0,
// kept both in rho and in the offset delta = 1 - rho.
struct CharacteristicEquation {
  int p = 0;
  int m = 0;
  int q = 0;
  double lambda = 0.0;
  std::vector<double> gram_band;      // u_0..u_p
  std::vector<double> band;           // omega_0..omega_q
  std::vector<double> poly_coeffs;    // ascending powers of rho, 2q+1 entries
  std::vector<double> offset_coeffs;  // ascending powers of delta, 2q+1 entries

  cplx eval(cplx rho) const;
  cplx eval_derivative(cplx rho) const;
  cplx eval_offset(cplx delta) const;
  cplx eval_offset_derivative(cplx delta) const;
  // Gram polynomial P(x) = sum_{j=0}^{2p} u_|p-j| x^j.
  double gram_poly(double x) const;
  double gram_poly_derivative(double x) const;
};

CharacteristicEquation build_char_poly(int p, int m, double lambda, std::span<const double> gram_band);

struct Root {
  cplx rho;
  cplx delta;  // 1 - rho, carried separately for accuracy near rho = 1
};

struct RootSet {
  int m = 0;
  int p = 0;
  double lambda = 0.0;
  std::vector<Root> kernel_roots;  // m roots, ordered like psi_roots(m)
  std::vector<cplx> kernel_psi;    // matched psi for each kernel root
  std::vector<Root> small_roots;   // p - m roots of smallest modulus (p > m only)
  std::vector<cplx> all_roots;     // all 2q roots
  bool outside_unit_disk = false;  // a kernel root has |rho| > 1 + 1e-9

  // The q selected roots: kernel roots then small roots.
  std::vector<Root> selected() const;
};

RootSet solve_roots(const CharacteristicEquation& eq);

// |delta_nu - (psi lambda^{-1/2m} - psi^2 lambda^{-1/m} / 2)| / lambda^{-3/2m}.
std::vector<double> expansion_errors(const RootSet& rs);

// Leading-order targets for the small roots: (omega_q/lambda)^{1/(p-m)} times
// the (p-m)-th roots of (-1)^(m+1).
std::vector<cplx> small_root_targets(const CharacteristicEquation& eq);

struct InteriorCoefficients {
  std::vector<cplx> a;  // a_1..a_q aligned with RootSet::selected()
};

// Closed-form product formula.
InteriorCoefficients coeffs_a(const RootSet& rs, const CharacteristicEquation& eq);
// Direct solve of the constraint system sum_nu a_nu g_s(rho_nu) = [s == 0].
InteriorCoefficients coeffs_a_linear(const RootSet& rs, const CharacteristicEquation& eq);

// S_k^T Lambda_j for every column j; k is a 0-based column index.
std::vector<cplx> constraint_products(const RootSet& rs, const InteriorCoefficients& co, const BandedSymmetric& lam, int k);

// max_{|k-j| <= q-1} |S_k^T Lambda_j - [j == k]|; requires 2q-1 <= k <= c-2q-1 (0-based).
double constraint_residual(const RootSet& rs, const InteriorCoefficients& co, const BandedSymmetric& lam, int k);

}  // namespace psk
