#include "psk/charpoly.hpp"

#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "psk/error.hpp"
#include "psk/penalty.hpp"

namespace psk {

namespace {

using Poly = std::vector<double>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Coefficients of (1 - d)^k in ascending powers of d.
Poly one_minus_pow(int k) {
  Poly r(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i) r[i] = ((i % 2) ? -1.0 : 1.0) * binomial(k, i);
  return r;
}

template <class T>
cplx horner(const std::vector<double>& c, T z) {
  cplx s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * cplx(z) + *it;
  return s;
}

template <class T>
cplx horner_derivative(const std::vector<double>& c, T z) {
  cplx s = 0.0;
  for (std::size_t i = c.size() - 1; i >= 1; --i) s = s * cplx(z) + static_cast<double>(i) * c[i];
  return s;
}

// log(1 - d), accurate for small |d|.
cplx log_one_minus(cplx d) {
  if (std::abs(d) < 0.1) {
    cplx s = 0.0;
    cplx pw = d;
    for (int k = 1; k <= 40; ++k) {
      s -= pw / static_cast<double>(k);
      pw *= d;
    }
    return s;
  }
  return std::log(1.0 - d);
}

template <class F, class G>
cplx newton(F f, G fp, cplx z) {
  cplx fz = f(z);
  for (int it = 0; it < 80; ++it) {
    if (fz == 0.0) break;
    const cplx d = fp(z);
    if (d == 0.0) break;
    const cplx step = fz / d;
    const cplx zn = z - step;
    const cplx fn = f(zn);
    if (!(std::abs(fn) < std::abs(fz))) break;
    z = zn;
    fz = fn;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z)) break;
  }
  return z;
}

Root polish(const CharacteristicEquation& eq, cplx z0) {
  const bool inverted = std::abs(z0) > 1.0;
  const cplx s0 = inverted ? 1.0 / z0 : z0;
  Root r;
  if (std::abs(1.0 - s0) < 0.5) {
    const cplx d = newton([&](cplx x) { return eq.eval_offset(x); },
                          [&](cplx x) { return eq.eval_offset_derivative(x); }, 1.0 - s0);
    r = {1.0 - d, d};
  } else {
    const cplx s = newton([&](cplx x) { return eq.eval(x); }, [&](cplx x) { return eq.eval_derivative(x); }, s0);
    r = {s, 1.0 - s};
  }
  if (inverted) {
    // rho' = 1/rho, delta' = 1 - 1/rho = -delta/rho.
    r = {1.0 / r.rho, -r.delta / r.rho};
  }
  return r;
}

std::vector<cplx> companion_roots(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  const double lead = c[n];
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);  // row-major
  for (int j = 0; j < n; ++j) a[j] = -c[n - 1 - j] / lead;
  for (int i = 1; i < n; ++i) a[static_cast<std::size_t>(i) * n + i - 1] = 1.0;
  std::vector<double> wr(n), wi(n);
  const lapack_int info = LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, a.data(), n, wr.data(), wi.data(), nullptr, n,
                                        nullptr, n);
  if (info != 0) throw NumericalError("companion eigenvalue computation failed");
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) out[i] = {wr[i], wi[i]};
  return out;
}

}  // namespace

cplx CharacteristicEquation::eval(cplx rho) const { return horner(poly_coeffs, rho); }
cplx CharacteristicEquation::eval_derivative(cplx rho) const { return horner_derivative(poly_coeffs, rho); }
cplx CharacteristicEquation::eval_offset(cplx delta) const { return horner(offset_coeffs, delta); }
cplx CharacteristicEquation::eval_offset_derivative(cplx delta) const {
  return horner_derivative(offset_coeffs, delta);
}

double CharacteristicEquation::gram_poly(double x) const {
  double s = 0.0;
  for (int j = 2 * p; j >= 0; --j) s = s * x + gram_band[std::abs(p - j)];
  return s;
}

double CharacteristicEquation::gram_poly_derivative(double x) const {
  double s = 0.0;
  for (int j = 2 * p; j >= 1; --j) s = s * x + j * gram_band[std::abs(p - j)];
  return s;
}

CharacteristicEquation build_char_poly(int p, int m, double lambda, std::span<const double> gram_band) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw ArgumentError("characteristic equation needs lambda > 0");
  if (p < 0 || m < 1) throw ArgumentError("need p >= 0 and m >= 1");
  if (static_cast<int>(gram_band.size()) != p + 1) throw ArgumentError("gram band must have p + 1 entries");
  CharacteristicEquation eq;
  eq.p = p;
  eq.m = m;
  eq.q = std::max(p, m);
  eq.lambda = lambda;
  eq.gram_band.assign(gram_band.begin(), gram_band.end());
  const int q = eq.q;

  eq.band.assign(static_cast<std::size_t>(q + 1), 0.0);
  for (int d = 0; d <= q; ++d) {
    if (d <= p) eq.band[d] += gram_band[d];
    if (d <= m) eq.band[d] += lambda * ((d % 2) ? -1.0 : 1.0) * binomial(2 * m, m + d);
  }
  eq.poly_coeffs.resize(static_cast<std::size_t>(2 * q + 1));
  for (int j = 0; j <= 2 * q; ++j) eq.poly_coeffs[j] = eq.band[std::abs(q - j)];

  // lambda (-1)^m delta^(2m) (1-delta)^(q-m) + (1-delta)^(q-p) P(1-delta),
  // assembled without cancellation between the lambda terms.
  Poly pen(static_cast<std::size_t>(2 * m), 0.0);
  pen.push_back(lambda * ((m % 2) ? -1.0 : 1.0));
  pen = poly_mul(pen, one_minus_pow(q - m));
  Poly gram_shift(1, 0.0);
  for (int j = 0; j <= 2 * p; ++j) {
    Poly t = one_minus_pow(j);
    for (auto& v : t) v *= gram_band[std::abs(p - j)];
    if (t.size() > gram_shift.size()) gram_shift.resize(t.size(), 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) gram_shift[i] += t[i];
  }
  gram_shift = poly_mul(gram_shift, one_minus_pow(q - p));
  eq.offset_coeffs.assign(static_cast<std::size_t>(2 * q + 1), 0.0);
  for (std::size_t i = 0; i < pen.size(); ++i) eq.offset_coeffs[i] += pen[i];
  for (std::size_t i = 0; i < gram_shift.size(); ++i) eq.offset_coeffs[i] += gram_shift[i];
  return eq;
}

std::vector<Root> RootSet::selected() const {
  std::vector<Root> s = kernel_roots;
  s.insert(s.end(), small_roots.begin(), small_roots.end());
  return s;
}

RootSet solve_roots(const CharacteristicEquation& eq) {
  const int q = eq.q;
  const int m = eq.m;
  if (static_cast<int>(eq.poly_coeffs.size()) != 2 * q + 1 || eq.poly_coeffs.back() == 0.0)
    throw ArgumentError("characteristic polynomial has degenerate leading coefficient");

  const auto raw = companion_roots(eq.poly_coeffs);
  std::vector<Root> roots;
  roots.reserve(raw.size());
  for (const auto& z : raw) {
    Root r = polish(eq, z);
    const bool clash = std::any_of(roots.begin(), roots.end(), [&](const Root& o) {
      return std::abs(o.rho - r.rho) <= 1e-13 * std::max(1.0, std::abs(r.rho));
    });
    // Polishing that lands on an already found root keeps the raw eigenvalue.
    if (clash) r = {z, 1.0 - z};
    roots.push_back(r);
  }

  RootSet rs;
  rs.m = m;
  rs.p = eq.p;
  rs.lambda = eq.lambda;
  for (const auto& r : roots) rs.all_roots.push_back(r.rho);

  const PsiRoots psi(m);
  const double scale = std::pow(eq.lambda, 1.0 / (2.0 * m));
  std::vector<cplx> b(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) b[i] = -scale * log_one_minus(roots[i].delta);

  std::vector<bool> used(roots.size(), false);
  for (int nu = 0; nu < m; ++nu) {
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    int idx = -1;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(b[i] - psi[nu]);
      if (d < best) {
        second = best;
        best = d;
        idx = static_cast<int>(i);
      } else if (d < second) {
        second = d;
      }
    }
    if (idx < 0) throw ClassificationError("no root available for psi matching");
    if (second - best < 1e-9) throw ClassificationError("two roots are equidistant from the same psi target");
    used[idx] = true;
    rs.kernel_roots.push_back(roots[idx]);
    rs.kernel_psi.push_back(psi[nu]);
    if (std::abs(roots[idx].rho) > 1.0 + 1e-9) rs.outside_unit_disk = true;
  }

  if (eq.p > m) {
    std::vector<int> order;
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (!used[i]) order.push_back(static_cast<int>(i));
    std::sort(order.begin(), order.end(),
              [&](int a, int c) { return std::abs(roots[a].rho) < std::abs(roots[c].rho); });
    for (int i = 0; i < eq.p - m; ++i) rs.small_roots.push_back(roots[order[i]]);
  }
  return rs;
}

std::vector<double> expansion_errors(const RootSet& rs) {
  const double l = std::pow(rs.lambda, -1.0 / (2.0 * rs.m));
  std::vector<double> out;
  for (std::size_t i = 0; i < rs.kernel_roots.size(); ++i) {
    const cplx psi = rs.kernel_psi[i];
    const cplx pred = psi * l - 0.5 * psi * psi * l * l;
    out.push_back(std::abs(rs.kernel_roots[i].delta - pred) / (l * l * l));
  }
  return out;
}

std::vector<cplx> small_root_targets(const CharacteristicEquation& eq) {
  const int k = eq.p - eq.m;
  std::vector<cplx> out;
  if (k <= 0) return out;
  const double mag = std::pow(eq.band[eq.q] / eq.lambda, 1.0 / k);
  // x^k = (-1)^(m+1): angles (pi [m+1 even ? 0 : 1] + 2 pi j) / k.
  const double base = ((eq.m + 1) % 2) ? std::numbers::pi : 0.0;
  for (int j = 0; j < k; ++j) out.push_back(std::polar(mag, (base + 2.0 * std::numbers::pi * j) / k));
  return out;
}

InteriorCoefficients coeffs_a(const RootSet& rs, const CharacteristicEquation& eq) {
  const auto sel = rs.selected();
  const int q = static_cast<int>(sel.size());
  if (q != eq.q) throw ArgumentError("root set does not match the equation");
  std::vector<cplx> t(q), rm(q);
  for (int i = 0; i < q; ++i) {
    const cplx d = sel[i].delta;
    const cplx r = sel[i].rho;
    t[i] = d * d / r;
    rm[i] = -d * (2.0 - d) / r;
  }
  InteriorCoefficients co;
  for (int nu = 0; nu < q; ++nu) {
    cplx inv = eq.band[q] * rm[nu];
    for (int j = 0; j < q; ++j) {
      if (j == nu) continue;
      const cplx diff = t[nu] - t[j];
      if (std::abs(diff) <= 1e-9 * std::max(std::abs(t[nu]), std::abs(t[j])))
        throw DegeneracyError("coincident rho + 1/rho values");
      inv *= diff;
    }
    co.a.push_back(1.0 / inv);
  }
  return co;
}

InteriorCoefficients coeffs_a_linear(const RootSet& rs, const CharacteristicEquation& eq) {
  const auto sel = rs.selected();
  const int q = static_cast<int>(sel.size());
  if (q != eq.q) throw ArgumentError("root set does not match the equation");
  Eigen::MatrixXcd a(q, q);
  for (int nu = 0; nu < q; ++nu) {
    const cplx r = sel[nu].rho;
    for (int s = 0; s < q; ++s) {
      cplx g = 0.0;
      for (int e = 1; e <= q - s; ++e) g += eq.band[s + e] * (std::pow(r, e) - std::pow(r, -e));
      a(s, nu) = g;
    }
  }
  Eigen::VectorXd colscale(q);
  for (int nu = 0; nu < q; ++nu) {
    colscale(nu) = a.col(nu).cwiseAbs().maxCoeff();
    a.col(nu) /= colscale(nu);
  }
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(q);
  rhs(0) = 1.0;
  const Eigen::VectorXcd x = a.fullPivLu().solve(rhs);
  InteriorCoefficients co;
  for (int nu = 0; nu < q; ++nu) co.a.push_back(x(nu) / colscale(nu));
  return co;
}

std::vector<cplx> constraint_products(const RootSet& rs, const InteriorCoefficients& co, const BandedSymmetric& lam,
                                      int k) {
  const auto sel = rs.selected();
  const int c = lam.dim();
  const int q = lam.half_bandwidth();
  if (k < 0 || k >= c) throw DomainError("column index out of range");
  std::vector<cplx> s(static_cast<std::size_t>(c), 0.0);
  for (std::size_t nu = 0; nu < sel.size(); ++nu) {
    const int reach = std::max(k, c - 1 - k);
    std::vector<cplx> pw(static_cast<std::size_t>(reach + 1));
    pw[0] = 1.0;
    for (int e = 1; e <= reach; ++e) pw[e] = pw[e - 1] * sel[nu].rho;
    for (int r = 0; r < c; ++r) s[r] += co.a[nu] * pw[std::abs(r - k)];
  }
  std::vector<cplx> out(static_cast<std::size_t>(c), 0.0);
  for (int j = 0; j < c; ++j) {
    cplx acc = 0.0;
    for (int r = std::max(0, j - q); r <= std::min(c - 1, j + q); ++r) acc += s[r] * lam(r, j);
    out[j] = acc;
  }
  return out;
}

double constraint_residual(const RootSet& rs, const InteriorCoefficients& co, const BandedSymmetric& lam, int k) {
  const int c = lam.dim();
  const int q = static_cast<int>(co.a.size());
  if (k < 2 * q - 1 || k > c - 2 * q - 1) throw DomainError("column too close to the boundary for the constraint check");
  const auto prod = constraint_products(rs, co, lam, k);
  double worst = 0.0;
  for (int j = k - (q - 1); j <= k + (q - 1); ++j) {
    const double target = (j == k) ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(prod[j] - target));
  }
  return worst;
}

}  // namespace psk
