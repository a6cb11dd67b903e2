#include "dporo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dporo/errors.hpp"

namespace dporo::linalg {

CMat::CMat(int n) : n_(n) {
  if (n < 1 || n > kMaxDim) throw Error("matrix dimension out of range");
}

CMat CMat::identity(int n) {
  CMat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat& CMat::operator+=(const CMat& o) {
  for (int i = 0; i < n_ * n_; ++i) a_[static_cast<size_t>(i)] += o.a_[static_cast<size_t>(i)];
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  for (int i = 0; i < n_ * n_; ++i) a_[static_cast<size_t>(i)] -= o.a_[static_cast<size_t>(i)];
  return *this;
}

CMat& CMat::operator*=(Complex s) {
  for (int i = 0; i < n_ * n_; ++i) a_[static_cast<size_t>(i)] *= s;
  return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
  const int n = a.dim();
  CMat r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

std::vector<Complex> CMat::apply(std::span<const Complex> x) const {
  std::vector<Complex> y(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = s;
  }
  return y;
}

Complex CMat::trace() const {
  Complex s = 0.0;
  for (int i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < n_ * n_; ++i) m = std::max(m, std::abs(a_[static_cast<size_t>(i)]));
  return m;
}

double CMat::inf_norm() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    m = std::max(m, row);
  }
  return m;
}

Complex Poly::eval(Complex x) const {
  Complex v = 0.0;
  for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

Complex Poly::deriv(Complex x) const {
  Complex v = 0.0;
  for (size_t i = c.size(); i-- > 1;) v = v * x + c[i] * static_cast<double>(i);
  return v;
}

namespace {

// In-place LU with partial pivoting on a working copy; perm records row
// swaps, sign flips per swap. Shared by solve_linear and det.
struct Lu {
  CMat lu;
  std::array<int, kMaxDim> perm{};
  int sign = 1;
};

// Floor mode replaces a collapsed pivot by a tiny value instead of throwing.
// Inverse iteration wants exactly that: the solve blows up along the null
// direction and the residual check afterwards judges the result.
enum class PivotPolicy { Throw, Floor };

Lu factor(const CMat& m, PivotPolicy policy = PivotPolicy::Throw) {
  const int n = m.dim();
  Lu f{m, {}, 1};
  for (int i = 0; i < n; ++i) f.perm[static_cast<size_t>(i)] = i;
  const double tol = 1e-14 * std::max(f.lu.max_abs(), 1e-300);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(f.lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::abs(f.lu(i, k));
      if (cand > best) { best = cand; piv = i; }
    }
    if (best <= tol && policy == PivotPolicy::Throw)
      throw SingularError("singular matrix: pivot magnitude below threshold");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[static_cast<size_t>(k)], f.perm[static_cast<size_t>(piv)]);
      f.sign = -f.sign;
    }
    if (best <= tol) {
      Complex& pv = f.lu(k, k);
      pv = pv == 0.0 ? Complex(tol) : pv * (tol / std::abs(pv));
    }
    for (int i = k + 1; i < n; ++i) {
      const Complex l = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = l;
      for (int j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
    }
  }
  return f;
}

std::vector<Complex> lu_solve(const Lu& f, std::span<const Complex> rhs) {
  const int n = f.lu.dim();
  std::vector<Complex> x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = rhs[static_cast<size_t>(f.perm[static_cast<size_t>(i)])];
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) x[static_cast<size_t>(i)] -= f.lu(i, j) * x[static_cast<size_t>(j)];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[static_cast<size_t>(i)] -= f.lu(i, j) * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(i)] /= f.lu(i, i);
  }
  return x;
}

} // namespace

std::vector<Complex> solve_linear(const CMat& m, std::span<const Complex> rhs) {
  if (static_cast<int>(rhs.size()) != m.dim()) throw Error("rhs size does not match matrix dimension");
  return lu_solve(factor(m), rhs);
}

Complex det(const CMat& m) {
  Lu f;
  try {
    f = factor(m);
  } catch (const SingularError&) {
    return 0.0;
  }
  Complex p = static_cast<double>(f.sign);
  for (int i = 0; i < m.dim(); ++i) p *= f.lu(i, i);
  return p;
}

Poly char_poly(const CMat& m) {
  const int n = m.dim();
  Poly p;
  p.c.assign(static_cast<size_t>(n + 1), Complex(0.0));
  p.c[static_cast<size_t>(n)] = 1.0;
  CMat b = CMat::identity(n);
  for (int k = 1; k <= n; ++k) {
    const CMat a = m * b;
    const Complex ck = -a.trace() / static_cast<double>(k);
    p.c[static_cast<size_t>(n - k)] = ck;
    b = a;
    for (int i = 0; i < n; ++i) b(i, i) += ck;
  }
  return p;
}

namespace {

double coeff_scale(const Poly& p) {
  double m = 0.0;
  for (const Complex& c : p.c) m = std::max(m, std::abs(c));
  return m;
}

bool residual_ok(const Poly& p, Complex r, double scale) {
  const double grow = std::pow(std::max(1.0, std::abs(r)), p.degree());
  return std::abs(p.eval(r)) <= 1e-10 * scale * grow;
}

} // namespace

std::vector<Complex> poly_roots(const Poly& p) {
  const int d = p.degree();
  if (d < 1 || p.c.back() == 0.0) throw Error("poly_roots requires degree >= 1 with nonzero leading coefficient");
  const double scale = coeff_scale(p);

  // Monic copy for the iteration; residuals are judged against the original.
  Poly q = p;
  for (Complex& c : q.c) c /= p.c.back();

  std::vector<Complex> z(static_cast<size_t>(d));
  if (d == 1) {
    z[0] = -q.c[0];
    if (!residual_ok(p, z[0], scale))
      throw NoConvergenceError("linear root failed residual check", z, std::abs(p.eval(z[0])));
    return z;
  }

  // Cauchy bound gives the enclosing radius; the fractional angle offset
  // breaks any symmetry the root set may have.
  double bound = 0.0;
  for (int i = 0; i < d; ++i) bound = std::max(bound, std::abs(q.c[static_cast<size_t>(i)]));
  const double radius = 0.5 * (1.0 + bound);
  for (int k = 0; k < d; ++k) {
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) /
                             static_cast<double>(d) + 0.42;
    z[static_cast<size_t>(k)] = radius * Complex(std::cos(angle), std::sin(angle));
  }

  constexpr int kMaxSweeps = 500;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double worst_step = 0.0;
    for (int k = 0; k < d; ++k) {
      Complex& zk = z[static_cast<size_t>(k)];
      Complex pv = q.eval(zk);
      Complex dv = q.deriv(zk);
      if (pv == 0.0) continue;
      if (dv == 0.0) {
        zk += Complex(1e-8, 1e-8) * (1.0 + std::abs(zk));
        pv = q.eval(zk);
        dv = q.deriv(zk);
        if (dv == 0.0) continue;
      }
      const Complex newton = pv / dv;
      Complex repel = 0.0;
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        const Complex diff = zk - z[static_cast<size_t>(j)];
        if (diff == 0.0) continue;
        repel += 1.0 / diff;
      }
      const Complex denom = 1.0 - newton * repel;
      const Complex step = denom == 0.0 ? newton : newton / denom;
      zk -= step;
      worst_step = std::max(worst_step, std::abs(step) / (1.0 + std::abs(zk)));
    }
    if (worst_step <= 1e-14) break;
  }

  // Newton polish sharpens simple roots to full precision. Steps that fail
  // to reduce the residual are rejected, so roots sitting inside the
  // evaluation-noise ring of a cluster cannot be kicked away.
  for (Complex& r : z) {
    double best = std::abs(q.eval(r));
    for (int it = 0; it < 3; ++it) {
      const Complex dv = q.deriv(r);
      if (dv == 0.0) break;
      const Complex step = q.eval(r) / dv;
      if (std::abs(step) > 0.5 * (1.0 + std::abs(r))) break;
      const Complex cand = r - step;
      const double val = std::abs(q.eval(cand));
      if (val >= best) break;
      r = cand;
      best = val;
    }
  }

  // The simultaneous sweep can leave an outlier stranded outside a
  // high-multiplicity cluster. Descent-guarded Newton walks it back in: the
  // contraction factor toward an m-fold root is (m-1)/m, so the step budget
  // covers every multiplicity the dimension cap allows with room to spare.
  for (Complex& r : z) {
    if (residual_ok(p, r, scale)) continue;
    double best = std::abs(q.eval(r));
    for (int it = 0; it < 200 && !residual_ok(p, r, scale); ++it) {
      const Complex dv = q.deriv(r);
      if (dv == 0.0) break;
      const Complex cand = r - q.eval(r) / dv;
      const double val = std::abs(q.eval(cand));
      if (val >= best) break;
      r = cand;
      best = val;
    }
  }

  double worst = 0.0;
  bool ok = true;
  for (const Complex& r : z) {
    worst = std::max(worst, std::abs(p.eval(r)));
    if (!residual_ok(p, r, scale)) ok = false;
  }
  if (!ok) throw NoConvergenceError("root iteration failed the residual criterion", z, worst);
  return z;
}

std::vector<Complex> eigenvalues(const CMat& m) {
  std::vector<Complex> lam = poly_roots(char_poly(m));
  const int n = m.dim();
  const double mnorm = m.inf_norm();
  const double bar = 1e-9 * std::max(mnorm, 1e-300);

  // Inverse iteration against the pivot-floored LU, so a (near-)exactly
  // singular shift solves along the null direction instead of failing;
  // repeated and defective eigenvalues stay certifiable. The start vector is
  // a fixed phase-scrambled sequence so it cannot be orthogonal to an
  // eigenvector by symmetry; a second start covers unlucky alignments.
  const auto start_vector = [n](double phase) {
    std::vector<Complex> b(static_cast<size_t>(n));
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s = phase * static_cast<double>(i + 1);
      b[static_cast<size_t>(i)] = Complex(std::cos(0.7 * s + 0.1), std::sin(1.3 * s - 0.4));
      norm += std::norm(b[static_cast<size_t>(i)]);
    }
    norm = std::sqrt(norm);
    for (Complex& c : b) c /= norm;
    return b;
  };

  struct Step {
    std::vector<Complex> v;
    double residual = 0.0;
  };

  // One solve of (m - mu I) v = rhs; returns the normalized iterate and the
  // relative residual ||(m - mu I) v|| taken at unit ||v||.
  const auto inverse_step = [&](Complex mu, std::vector<Complex> rhs) {
    CMat shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) -= mu;
    Step s;
    s.v = lu_solve(factor(shifted, PivotPolicy::Floor), rhs);
    double norm = 0.0;
    for (const Complex& c : s.v) norm += std::norm(c);
    norm = std::max(std::sqrt(norm), 1e-300);
    for (Complex& c : s.v) c /= norm;
    const std::vector<Complex> res = shifted.apply(s.v);
    double rnorm = 0.0;
    for (const Complex& c : res) rnorm += std::norm(c);
    s.residual = std::sqrt(rnorm);
    return s;
  };

  for (Complex& l : lam) {
    double best_residual = std::numeric_limits<double>::infinity();
    Complex best_l = l;
    for (const double phase : {1.0, 2.337}) {
      Step s = inverse_step(l, start_vector(phase));
      if (s.residual < best_residual) { best_residual = s.residual; best_l = l; }

      // The characteristic polynomial localizes an m-fold eigenvalue only to
      // O(eps^(1/m)), which no single solve can repair. Rayleigh-quotient
      // refinement recovers the matrix-accurate value; the radius guard keeps
      // the update attached to this root rather than a neighbor.
      for (int it = 0; it < 8 && best_residual > bar; ++it) {
        const std::vector<Complex> mv = m.apply(s.v);
        Complex rq = 0.0;
        for (int i = 0; i < n; ++i) rq += std::conj(s.v[static_cast<size_t>(i)]) * mv[static_cast<size_t>(i)];
        if (std::abs(rq - l) > 0.05 * (1.0 + std::abs(l))) break;
        s = inverse_step(rq, s.v);
        if (s.residual < best_residual) { best_residual = s.residual; best_l = rq; }
      }
      if (best_residual <= bar) break;
    }
    if (best_residual > bar)
      throw NoConvergenceError("eigenvalue failed residual certification", lam, best_residual);
    l = best_l;
  }
  return lam;
}

CMat expm(const CMat& m, double t) {
  const int n = m.dim();
  CMat x = m;
  x *= Complex(t);

  // Scale below the radius where the (6,6) Pade truncation error is deep
  // under double rounding, square back afterwards.
  int squarings = 0;
  const double norm = x.inf_norm();
  if (norm > 0.25) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    x *= Complex(std::ldexp(1.0, -squarings));
  }

  // Pade (6,6) coefficients via the standard recurrence.
  double coeff[7];
  coeff[0] = 1.0;
  for (int j = 0; j < 6; ++j)
    coeff[j + 1] = coeff[j] * static_cast<double>(6 - j) /
                   static_cast<double>((12 - j) * (j + 1));

  CMat num(n), den(n), power = CMat::identity(n);
  for (int i = 0; i < n; ++i) { num(i, i) = coeff[0]; den(i, i) = coeff[0]; }
  for (int j = 1; j <= 6; ++j) {
    power = power * x;
    CMat term = power;
    term *= Complex(coeff[j]);
    num += term;
    if (j % 2 == 0) den += term; else den -= term;
  }

  // Column-wise solve of den * r = num.
  const Lu f = factor(den);
  CMat r(n);
  std::vector<Complex> col(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] = num(i, j);
    const std::vector<Complex> sol = lu_solve(f, col);
    for (int i = 0; i < n; ++i) r(i, j) = sol[static_cast<size_t>(i)];
  }

  for (int s = 0; s < squarings; ++s) r = r * r;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(r(i, j).real()) || !std::isfinite(r(i, j).imag()))
        throw OverflowError("matrix exponential overflowed");
  return r;
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) throw Error("multiset_distance requires equal sizes");
  const auto lex = [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  };
  std::sort(a.begin(), a.end(), lex);
  std::sort(b.begin(), b.end(), lex);
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (const Complex& x : a) {
    double best = std::numeric_limits<double>::infinity();
    size_t pick = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(x - b[j]);
      if (dist < best) { best = dist; pick = j; }
    }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

} // namespace dporo::linalg
