#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace dporo::linalg {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 8;

// Small dense complex matrix with inline storage and value semantics.
// Everything in this project is at most 8x8 (per-mode assemblies are 6x6,
// the mean-mode assembly 4x4, resolvent systems 3x3), so no allocation and
// no clever blocking anywhere.
class CMat {
public:
  CMat() = default;
  explicit CMat(int n);
  static CMat identity(int n);

  int dim() const { return n_; }

  Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i * n_ + j)]; }
  const Complex& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i * n_ + j)];
  }

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(Complex s);
  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(CMat a, Complex s) { return a *= s; }
  friend CMat operator*(Complex s, CMat a) { return a *= s; }
  friend CMat operator*(const CMat& a, const CMat& b);

  std::vector<Complex> apply(std::span<const Complex> x) const;

  Complex trace() const;
  double max_abs() const;   // max |a_ij|
  double inf_norm() const;  // max row sum of |a_ij|

  bool operator==(const CMat&) const = default;

private:
  int n_ = 0;
  std::array<Complex, kMaxDim * kMaxDim> a_{};
};

// Polynomial with complex coefficients, c[0] + c[1] x + ... + c[d] x^d,
// c[d] != 0 unless the polynomial is identically zero.
struct Poly {
  std::vector<Complex> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  Complex eval(Complex x) const;
  Complex deriv(Complex x) const;
};

// Gaussian elimination with partial pivoting. Throws SingularError when a
// pivot falls below 1e-14 times the largest matrix entry.
std::vector<Complex> solve_linear(const CMat& m, std::span<const Complex> rhs);

// Determinant via the same elimination (product of pivots, sign-tracked).
Complex det(const CMat& m);

// Monic characteristic polynomial det(xI - M) by the Faddeev-LeVerrier
// recurrence. Exact-coefficient friendly for the dimensions used here.
Poly char_poly(const CMat& m);

// All complex roots by Aberth-Ehrlich simultaneous iteration started from a
// perturbed circle, then Newton-polished. Roots are accepted when
// |p(r)| <= 1e-10 * max|c_i| * max(1, |r|)^degree; otherwise throws
// NoConvergenceError carrying the best iterate. At most 500 sweeps.
std::vector<Complex> poly_roots(const Poly& p);

// Eigenvalues via char_poly + poly_roots. Every returned eigenvalue is
// certified by one inverse-iteration step: the resulting unit vector v must
// satisfy ||(M - lambda I) v|| <= 1e-9 ||M||. Repeated eigenvalues, which the
// polynomial localizes only to O(eps^(1/multiplicity)), are refined by
// Rayleigh quotient until they certify. Certification failure throws
// NoConvergenceError.
std::vector<Complex> eigenvalues(const CMat& m);

// Matrix exponential expm(t*M) by scaling-and-squaring with a degree-(6,6)
// Pade approximant. Throws OverflowError if the result is not finite.
CMat expm(const CMat& m, double t = 1.0);

// Greedy nearest-neighbour pairing distance between two root multisets of
// equal size, after sorting by (Re, Im). Returns the largest pair distance.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

} // namespace dporo::linalg
