#pragma once

// Finite-dimensional l_s spaces: vectors, norms, the duality pairing, and the
// gauge-p duality map with its exact inverse.

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace monozero {

// t/(t-1) for t > 1, so that 1/t + 1/conjugate_exponent(t) = 1.
double conjugate_exponent(double t);

// (R^n, ||.||_s) together with the gauge exponent p of the duality map.
// s and p must both exceed 1; the conjugates s' = s/(s-1) and q = p/(p-1)
// are derived once at construction.
struct SpaceSpec {
  int n;
  double s;
  double p;
  double s_conj;
  double q;

  SpaceSpec(int n_, double s_, double p_);

  bool hilbert() const { return s == 2.0 && p == 2.0; }
};

// A point of the primal space (R^n, ||.||_s).
struct PrimalVector {
  std::vector<double> coords;

  PrimalVector() = default;
  explicit PrimalVector(std::size_t n) : coords(n, 0.0) {}
  PrimalVector(std::initializer_list<double> init) : coords(init) {}
  explicit PrimalVector(std::vector<double> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  double& operator[](std::size_t i) { return coords[i]; }
  double operator[](std::size_t i) const { return coords[i]; }
};

// A functional on the primal space, living in (R^n, ||.||_{s'}).
struct DualCovector {
  std::vector<double> coords;

  DualCovector() = default;
  explicit DualCovector(std::size_t n) : coords(n, 0.0) {}
  DualCovector(std::initializer_list<double> init) : coords(init) {}
  explicit DualCovector(std::vector<double> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  double& operator[](std::size_t i) { return coords[i]; }
  double operator[](std::size_t i) const { return coords[i]; }
};

PrimalVector operator+(const PrimalVector& a, const PrimalVector& b);
PrimalVector operator-(const PrimalVector& a, const PrimalVector& b);
PrimalVector operator*(double c, const PrimalVector& a);
DualCovector operator+(const DualCovector& a, const DualCovector& b);
DualCovector operator-(const DualCovector& a, const DualCovector& b);
DualCovector operator*(double c, const DualCovector& a);

// ||x||_s = (sum |x_i|^s)^{1/s}.
double norm(const SpaceSpec& space, const PrimalVector& x);

// ||f||_{s'} with s' = s/(s-1).
double dual_norm(const SpaceSpec& space, const DualCovector& f);

// sum f_i x_i.
double pair(const DualCovector& f, const PrimalVector& x);

// J_p x = ||x||_s^{p-s} (|x_i|^{s-2} x_i)_i, with |0|^{s-2}*0 taken as 0.
// Satisfies pair(J_p x, x) = ||x||^p and dual_norm(J_p x) = ||x||^{p-1}.
DualCovector duality_map(const SpaceSpec& space, const PrimalVector& x);

// The duality map of the dual space with gauge exponent q = p/(p-1):
// f -> ||f||_{s'}^{q-s'} (|f_i|^{s'-2} f_i)_i.  Exact two-sided inverse of
// duality_map.
PrimalVector inverse_duality_map(const SpaceSpec& space, const DualCovector& f);

// |t|^e sign(t) with the value at t = 0 defined as 0.  The componentwise
// building block of both duality maps.
double signed_power(double t, double e);

double linf_norm(const std::vector<double>& v);

}  // namespace monozero
