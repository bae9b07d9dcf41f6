#include "monozero/lp_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace monozero {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(got) + " vs " +
                                std::to_string(want) + ")");
  }
}

double norm_with_exponent(const std::vector<double>& v, double e) {
  if (e == 2.0) {
    double acc = 0.0;
    for (double t : v) acc += t * t;
    return std::sqrt(acc);
  }
  double acc = 0.0;
  for (double t : v) acc += std::pow(std::abs(t), e);
  return std::pow(acc, 1.0 / e);
}

}  // namespace

double conjugate_exponent(double t) {
  if (!(t > 1.0)) {
    throw std::invalid_argument("conjugate_exponent: exponent must exceed 1");
  }
  return t / (t - 1.0);
}

SpaceSpec::SpaceSpec(int n_, double s_, double p_) : n(n_), s(s_), p(p_) {
  if (n < 1) throw std::invalid_argument("SpaceSpec: n must be >= 1");
  if (!(s > 1.0) || !std::isfinite(s)) {
    throw std::invalid_argument("SpaceSpec: s must be a finite real > 1");
  }
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("SpaceSpec: p must be a finite real > 1");
  }
  s_conj = conjugate_exponent(s);
  q = conjugate_exponent(p);
}

PrimalVector operator+(const PrimalVector& a, const PrimalVector& b) {
  require_dim(b.size(), a.size(), "PrimalVector+");
  PrimalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

PrimalVector operator-(const PrimalVector& a, const PrimalVector& b) {
  require_dim(b.size(), a.size(), "PrimalVector-");
  PrimalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

PrimalVector operator*(double c, const PrimalVector& a) {
  PrimalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

DualCovector operator+(const DualCovector& a, const DualCovector& b) {
  require_dim(b.size(), a.size(), "DualCovector+");
  DualCovector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

DualCovector operator-(const DualCovector& a, const DualCovector& b) {
  require_dim(b.size(), a.size(), "DualCovector-");
  DualCovector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

DualCovector operator*(double c, const DualCovector& a) {
  DualCovector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

double norm(const SpaceSpec& space, const PrimalVector& x) {
  require_dim(x.size(), static_cast<std::size_t>(space.n), "norm");
  return norm_with_exponent(x.coords, space.s);
}

double dual_norm(const SpaceSpec& space, const DualCovector& f) {
  require_dim(f.size(), static_cast<std::size_t>(space.n), "dual_norm");
  return norm_with_exponent(f.coords, space.s_conj);
}

double pair(const DualCovector& f, const PrimalVector& x) {
  require_dim(f.size(), x.size(), "pair");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * x[i];
  return acc;
}

double signed_power(double t, double e) {
  if (t == 0.0) return 0.0;
  if (e == 1.0) return t;
  return std::copysign(std::pow(std::abs(t), e), t);
}

DualCovector duality_map(const SpaceSpec& space, const PrimalVector& x) {
  require_dim(x.size(), static_cast<std::size_t>(space.n), "duality_map");
  DualCovector f(x.size());
  bool all_zero = true;
  for (double t : x.coords) {
    if (t != 0.0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) return f;
  const double scale =
      (space.p == space.s) ? 1.0 : std::pow(norm(space, x), space.p - space.s);
  for (std::size_t i = 0; i < x.size(); ++i) {
    f[i] = scale * signed_power(x[i], space.s - 1.0);
  }
  return f;
}

PrimalVector inverse_duality_map(const SpaceSpec& space, const DualCovector& f) {
  require_dim(f.size(), static_cast<std::size_t>(space.n), "inverse_duality_map");
  PrimalVector x(f.size());
  bool all_zero = true;
  for (double t : f.coords) {
    if (t != 0.0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) return x;
  const double sc = space.s_conj;
  const double scale =
      (space.q == sc) ? 1.0 : std::pow(dual_norm(space, f), space.q - sc);
  for (std::size_t i = 0; i < f.size(); ++i) {
    x[i] = scale * signed_power(f[i], sc - 1.0);
  }
  return x;
}

double linf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double t : v) m = std::max(m, std::abs(t));
  return m;
}

}  // namespace monozero
