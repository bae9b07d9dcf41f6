#include "monozero/operators.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "monozero/rng.hpp"

namespace monozero {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double t : v) {
    if (!std::isfinite(t)) return false;
  }
  return true;
}

double euclid_norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double t : v) acc += t * t;
  return std::sqrt(acc);
}

}  // namespace

MonotoneOperator power_map(const SpaceSpec& space) {
  if (space.p < 2.0) {
    throw std::invalid_argument("power_map: requires p >= 2");
  }
  const double p = space.p;
  auto apply = [p](const PrimalVector& x) {
    DualCovector out(x.size());
    const double r = euclid_norm(x.coords);
    if (r == 0.0) return out;
    const double scale = (p == 2.0) ? 1.0 : std::pow(r, p - 2.0);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = scale * x[i];
    return out;
  };
  return MonotoneOperator{apply, space, p, std::pow(2.0, 2.0 - p), "power_map"};
}

MonotoneOperator linear_map(const SpaceSpec& space, const std::vector<double>& G,
                            const DualCovector& b) {
  const std::size_t n = static_cast<std::size_t>(space.n);
  if (G.size() != n * n) {
    throw std::invalid_argument("linear_map: matrix must be n*n row-major");
  }
  if (b.size() != n) {
    throw std::invalid_argument("linear_map: offset dimension mismatch");
  }
  Eigen::MatrixXd M(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M(i, j) = G[i * n + j];
  }
  Eigen::MatrixXd sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const double lambda_min = es.eigenvalues().minCoeff();
  if (!(lambda_min > 0.0)) {
    throw std::invalid_argument(
        "linear_map: symmetric part not positive definite; smallest eigenvalue " +
        std::to_string(lambda_min));
  }
  auto apply = [G, b, n](const PrimalVector& x) {
    DualCovector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = -b[i];
      for (std::size_t j = 0; j < n; ++j) acc += G[i * n + j] * x[j];
      out[i] = acc;
    }
    return out;
  };
  return MonotoneOperator{apply, space, 2.0, lambda_min, "linear_map"};
}

MonotoneOperator gradient_of(const SpaceSpec& space,
                             std::function<double(const PrimalVector&)> f,
                             std::function<DualCovector(const PrimalVector&)> grad,
                             std::optional<double> h) {
  if (grad) {
    return MonotoneOperator{std::move(grad), space, space.p, 1.0, "gradient"};
  }
  auto apply = [f, h](const PrimalVector& x) {
    const double step = h ? *h : 1e-6 * (1.0 + linf_norm(x.coords));
    DualCovector g(x.size());
    PrimalVector probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      probe[i] = x[i] + step;
      const double fp = f(probe);
      probe[i] = x[i] - step;
      const double fm = f(probe);
      probe[i] = x[i];
      if (!std::isfinite(fp) || !std::isfinite(fm)) {
        throw std::runtime_error("gradient_of: non-finite functional value");
      }
      g[i] = (fp - fm) / (2.0 * step);
    }
    return g;
  };
  return MonotoneOperator{apply, space, space.p, 1.0, "fd_gradient"};
}

MonotonicityCertificate certify_strong_monotonicity(const MonotoneOperator& T,
                                                    double p, long samples,
                                                    double radius,
                                                    std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("certify: samples must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("certify: radius must be > 0");
  Rng rng(seed);
  MonotonicityCertificate cert{};
  cert.eta_hat = std::numeric_limits<double>::infinity();
  cert.samples = samples;
  cert.region_radius = radius;
  cert.seed = seed;
  for (long k = 0; k < samples; ++k) {
    PrimalVector x = sample_ball(rng, T.space.n, radius);
    PrimalVector y = sample_ball(rng, T.space.n, radius);
    const PrimalVector d = x - y;
    const double dn = norm(T.space, d);
    if (dn == 0.0) continue;
    const DualCovector Tx = T(x);
    const DualCovector Ty = T(y);
    if (!all_finite(Tx.coords) || !all_finite(Ty.coords)) {
      throw std::runtime_error("certify: operator produced non-finite output");
    }
    const double quotient = pair(Tx - Ty, d) / std::pow(dn, p);
    if (quotient < cert.eta_hat) {
      cert.eta_hat = quotient;
      cert.worst_x = x;
      cert.worst_y = y;
    }
  }
  return cert;
}

std::vector<CoercivityRow> coercivity_probe(const MonotoneOperator& T,
                                            const std::vector<double>& radii,
                                            int directions, std::uint64_t seed) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && radii[i] <= radii[i - 1])) {
      throw std::invalid_argument(
          "coercivity_probe: radii must be positive and strictly increasing");
    }
  }
  Rng rng(seed);
  std::vector<PrimalVector> dirs;
  dirs.reserve(static_cast<std::size_t>(directions));
  for (int k = 0; k < directions; ++k) {
    PrimalVector u(static_cast<std::size_t>(T.space.n));
    double nrm = 0.0;
    while (nrm == 0.0) {
      for (auto& t : u.coords) t = rng.normal();
      nrm = norm(T.space, u);
    }
    dirs.push_back((1.0 / nrm) * u);
  }
  std::vector<CoercivityRow> table;
  table.reserve(radii.size());
  for (double r : radii) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& u : dirs) {
      const PrimalVector x = r * u;
      const DualCovector Tx = T(x);
      if (!all_finite(Tx.coords)) {
        throw std::runtime_error("coercivity_probe: non-finite operator output");
      }
      worst = std::min(worst, pair(Tx, x) / r);
    }
    table.push_back(CoercivityRow{r, worst});
  }
  return table;
}

Functional quadratic_functional(const PrimalVector& center) {
  PrimalVector c = center;
  auto value = [c](const PrimalVector& x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - c[i];
      acc += 0.5 * d * d;
    }
    return acc;
  };
  auto gradient = [c](const PrimalVector& x) {
    DualCovector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] - c[i];
    return g;
  };
  return Functional{value, gradient, "quadratic"};
}

Functional quartic_functional(const PrimalVector& center) {
  PrimalVector c = center;
  auto value = [c](const PrimalVector& x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - c[i];
      acc += 0.25 * d * d * d * d + 0.5 * d * d;
    }
    return acc;
  };
  auto gradient = [c](const PrimalVector& x) {
    DualCovector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - c[i];
      g[i] = d * d * d + d;
    }
    return g;
  };
  return Functional{value, gradient, "quartic"};
}

}  // namespace monozero
