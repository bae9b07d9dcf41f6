#include "monozero/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "monozero/rng.hpp"

namespace monozero {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double t : v) {
    if (!std::isfinite(t)) return false;
  }
  return true;
}

Eigen::VectorXd eval(const MonotoneOperator& T, const Eigen::VectorXd& x) {
  PrimalVector p(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) p[static_cast<std::size_t>(i)] = x[i];
  const DualCovector f = T(p);
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = f[static_cast<std::size_t>(i)];
  return out;
}

// One damped Newton run; returns the best point reached.
Eigen::VectorXd newton_run(const MonotoneOperator& T, Eigen::VectorXd x, int iters) {
  const Eigen::Index n = x.size();
  double fx = eval(T, x).norm();
  for (int k = 0; k < iters; ++k) {
    const Eigen::VectorXd F = eval(T, x);
    if (!F.allFinite()) break;
    const double h = 1e-6 * (1.0 + x.cwiseAbs().maxCoeff());
    Eigen::MatrixXd Jac(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::VectorXd xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      Jac.col(j) = (eval(T, xp) - eval(T, xm)) / (2.0 * h);
    }
    if (!Jac.allFinite()) break;
    const Eigen::VectorXd step = Jac.colPivHouseholderQr().solve(-F);
    if (!step.allFinite()) break;
    double damp = 1.0;
    bool accepted = false;
    for (int half = 0; half < 40; ++half) {
      const Eigen::VectorXd trial = x + damp * step;
      const Eigen::VectorXd Ft = eval(T, trial);
      if (Ft.allFinite() && Ft.norm() < fx) {
        x = trial;
        fx = Ft.norm();
        accepted = true;
        break;
      }
      damp *= 0.5;
    }
    if (!accepted) break;
    if (fx == 0.0) break;
  }
  return x;
}

// Coarse-to-fine grid search minimizing the Euclidean residual; n <= 2 only.
Eigen::VectorXd grid_refine(const MonotoneOperator& T, const SearchRegion& region) {
  const int n = region.center.size() == 1 ? 1 : 2;
  Eigen::VectorXd best(n);
  for (int i = 0; i < n; ++i) best[i] = region.center[static_cast<std::size_t>(i)];
  double best_r = eval(T, best).norm();
  double R = region.radius;
  const int grid = (n == 1) ? 81 : 33;
  for (int round = 0; round < 40 && R > 1e-15; ++round) {
    Eigen::VectorXd center = best;
    for (int i = 0; i < grid; ++i) {
      const double u = -R + 2.0 * R * i / (grid - 1);
      if (n == 1) {
        Eigen::VectorXd cand(1);
        cand[0] = center[0] + u;
        const double r = eval(T, cand).norm();
        if (std::isfinite(r) && r < best_r) {
          best_r = r;
          best = cand;
        }
      } else {
        for (int j = 0; j < grid; ++j) {
          const double v = -R + 2.0 * R * j / (grid - 1);
          Eigen::VectorXd cand(2);
          cand[0] = center[0] + u;
          cand[1] = center[1] + v;
          const double r = eval(T, cand).norm();
          if (std::isfinite(r) && r < best_r) {
            best_r = r;
            best = cand;
          }
        }
      }
    }
    R *= 0.35;
  }
  return best;
}

}  // namespace

const char* to_string(OracleMethod method) {
  switch (method) {
    case OracleMethod::newton: return "newton";
    case OracleMethod::projected_gradient: return "projected_gradient";
    case OracleMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

OracleSolution oracle_zero(const MonotoneOperator& T, const SearchRegion& region,
                           double tol, std::uint64_t seed) {
  const SpaceSpec& space = T.space;
  const int n = space.n;
  if (n > 10) {
    throw std::invalid_argument("oracle_zero: dense method limited to n <= 10");
  }
  if (region.center.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("oracle_zero: region center dimension mismatch");
  }
  if (!(region.radius > 0.0)) {
    throw std::invalid_argument("oracle_zero: region radius must be > 0");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("oracle_zero: tol must be > 0");
  }

  std::vector<Eigen::VectorXd> starts;
  {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c[i] = region.center[static_cast<std::size_t>(i)];
    starts.push_back(c);
    starts.push_back(Eigen::VectorXd::Zero(n));
    Rng rng(seed);
    for (int k = 0; k < 8; ++k) {
      const PrimalVector s = sample_ball(rng, n, region.radius);
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v[i] = c[i] + s[static_cast<std::size_t>(i)];
      starts.push_back(v);
    }
  }

  PrimalVector best_point;
  double best_residual = std::numeric_limits<double>::infinity();
  auto consider = [&](const Eigen::VectorXd& y) {
    PrimalVector p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = y[i];
    const DualCovector f = T(p);
    if (!all_finite(f.coords)) return;
    const double r = dual_norm(space, f);
    if (r < best_residual) {
      best_residual = r;
      best_point = p;
    }
  };

  for (const auto& s : starts) {
    consider(newton_run(T, s, 200));
    if (best_residual <= tol) break;
  }
  if (best_residual > tol && n <= 2) {
    consider(newton_run(T, grid_refine(T, region), 200));
  }

  if (best_residual > tol) {
    std::ostringstream msg;
    msg << "oracle_zero: no point with dual residual <= " << tol
        << " found in the region (best " << best_residual << ")";
    throw OracleFailure(msg.str());
  }
  return OracleSolution{best_point, OracleMethod::newton, best_residual, tol};
}

OracleSolution oracle_zero_linear(const SpaceSpec& space, const std::vector<double>& G,
                                  const DualCovector& b) {
  const int n = space.n;
  if (G.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("oracle_zero_linear: matrix size mismatch");
  }
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      M(i, j) = G[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(j)];
    }
  }
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = (b.size() == 0) ? 0.0 : b[static_cast<std::size_t>(i)];
  const Eigen::VectorXd y = M.colPivHouseholderQr().solve(rhs);
  if (!y.allFinite()) {
    throw OracleFailure("oracle_zero_linear: singular system");
  }
  PrimalVector point(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) point[static_cast<std::size_t>(i)] = y[i];
  const Eigen::VectorXd res = M * y - rhs;
  DualCovector rd(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rd[static_cast<std::size_t>(i)] = res[i];
  const double residual = dual_norm(space, rd);
  const double certified = 1e-10;
  if (residual > certified) {
    std::ostringstream msg;
    msg << "oracle_zero_linear: solve residual " << residual << " exceeds " << certified;
    throw OracleFailure(msg.str());
  }
  return OracleSolution{point, OracleMethod::closed_form, residual, certified};
}

PrimalVector project_intersection(const std::vector<ConvexSetSpec>& sets,
                                  const PrimalVector& x, double tol,
                                  long max_sweeps) {
  if (sets.empty()) {
    throw std::invalid_argument("project_intersection: at least one set required");
  }
  if (sets.size() == 1) return project(sets.front(), x);

  // Dykstra: per-set correction vectors restore the metric projection that
  // plain alternating projection loses.
  const std::size_t n = x.size();
  std::vector<std::vector<double>> corrections(sets.size(), std::vector<double>(n, 0.0));
  PrimalVector y = x;
  for (long sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      PrimalVector z(n);
      for (std::size_t i = 0; i < n; ++i) z[i] = y[i] + corrections[k][i];
      const PrimalVector pz = project(sets[k], z);
      for (std::size_t i = 0; i < n; ++i) {
        const double c_new = z[i] - pz[i];
        change = std::max(change, std::abs(c_new - corrections[k][i]));
        corrections[k][i] = c_new;
      }
      y = pz;
    }
    double infeas = 0.0;
    for (const auto& set : sets) {
      const PrimalVector py = project(set, y);
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += (py[i] - y[i]) * (py[i] - y[i]);
      infeas = std::max(infeas, std::sqrt(d));
    }
    if (infeas <= tol && change <= tol) return y;
  }
  throw OracleFailure("project_intersection: sweep budget exhausted before reaching tolerance");
}

OracleSolution oracle_vi(const MonotoneOperator& T,
                         const std::vector<ConvexSetSpec>& sets,
                         const PrimalVector& witness, double tol) {
  const SpaceSpec& space = T.space;
  if (!space.hilbert()) {
    throw std::invalid_argument("oracle_vi: Hilbert spaces only (s = p = 2)");
  }
  if (sets.empty()) {
    throw std::invalid_argument("oracle_vi: at least one set required");
  }
  if (witness.size() != static_cast<std::size_t>(space.n)) {
    throw std::invalid_argument("oracle_vi: witness dimension mismatch");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("oracle_vi: tol must be > 0");
  }
  const double proj_tol = tol * 1e-2;
  for (const auto& set : sets) {
    if (!contains(set, witness, 1e-9)) {
      throw std::invalid_argument("oracle_vi: witness is not in every set");
    }
  }

  const double gamma = std::sqrt(tol);
  const std::size_t n = witness.size();
  PrimalVector x = project_intersection(sets, witness, proj_tol);
  const long cap = 20000000;
  double residual = std::numeric_limits<double>::infinity();
  for (long k = 0; k < cap; ++k) {
    const DualCovector Tx = T(x);
    PrimalVector moved(n);
    for (std::size_t i = 0; i < n; ++i) moved[i] = x[i] - gamma * Tx[i];
    const PrimalVector next = project_intersection(sets, moved, proj_tol);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += (next[i] - x[i]) * (next[i] - x[i]);
    residual = std::sqrt(r);
    x = next;
    if (residual <= tol) {
      return OracleSolution{x, OracleMethod::projected_gradient, residual, tol};
    }
  }
  std::ostringstream msg;
  msg << "oracle_vi: iteration cap reached with fixed-point residual " << residual
      << " > " << tol;
  throw OracleFailure(msg.str());
}

}  // namespace monozero
