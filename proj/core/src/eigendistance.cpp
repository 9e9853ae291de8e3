#include "eigendist/eigendistance.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "eigendist/errors.hpp"

namespace eigendist {

namespace {

constexpr double kZeroThresholdRel = 1e-12;

void warn_if_not_lazy(const MarkovChain& chain, const char* where) {
  LazinessReport lz = check_laziness(chain);
  if (!lz.holds)
    std::cerr << "[eigendist] warning: " << where << ": min self-loop " << lz.min_selfloop
              << " <= 1/2, non-degeneracy is not guaranteed\n";
}

PseudoMetric scaled(const PseudoMetric& rho, double factor) {
  PseudoMetric out = rho;
  for (double& x : out.d.a) x *= factor;
  return out;
}

}  // namespace

double lambda_scale(const PseudoMetric& rho, const PseudoMetric& reference) {
  if (rho.n != reference.n) throw ValidationError("lambda_scale: dimension mismatch");
  double sup = 0.0;
  bool any = false;
  for (int x = 0; x < rho.n; ++x)
    for (int y = x + 1; y < rho.n; ++y) {
      if (reference.d(x, y) > 0.0) {
        any = true;
        sup = std::max(sup, rho.d(x, y) / reference.d(x, y));
      } else if (rho.d(x, y) > 0.0) {
        throw ValidationError("lambda_scale: rho positive where reference vanishes");
      }
    }
  if (!any || sup == 0.0) throw DegenerateInput("lambda_scale: rho vanishes wherever reference is positive");
  return sup;
}

EigendistanceResult iterate_F(const MarkovChain& chain, double p, const PseudoMetric& init,
                              const PseudoMetric& reference, const Tolerances& tol) {
  warn_if_not_lazy(chain, "iterate_F");
  if (init.max_entry() <= 0.0) throw DegenerateInput("iterate_F: init is degenerate");
  for (int x = 0; x < init.n; ++x)
    for (int y = 0; y < init.n; ++y)
      if (init.d(x, y) > reference.d(x, y) + 1e-12)
        throw ValidationError("iterate_F: init must be dominated by the reference");
  {
    const Mat wref = apply_W(chain, reference, p, false, tol).metric.d;
    for (size_t i = 0; i < wref.a.size(); ++i)
      if (wref.a[i] > reference.d.a[i] + 1e-9)
        throw ValidationError("iterate_F: reference is not W_p-subinvariant");
  }

  EigendistanceResult res;
  res.p = p;
  PseudoMetric rho = init;
  for (int it = 1; it <= tol.max_iter; ++it) {
    double lam = lambda_scale(rho, reference);
    if (lam < 1e-12) throw DegenerateLimit("iterate_F: iteration collapsed to zero");
    PseudoMetric next = apply_W(chain, scaled(rho, 1.0 / lam), p, false, tol).metric;
    double change = sup_dist(next.d, rho.d);
    res.trace.push_back(change);
    res.iterations = it;
    rho = std::move(next);
    if (change <= tol.fp_tol) {
      res.converged = true;
      break;
    }
  }

  double m = rho.max_entry();
  if (m <= 0.0) throw DegenerateLimit("iterate_F: iteration collapsed to zero");
  res.rho = scaled(rho, 1.0 / m);
  VerifyResult vr = verify_eigendistance(chain, res.rho, p, tol);
  res.kappa = vr.kappa_hat;
  res.residual = vr.residual;
  return res;
}

EigendistanceResult iterate_F(const MarkovChain& chain, double p, const PseudoMetric& init,
                              const Tolerances& tol) {
  return iterate_F(chain, p, init, indicator_metric(chain.n), tol);
}

EigendistanceResult iterate_maximal(const MarkovChain& chain, double p, const Tolerances& tol) {
  EigendistanceResult res;
  res.p = p;
  PseudoMetric rho = indicator_metric(chain.n);
  for (int it = 1; it <= tol.max_iter; ++it) {
    PseudoMetric next = apply_W(chain, rho, p, false, tol).metric;
    for (size_t i = 0; i < next.d.a.size(); ++i)
      if (next.d.a[i] > rho.d.a[i] + tol.ot_tol) {
        std::ostringstream os;
        os << "iterate_maximal: iterate increased by " << next.d.a[i] - rho.d.a[i] << " (solver fault)";
        throw MonotonicityViolation(os.str());
      }
    double change = sup_dist(next.d, rho.d);
    res.trace.push_back(change);
    res.iterations = it;
    rho = std::move(next);
    if (change <= tol.fp_tol) {
      res.converged = true;
      break;
    }
  }
  res.kappa = 0.0;
  res.residual = sup_dist(apply_W(chain, rho, p, false, tol).metric.d, rho.d);
  res.rho = std::move(rho);
  return res;
}

EigendistanceResult sandwich_from_eigenfunction(const MarkovChain& chain, const Vec& h, double lambda_eig,
                                                double p, const Tolerances& tol) {
  const int n = chain.n;
  if (static_cast<int>(h.size()) != n) throw ValidationError("sandwich: h has wrong length");
  if (!(lambda_eig > 0.0)) throw NotAnEigenfunction("sandwich: eigenvalue must be positive");
  double hmax = 0.0;
  for (double x : h) {
    if (x < 0.0) throw NotAnEigenfunction("sandwich: h must be non-negative");
    hmax = std::max(hmax, x);
  }
  if (hmax == 0.0) throw NotAnEigenfunction("sandwich: h must not be identically zero");
  for (int x = 0; x < n; ++x) {
    double Ph = 0.0;
    for (int z = 0; z < n; ++z) Ph += chain.P(x, z) * h[z];
    if (std::abs(Ph - lambda_eig * h[x]) > 1e-10) {
      std::ostringstream os;
      os << "sandwich: (Ph - lambda h)(" << x << ") = " << Ph - lambda_eig * h[x];
      throw NotAnEigenfunction(os.str());
    }
  }

  Mat lo(n, n), hi(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      lo(x, y) = std::pow(std::abs(h[x] - h[y]), 1.0 / p);
      hi(x, y) = std::pow(h[x] + h[y], 1.0 / p);
    }
  PseudoMetric rho2 = validate_metric(hi, tol);

  warn_if_not_lazy(chain, "sandwich_from_eigenfunction");
  EigendistanceResult res;
  res.p = p;
  PseudoMetric rho = rho2;
  for (int it = 1; it <= tol.max_iter; ++it) {
    double lam = lambda_scale(rho, rho2);
    if (lam < 1e-12) throw DegenerateLimit("sandwich: iteration collapsed to zero");
    PseudoMetric next = apply_W(chain, scaled(rho, 1.0 / lam), p, false, tol).metric;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (next.d(x, y) < lo(x, y) - tol.fp_tol) {
          std::ostringstream os;
          os << "sandwich: iterate fell below the lower bracket at (" << x << "," << y << ") by "
             << lo(x, y) - next.d(x, y);
          throw SandwichViolation(os.str());
        }
    double change = sup_dist(next.d, rho.d);
    res.trace.push_back(change);
    res.iterations = it;
    rho = std::move(next);
    if (change <= tol.fp_tol) {
      res.converged = true;
      break;
    }
  }
  VerifyResult vr = verify_eigendistance(chain, rho, p, tol);
  res.kappa = vr.kappa_hat;
  res.residual = vr.residual;
  res.rho = std::move(rho);
  return res;
}

VerifyResult verify_eigendistance(const MarkovChain& chain, const PseudoMetric& rho, double p,
                                  const Tolerances& tol) {
  if (rho.max_entry() <= 0.0) throw DegenerateInput("verify_eigendistance: rho is degenerate");
  const Mat w = apply_W(chain, rho, p, false, tol).metric.d;
  const double thresh = kZeroThresholdRel * rho.max_entry();
  double sup_ratio = 0.0;
  for (int x = 0; x < rho.n; ++x)
    for (int y = x + 1; y < rho.n; ++y) {
      if (rho.d(x, y) > thresh) {
        sup_ratio = std::max(sup_ratio, w(x, y) / rho.d(x, y));
      } else if (w(x, y) > tol.ot_tol) {
        std::ostringstream os;
        os << "W_p(rho)(" << x << "," << y << ") = " << w(x, y) << " on the zero set of rho";
        throw ZeroSetViolation(os.str());
      }
    }
  double kappa_hat = 1.0 - sup_ratio;
  double residual = 0.0;
  for (int x = 0; x < rho.n; ++x)
    for (int y = x + 1; y < rho.n; ++y)
      residual = std::max(residual, std::abs(w(x, y) - (1.0 - kappa_hat) * rho.d(x, y)));
  return {kappa_hat, residual};
}

EigendistanceResult p_root_transfer(const MarkovChain& chain, const EigendistanceResult& result_p1, double p,
                                    const Tolerances& tol) {
  if (!result_p1.converged) throw ValidationError("p_root_transfer: source result did not converge");
  if (result_p1.p != 1.0) throw ValidationError("p_root_transfer: source result must be at p = 1");
  if (!(p >= 1.0)) throw ParameterRange("p_root_transfer: p must be >= 1");

  EigendistanceResult out = result_p1;
  out.p = p;
  for (double& x : out.rho.d.a) x = std::pow(x, 1.0 / p);
  out.kappa = 1.0 - std::pow(1.0 - result_p1.kappa, 1.0 / p);
  const Mat w = apply_W(chain, out.rho, p, false, tol).metric.d;
  out.residual = 0.0;
  for (size_t i = 0; i < w.a.size(); ++i)
    out.residual = std::max(out.residual, std::abs(w.a[i] - (1.0 - out.kappa) * out.rho.d.a[i]));
  out.converged = out.residual <= std::max(tol.fp_tol, 10.0 * result_p1.residual);
  return out;
}

}  // namespace eigendist
