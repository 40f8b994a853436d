#include "jlie/numint.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "jlie/errors.hpp"

namespace jlie {

namespace {

constexpr double kBlowupThreshold = 1e12;

// Right-hand side sum b_i(t) X_i(x); flags poles and runaway values with the
// stage time attached.
std::vector<double> rhs(const TDepVectorField& sys, double t, const std::vector<double>& x) {
  std::vector<double> out(x.size(), 0.0);
  std::vector<double> w;
  try {
    w = sys.weights(t);
    for (std::size_t b = 0; b < sys.algebra.basis.size(); ++b) {
      if (w[b] == 0.0) continue;
      for (const auto& [idx, coeff] : sys.algebra.basis[b].components())
        out[idx[0]] += w[b] * coeff.evaluate(x);
    }
  } catch (const PoleError& e) {
    throw PoleError(std::string(e.what()) + " while evaluating the field", t);
  }
  for (double v : out) {
    if (!std::isfinite(v))
      throw EvalError("non-finite field value at t = " + std::to_string(t));
    if (std::fabs(v) > kBlowupThreshold)
      throw PoleError("field value exceeded the blow-up threshold; the solution "
                      "is leaving the chart", t);
  }
  return out;
}

std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& k) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * k[i];
  return out;
}

}  // namespace

Trajectory integrate(const TDepVectorField& x, const std::vector<double>& x0,
                     double t0, double t1, double step) {
  const int dim = x.algebra.chart.dim();
  if (static_cast<int>(x0.size()) != dim)
    throw InvalidArgumentError("start point dimension does not match the chart");
  for (double v : x0)
    if (!std::isfinite(v)) throw InvalidArgumentError("start point must be finite");
  if (!(step > 0)) throw InvalidArgumentError("step must be positive");
  if (!(t1 > t0)) throw InvalidArgumentError("t1 must exceed t0");

  const double span = t1 - t0;
  const long long n = static_cast<long long>(std::ceil(span / step - 1e-9));
  const double h = span / static_cast<double>(n);

  Trajectory traj{x, {}, {}};
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.times.push_back(t0);
  traj.states.push_back(x0);

  std::vector<double> state = x0;
  for (long long i = 0; i < n; ++i) {
    const double t = t0 + h * static_cast<double>(i);
    std::vector<double> k1 = rhs(x, t, state);
    std::vector<double> k2 = rhs(x, t + h / 2, axpy(state, h / 2, k1));
    std::vector<double> k3 = rhs(x, t + h / 2, axpy(state, h / 2, k2));
    std::vector<double> k4 = rhs(x, t + h, axpy(state, h, k3));
    for (int d = 0; d < dim; ++d) {
      state[d] += h / 6 * (k1[d] + 2 * k2[d] + 2 * k3[d] + k4[d]);
      if (!std::isfinite(state[d]))
        throw EvalError("non-finite state at t = " + std::to_string(t + h));
    }
    traj.times.push_back(i + 1 == n ? t1 : t0 + h * static_cast<double>(i + 1));
    traj.states.push_back(state);
  }
  return traj;
}

std::string Trajectory::to_csv() const {
  const Chart& chart = system.algebra.chart;
  std::string out = "t";
  for (const std::string& c : chart.coords()) out += "," + c;
  out += "\n";
  char buf[64];
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", times[i]);
    out += buf;
    for (double v : states[i]) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

double com_drift(const Trajectory& traj, const Expr& f) {
  if (f.chart() != traj.system.algebra.chart)
    throw DomainError("function lives on a different chart than the trajectory");
  if (traj.states.empty()) throw InvalidArgumentError("empty trajectory");
  const double f0 = f.evaluate(traj.states.front());
  const double scale = std::max(1.0, std::fabs(f0));
  double drift = 0;
  for (const auto& s : traj.states)
    drift = std::max(drift, std::fabs(f.evaluate(s) - f0) / scale);
  return drift;
}

nlohmann::ordered_json SuperpositionReport::to_json() const {
  return nlohmann::ordered_json{{"k", k},
                                {"samples", times.size()},
                                {"max_ode_residual", max_ode_residual},
                                {"cross_ratio_drift", cross_ratio_drift},
                                {"min_pairwise_gap", min_pairwise_gap}};
}

SuperpositionReport riccati_superposition_check(const Trajectory& s1, const Trajectory& s2,
                                                const Trajectory& s3, double k) {
  if (s1.dim() != 1 || s2.dim() != 1 || s3.dim() != 1)
    throw InvalidArgumentError("superposition applies to scalar systems only");
  if (s1.times != s2.times || s1.times != s3.times)
    throw InvalidArgumentError("the three trajectories must share one time grid");
  const std::size_t n = s1.times.size();
  if (n < 3) throw InvalidArgumentError("too few samples");

  SuperpositionReport rep;
  rep.k = k;
  rep.times = s1.times;
  rep.min_pairwise_gap = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = s1.states[i][0], x2 = s2.states[i][0], x3 = s3.states[i][0];
    const double gap = std::min({std::fabs(x1 - x2), std::fabs(x1 - x3), std::fabs(x2 - x3)});
    rep.min_pairwise_gap = std::min(rep.min_pairwise_gap, gap);
  }
  if (!(rep.min_pairwise_gap > 1e-6))
    throw InvalidArgumentError("coincident solutions: pairwise gap fell to " +
                               std::to_string(rep.min_pairwise_gap));

  rep.constructed.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = s1.states[i][0], x2 = s2.states[i][0], x3 = s3.states[i][0];
    const double den = (x3 - x2) + k * (x1 - x3);
    const double scale = std::max({1.0, std::fabs(x1), std::fabs(x2), std::fabs(x3)});
    if (std::fabs(den) < 1e-9 * scale)
      throw PoleError("superposition denominator vanished", s1.times[i]);
    rep.constructed.push_back((x1 * (x3 - x2) + k * x2 * (x1 - x3)) / den);
  }

  // The mixture must solve the same ODE: central finite differences against
  // the field at the interior samples.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dt = rep.times[i + 1] - rep.times[i - 1];
    const double fd = (rep.constructed[i + 1] - rep.constructed[i - 1]) / dt;
    const std::vector<double> state{rep.constructed[i]};
    const double field = rhs(s1.system, rep.times[i], state)[0];
    rep.max_ode_residual = std::max(rep.max_ode_residual, std::fabs(fd - field));
  }

  // Cross ratio of the mixture with its three ingredients; constant (and
  // equal to k) exactly on true solutions.
  double ratio0 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rep.constructed[i];
    const double x1 = s1.states[i][0], x2 = s2.states[i][0], x3 = s3.states[i][0];
    const double den = (x - x2) * (x1 - x3);
    const double scale = std::max({1.0, std::fabs(x), std::fabs(x1), std::fabs(x3)});
    if (std::fabs(den) < 1e-12 * scale)
      throw PoleError("cross ratio undefined at a sample", rep.times[i]);
    const double ratio = ((x - x1) * (x2 - x3)) / den;
    if (i == 0)
      ratio0 = ratio;
    else
      rep.cross_ratio_drift = std::max(rep.cross_ratio_drift, std::fabs(ratio - ratio0));
  }
  return rep;
}

}  // namespace jlie
