#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "jlie/liesys.hpp"

namespace jlie {

// Sampled integral curve of a time-dependent field. times and states always
// have equal length and times are strictly increasing.
struct Trajectory {
  TDepVectorField system;
  std::vector<double> times;
  std::vector<std::vector<double>> states;

  int dim() const { return system.algebra.chart.dim(); }

  // "t,<coord1>,<coord2>,..." header then one row per sample, every value
  // printed with 17 significant digits so a reader recovers the doubles
  // exactly.
  std::string to_csv() const;
};

// Classical fixed-step fourth-order Runge-Kutta for dx/dt = sum b_i(t) X_i(x).
// The step is shrunk minimally so an integer number of steps lands exactly on
// t1. Throws PoleError carrying the offending time when a field evaluation
// hits a pole or crosses the blow-up threshold 1e12, EvalError when a value
// goes non-finite, InvalidArgumentError on bad step/interval/start point.
Trajectory integrate(const TDepVectorField& x, const std::vector<double>& x0,
                     double t0, double t1, double step);

// max over samples of |f(x(t)) - f(x(t0))| / max(1, |f(x(t0))|).
double com_drift(const Trajectory& traj, const Expr& f);

// Outcome of the nonlinear superposition test on three scalar Riccati
// solutions: the mixed solution, its finite-difference ODE residual against
// the trajectories' own system, and the constancy defect of the cross ratio
// ((x-x1)(x2-x3)) / ((x-x2)(x1-x3)), which equals the mixing constant k
// exactly on true solutions.
struct SuperpositionReport {
  double k = 0;
  std::vector<double> times;
  std::vector<double> constructed;
  double max_ode_residual = 0;
  double cross_ratio_drift = 0;
  double min_pairwise_gap = 0;

  nlohmann::ordered_json to_json() const;  // scalar summary, not the samples
};

// Forms x = (x1 (x3-x2) + k x2 (x1-x3)) / ((x3-x2) + k (x1-x3)) pointwise.
// The three trajectories must come from one scalar system and share their
// time grid; solutions closer than 1e-6 anywhere are rejected as coincident
// (InvalidArgumentError) and a vanishing mixture denominator raises PoleError
// with the sample time.
SuperpositionReport riccati_superposition_check(const Trajectory& s1, const Trajectory& s2,
                                                const Trajectory& s3, double k);

}  // namespace jlie
