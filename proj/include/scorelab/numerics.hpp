// Copyright 2026 The Scorelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCORELAB_NUMERICS_HPP_
#define SCORELAB_NUMERICS_HPP_

#include <functional>

namespace scorelab {

// Controls for the adaptive semi-infinite quadrature.
struct QuadratureSpec {
  // Stop once the accumulated error estimate falls below
  // relative_tolerance * |integral|.
  double relative_tolerance = 1e-8;
  // Maximum number of interval bisections before giving up.
  int max_subdivisions = 2048;
  // Number of panels the initial fixed rule is applied to (>= 2).
  int node_count = 8;

  void validate() const;
};

// Result of a quadrature: the value together with a conservative bound on
// the numerical error actually achieved.
struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Standard normal density phi(z).
double normal_pdf(double z);

// Standard normal cumulative distribution Phi(z).
double normal_cdf(double z);

// log Gamma(x) for x > 0, via the Lanczos approximation.
double log_gamma(double x);

// Digamma psi(x) for x > 0, via upward recurrence into the asymptotic
// region followed by the Bernoulli-number series.
double digamma(double x);

// Unregularized upper incomplete gamma Gamma(alpha, x) for alpha > 0,
// x >= 0.
double upper_incomplete_gamma(double alpha, double x);

// Regularized incomplete gamma functions P(alpha, x) and
// Q(alpha, x) = 1 - P(alpha, x) = Gamma(alpha, x) / Gamma(alpha).
// Computed by the series / continued-fraction split at x = alpha + 1.
double regularized_gamma_p(double alpha, double x);
double regularized_gamma_q(double alpha, double x);

// Beta function B(p, q) = Gamma(p)Gamma(q)/Gamma(p+q), computed in log
// space then exponentiated.
double beta_fn(double p, double q);

// Integrates `integrand` over (0, inf).  The domain is mapped onto (0, 1)
// by x = t / (1 - t) and integrated by an adaptive Gauss-Kronrod 7-15
// scheme, bisecting the panel with the largest error estimate until the
// total satisfies the requested relative tolerance.  Throws
// ConvergenceError (carrying the best estimate) if the subdivision budget
// is exhausted first.
IntegralResult integrate_semi_infinite(
    const std::function<double(double)>& integrand, const QuadratureSpec& spec);

}  // namespace scorelab

#endif  // SCORELAB_NUMERICS_HPP_
