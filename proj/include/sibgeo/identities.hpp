#pragma once

// Numerical verification of the curvature identities relating a Riemannian
// metric g, a unit field T with geodesic flow and integrable normal bundle,
// and the Lorentzian sibling g_L = g - 2 T_flat (x) T_flat.
//
// Unless stated otherwise a residual is scale-normalized: at each sample the
// max-norm of the defect tensor is divided by 1 + the largest component of
// the terms involved, and the check reports the maximum over samples.

#include <functional>
#include <span>
#include <string>
#include <utility>

#include "sibgeo/sibling.hpp"

namespace sibgeo {

inline constexpr double kDefaultTolerance = 1e-8;
// T must satisfy its three properties to this level before an identity that
// depends on them is evaluated.
inline constexpr double kHypothesisTolerance = 1e-6;

struct IdentityResult {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  double raw_residual = 0.0;  // same maximum without scale normalization
  double tolerance = kDefaultTolerance;
  bool passed = false;
  Vec worst_point;
  std::string error;  // non-empty when the check could not be evaluated
};

// Running max of per-sample residuals.
class ResidualAccumulator {
 public:
  ResidualAccumulator(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }
  void add(double normalized, double raw, std::span<const double> point);
  IdentityResult finish() const;

 private:
  IdentityResult result_;
  bool any_ = false;
};

// Throws TPropertiesViolated when T fails any of its properties on `samples`.
TFieldReport require_t_properties(const SiblingPair& pair, std::span<const Vec> samples);

// max of the four T-field residuals, compared against `tol` (absolute).
IdentityResult check_t_properties(const SiblingPair& pair, std::span<const Vec> samples,
                                  double tol = kDefaultTolerance);

// Rm_L = Rm + nablaT_flat o nablaT_flat
IdentityResult check_proposition(const SiblingPair& pair, std::span<const Vec> samples,
                                 double tol = kDefaultTolerance);

// first:  Rm - (l/2) g o g + 2l g o (T_flat (x) T_flat) + nablaT_flat o nablaT_flat
// second: Rm_L - (l/2) g_L o g_L
std::pair<IdentityResult, IdentityResult> check_theorem_eq1(const SiblingPair& pair, double lambda,
                                                            std::span<const Vec> samples,
                                                            double tol = kDefaultTolerance);

struct ConstantCurvatureFit {
  double lambda_hat = 0.0;
  double residual = 0.0;  // max |Rm - (lambda_hat/2) g o g| over samples, absolute
  int samples = 0;
};

// Closed-form one-parameter least squares for Rm ~ (lambda/2) g o g.
ConstantCurvatureFit fit_constant_curvature(const MetricField& m, std::span<const Vec> samples);

// Ric = Ric_L + 2 Rm_L(T,.,.,T) - tr_g(nablaT_flat o nablaT_flat), trace over
// slots (1,4), together with Ric(T,T) = Ric_L(T,T).
IdentityResult check_ricci_relation(const SiblingPair& pair, std::span<const Vec> samples,
                                    double tol = kDefaultTolerance);

// Relations between the connections of g and g_L in the eigenframe.
IdentityResult check_connection(const SiblingPair& pair, std::span<const Vec> samples,
                                double tol = kDefaultTolerance);

// Along T's integral curves: sec(T, X_i) = -lambda, sec(X_i, X_j) = lambda - 2 l_i l_j.
IdentityResult check_remark1_sectionals(const SiblingPair& pair, double lambda,
                                        std::span<const Vec> samples, double tol = kDefaultTolerance);

struct BochnerOptions {
  int points_per_curve = 10;
  double spacing = 0.1;   // flow parameter between recorded curve points
  int substeps = 20;      // RK4 steps per spacing
  double fd_step = 1e-3;  // 5-point stencil step along the flow
  double tolerance = 1e-6;
  double slack = 1e-8;    // allowed excess in the inequality
};

struct BochnerResult {
  IdentityResult identity;    // |T(div T) + Ric(T,T) + sum l_i^2|, absolute
  IdentityResult inequality;  // max(0, T(div T) - (-Ric(T,T) - (div T)^2/(n-1)) - slack)
  double min_gap = 0.0;       // min over points of -Ric(T,T) - (div T)^2/(n-1) - T(div T)
  double max_gap = 0.0;
  int points = 0;
};

// Integrates T's flow from each start point; curves stop early at the edge of
// the sampling box.
BochnerResult check_bochner(const SiblingPair& pair, std::span<const Vec> curve_starts,
                            const BochnerOptions& options = {});

// Residual of u' = (n-1) l - u^2/(n-1) for u(s) = (n-1) sqrt(l) tanh(sqrt(l) s + c).
double riccati_residual(int n, double lambda, double c, std::span<const double> grid);
// Same residual for the constant solution u = sign * (n-1) sqrt(l).
double riccati_constant_residual(int n, double lambda, double sign, std::span<const double> grid);
// Same residual for an arbitrary candidate with known derivative.
double riccati_residual(int n, double lambda, const std::function<double(double)>& u,
                        const std::function<double(double)>& du, std::span<const double> grid);

// Absolute max of Ric_L + Hess u - du (x) du / (N - n).
IdentityResult check_bakry_emery(const MetricField& gL, const Expr& u, std::span<const Vec> samples,
                                 double synthetic_dimension = 3.5, double tol = kDefaultTolerance);

struct Big3Residuals {
  double integrability = 0.0;  // |h_x - f_y|
  double first = 0.0;          // |f f_x + h f_y - f_u - H_x/2|
  double second = 0.0;         // |h h_y + f h_x - h_u - H_y/2|
  IdentityResult result;       // absolute max of the three
};

// f, h, H are expressions on the pp-wave chart (v, u, x, y) and must not
// depend on v (BadParameters otherwise).
Big3Residuals check_big3(const Expr& f, const Expr& h, const Expr& H, std::span<const Vec> samples,
                         double tol = kDefaultTolerance);

}  // namespace sibgeo
