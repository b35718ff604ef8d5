#pragma once

// The Riemannian <-> Lorentzian sibling transform g_L = g - 2 T_flat (x) T_flat
// and the geometry of the distinguished unit field T.

#include <span>
#include <vector>

#include "sibgeo/geometry.hpp"

namespace sibgeo {

struct SiblingPair {
  MetricField g;   // Riemannian
  MetricField gL;  // Lorentzian
  VectorFieldSpec T;
};

// Given a Riemannian g, returns g - 2 T_flat (x) T_flat; given a Lorentzian
// g_L, returns g_L + 2 T_flat_L (x) T_flat_L. The lowered form is composed as
// expressions, so the result is a first-class MetricField.
//
// T must be unit (g(T,T) = +-1 to 1e-8) at every sample; with no samples, 32
// Halton points over the chart box are used. Throws NotUnit naming the worst
// point, or SignatureError if the result has the wrong signature there.
MetricField sibling_metric(const MetricField& m, const VectorFieldSpec& T,
                           std::span<const Vec> samples = {});

// Builds the pair from whichever sibling is given.
SiblingPair make_sibling_pair(const MetricField& given, const VectorFieldSpec& T,
                              std::span<const Vec> samples = {});

struct SiblingPairResiduals {
  double transform = 0.0;  // max |gL - (g - 2 T_flat (x) T_flat)|
  double unit_g = 0.0;     // max |g(T,T) - 1|
  double unit_gL = 0.0;    // max |gL(T,T) + 1|
};

SiblingPairResiduals check_sibling_pair(const SiblingPair& pair, std::span<const Vec> samples);

struct TFieldReport {
  double unit_residual = 0.0;           // max |g(T,T) - 1|
  double geodesic_residual = 0.0;       // max |nabla_T T|_g
  double symmetry_residual = 0.0;       // max |nabla T_flat - transpose|
  double integrability_residual = 0.0;  // max |g(T, [X,Y])| over the normal frame
  int samples = 0;

  bool passes(double tol) const {
    return unit_residual < tol && geodesic_residual < tol && symmetry_residual < tol &&
           integrability_residual < tol;
  }
};

// g must be Riemannian.
TFieldReport verify_T_properties(const MetricField& g, const VectorFieldSpec& T,
                                 std::span<const Vec> samples);

// (nabla T_flat)(X, Y) = g(nabla_X T, Y) as a full coordinate matrix:
// row i, column j holds g_jk (d_i T^k + G^k_il T^l).
Matrix nabla_T_flat_matrix(const MetricField& g, const VectorFieldSpec& T, std::span<const double> p);

// Symmetric form of the above. Throws NotSymmetric when the antisymmetric part
// exceeds 1e-6 * (1 + max entry).
SymBilinear nabla_T_flat(const MetricField& g, const VectorFieldSpec& T, std::span<const double> p);

// g-orthonormal basis of T's normal space at p. Starts from the columns of
// `basis` (coordinate basis when empty), drops the vector with the largest
// |g(e_i, T)|, projects the rest off T and runs modified Gram-Schmidt in
// index order.
std::vector<Vec> normal_frame(const MetricField& g, const VectorFieldSpec& T, std::span<const double> p,
                              const Matrix* basis = nullptr);

struct ShapeSpectrum {
  Vec point;
  Vec eigenvalues;               // descending
  std::vector<Vec> eigenframe;   // X_i, g-orthonormal, in T's normal space
  Vec T;
  std::vector<Vec> normal_basis;  // Gram-Schmidt frame the eigenvectors were expressed in
  Matrix coefficients;            // column i: X_i in the normal basis
};

// Diagonalizes X -> nabla_X T on T's normal space by cyclic Jacobi. Throws
// NotSymmetric when the operator is not self-adjoint to 1e-6.
ShapeSpectrum shape_spectrum(const MetricField& g, const VectorFieldSpec& T, std::span<const double> p,
                             const Matrix* basis = nullptr);

struct ConnectionResiduals {
  double tt = 0.0;  // |nabla^L_T T + nabla_T T|
  double xt = 0.0;  // |nabla^L_{X_i} T - nabla_{X_i} T|
  double tx = 0.0;  // |nabla^L_T X_i - nabla_T X_i|
  double xx = 0.0;  // |nabla^L_{X_i} X_j - 2 lambda_i delta_ij T - nabla_{X_i} X_j|
  double max() const;
};

// Evaluates the four relations between the two Levi-Civita connections in the
// eigenframe at p. Frame fields are extended to a neighbourhood of p as
// constant combinations of the Gram-Schmidt normal frame.
ConnectionResiduals check_connection_relations(const SiblingPair& pair, std::span<const double> p);

}  // namespace sibgeo
