#pragma once

#include "sibgeo/tensor.hpp"

namespace sibgeo {

// Determinant by LU with partial pivoting.
double determinant(const Matrix& m);

// Inverse of a symmetric form. Throws SingularMetric when |det| <= det_floor.
SymBilinear inverse(const SymBilinear& g, double det_floor = 1e-10);

struct EigenSystem {
  Vec values;      // sorted descending
  Matrix vectors;  // column k is the unit eigenvector for values[k]
  int sweeps = 0;
};

// Cyclic Jacobi diagonalization of a symmetric matrix. Sweeps continue until
// the off-diagonal max-norm drops below off_tol * (1 + max|a|). Each
// eigenvector is signed so that its largest-magnitude entry is positive.
EigenSystem jacobi_eigen(const SymBilinear& a, double off_tol = 1e-13, int max_sweeps = 100);

}  // namespace sibgeo
