#pragma once

#include <complex>
#include <vector>

#include "hollowstab/matrix.hpp"

namespace hollowstab {

/// Eigenvalues of a square real matrix together with the spectral
/// abscissa (largest real part).
struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  double abscissa = 0.0;
};

/// All n eigenvalues of a general real square matrix, computed with a
/// standard dense nonsymmetric solver (LAPACK dgeev).
/// Throws PreconditionError for non-square or non-finite input and
/// BreakdownError if the QR iteration fails to converge.
Spectrum eigenvalues(const DenseMatrix& a);

/// Shorthand for eigenvalues(a).abscissa.
double spectral_abscissa(const DenseMatrix& a);

}  // namespace hollowstab
