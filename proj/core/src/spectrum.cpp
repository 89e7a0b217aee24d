#include "hollowstab/spectrum.hpp"

#include <algorithm>

#include <lapacke.h>

#include "hollowstab/errors.hpp"

namespace hollowstab {

Spectrum eigenvalues(const DenseMatrix& a) {
  if (!a.square()) throw PreconditionError("eigenvalues: matrix not square");
  if (!a.all_finite()) throw PreconditionError("eigenvalues: non-finite entry");
  const int n = a.rows();
  DenseMatrix work = a;  // dgeev overwrites its input
  std::vector<double> wr(static_cast<std::size_t>(n));
  std::vector<double> wi(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, work.data(), n, wr.data(),
                    wi.data(), nullptr, n, nullptr, n);
  if (info < 0) throw PreconditionError("eigenvalues: bad argument to dgeev");
  if (info > 0) throw BreakdownError("eigenvalues: QR iteration did not converge");
  Spectrum s;
  s.eigenvalues.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    s.eigenvalues.emplace_back(wr[static_cast<std::size_t>(k)],
                               wi[static_cast<std::size_t>(k)]);
  }
  s.abscissa = *std::max_element(wr.begin(), wr.end());
  return s;
}

double spectral_abscissa(const DenseMatrix& a) { return eigenvalues(a).abscissa; }

}  // namespace hollowstab
