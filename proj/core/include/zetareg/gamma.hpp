#pragma once

#include <complex>

namespace zetareg {

using complex = std::complex<double>;

/// Principal branch of log Gamma(z), continuous on C minus (-inf, 0].
/// Throws pole_error at nonpositive integers.
complex log_gamma(complex z);

/// 1 / Gamma(z). Entire; exactly zero at nonpositive integers.
complex reciprocal_gamma(complex z);

/// sin(pi z) with exact zeros at the integers.
complex sin_pi(complex z);

}  // namespace zetareg
