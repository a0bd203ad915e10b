// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <complex>

namespace ccres {

using cld = std::complex<long double>;

/// Principal-sheet-agnostic log Gamma: exp(log_gamma(z)) == Gamma(z). The
/// imaginary part is only determined modulo 2*pi.
/// Stirling series after an upward shift to Re z >= 16; reflection for Re z < 1/2.
cld log_gamma(cld z);

/// 1/Gamma(z), an entire function (exactly zero at z = 0, -1, -2, ...).
cld reciprocal_gamma(cld z);

}  // namespace ccres
