# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The gridwave Authors
"""Invertible wavelet filter banks with uniform, delay-staggered decimation."""

from ._gridwave import *  # noqa: F401,F403
from ._gridwave import NonInvertibleError, __doc__  # noqa: F401


def design(wavelet="cauchy:300", M=253, M_C=5, oversampling=2.0, frames=256, delays="kronecker", alpha=0.0,
           sample_rate=2.0):
    """Build a linear-grid design with d chosen from the target oversampling and L = d * frames."""
    d = choose_decimation(M, oversampling)  # noqa: F405
    return build_design(wavelet, M, M_C, d, d * frames, delays, alpha, sample_rate)  # noqa: F405
