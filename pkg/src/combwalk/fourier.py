"""Unitary discrete Fourier transform of arbitrary length.

Convention: the forward transform has kernel ``exp(2j*pi*j*k/M) / sqrt(M)``,
the same sign as the quantum Fourier transform, so ``dft(e_0)`` is the
uniform vector.  Backed by numpy's pocketfft, which handles any ``M``
(mixed radix, Bluestein for large prime factors) in ``O(M log M)``.
"""

import numpy as np


def dft(x, inverse=False):
    """Unitary DFT along the last axis; ``inverse=True`` applies the adjoint."""
    x = np.asarray(x, dtype=complex)
    if inverse:
        return np.fft.fft(x, norm="ortho")
    return np.fft.ifft(x, norm="ortho")


def idft(x):
    return dft(x, inverse=True)


def dft_matrix(M):
    """Dense ``M x M`` unitary DFT matrix (small ``M`` only)."""
    jk = np.outer(np.arange(M), np.arange(M)) % M
    return np.exp(2j * np.pi * jk / M) / np.sqrt(M)
