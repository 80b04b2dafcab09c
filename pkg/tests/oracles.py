"""Independent oracles the tests check library output against.

Everything here is deliberately computed by a different route than the
library uses: residue-calculus closed forms, finite differences, direct
Fourier sums.  Keeping these paths separate is what gives the
cross-checks their teeth.
"""

from __future__ import annotations

import numpy as np


def shift_matrix_closed_form(zeros) -> np.ndarray:
    """Compressed-shift matrix in the Takenaka-Malmquist basis by residues.

    Lower triangular: diagonal a_k, and below it
    M[j, k] = gamma_j gamma_k * prod_{k < i < j} (-conj(a_i)).
    """
    zeros = np.asarray(zeros, dtype=complex)
    n = len(zeros)
    gamma = np.sqrt(1.0 - np.abs(zeros) ** 2)
    M = np.zeros((n, n), dtype=complex)
    for k in range(n):
        M[k, k] = zeros[k]
        for j in range(k + 1, n):
            M[j, k] = gamma[j] * gamma[k] * np.prod(-np.conj(zeros[k + 1 : j]))
    return M


def blaschke_value(zeros, phase, z):
    """Direct rational-function evaluation, one factor at a time."""
    result = complex(phase)
    for a in zeros:
        result *= (z - a) / (1.0 - np.conj(a) * z)
    return result


def derivative_central(f, z: complex, h: float = 1e-6) -> complex:
    """Central finite difference along the real direction (f holomorphic)."""
    return (f(z + h) - f(z - h)) / (2.0 * h)


def kernel_norm_sq_by_series(a: complex, lam: complex = 0.0) -> float:
    """||k_0||^2 for a single-zero product via the geometric series
    sum |lam|^{2n}; at lam = 0 this is 1 - |u(0)|^2 = 1 - |a|^2."""
    if lam == 0.0:
        return 1.0 - abs(a) ** 2
    raise NotImplementedError


def fourier_coefficient_simpson(values_fn, n: int, samples: int = 2**16) -> complex:
    """(1/2pi) int f(theta) e^{-in theta} dtheta by composite Simpson on the
    open interval (0, 2pi); accurate for integrands smooth away from 0."""
    if samples % 2 == 1:
        samples += 1
    theta = np.linspace(0.0, 2.0 * np.pi, samples + 1)
    theta[0] = 1e-12
    theta[-1] = 2.0 * np.pi - 1e-12
    vals = values_fn(theta) * np.exp(-1j * n * theta)
    h = theta[1] - theta[0]
    weights = np.ones(samples + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    return complex(np.sum(weights * vals) * h / 3.0 / (2.0 * np.pi))


def match_multisets(a, b) -> float:
    """Greedy optimal-assignment distance between complex multisets."""
    a = list(a)
    b = list(b)
    assert len(a) == len(b)
    worst = 0.0
    remaining = b[:]
    for x in sorted(a, key=abs, reverse=True):
        gaps = [abs(x - y) for y in remaining]
        i = int(np.argmin(gaps))
        worst = max(worst, gaps[i])
        remaining.pop(i)
    return worst
