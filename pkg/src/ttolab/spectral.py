"""Dense eigen/singular computations, numerical rank, identity reports.

LAPACK (through numpy.linalg) does the decompositions; this module owns
the contracts around them: eigenpair residual checks, the descending
singular-value convention with its Frobenius cross-check, the scale-free
rank rule, and the named operator-identity verifications consumed by the
test harness and the CLI.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import NoConvergence, UnknownIdentity
from .modelspace import ModelBasis
from .operators import (
    OperatorMatrix,
    clark_unitary,
    compressed_shift,
    conjugation_matrix,
    hankel_auto_order,
    hankel_semicommutator_residual,
    kernel_at_zero_coords,
    truncated_toeplitz,
)
from .symbols import TrigPolynomial, trig_monomial

MAX_DIMENSION = 2048
RANK_REL_TOL = 1e-9
RANK_ABS_FLOOR = 1e-12


def _as_matrix(M) -> np.ndarray:
    if isinstance(M, OperatorMatrix):
        return M.entries
    return np.asarray(M, dtype=complex)


@dataclass(frozen=True)
class SpectralResult:
    """Eigenvalues and/or singular values with per-pair residuals."""

    eigenvalues: np.ndarray | None
    singular_values: np.ndarray
    residuals: np.ndarray | None


def op_norm(M) -> float:
    """Spectral norm (largest singular value)."""
    A = _as_matrix(M)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def eigenvalues(M) -> SpectralResult:
    """Eigenvalues with residuals ||Mx - lam x|| / ||M|| per returned pair.

    Raises
    ------
    NoConvergence
        If the QR iteration fails (propagated from LAPACK).
    ValueError
        If the matrix is not square or larger than 2048.
    """
    A = _as_matrix(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"square matrix required, got shape {A.shape}")
    if A.shape[0] > MAX_DIMENSION:
        raise ValueError(f"dimension {A.shape[0]} exceeds cap {MAX_DIMENSION}")
    try:
        vals, vecs = np.linalg.eig(A)
        svals = np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    norm = svals[0] if svals.size else 0.0
    res = np.linalg.norm(A @ vecs - vecs * vals[None, :], axis=0)
    if norm > 0:
        res = res / norm
    return SpectralResult(eigenvalues=vals, singular_values=svals, residuals=res)


def singular_values(M) -> SpectralResult:
    """Descending singular values, cross-checked against the Frobenius norm.

    Raises
    ------
    NoConvergence
        If the SVD fails or the sum-of-squares cross-check breaks down.
    """
    A = _as_matrix(M)
    try:
        svals = np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    fro2 = float(np.sum(np.abs(A) ** 2))
    ssum = float(np.sum(svals**2))
    if fro2 > 0 and abs(ssum - fro2) > 1e-10 * fro2:
        raise NoConvergence(
            f"singular values inconsistent with Frobenius norm: {ssum} vs {fro2}"
        )
    return SpectralResult(eigenvalues=None, singular_values=svals, residuals=None)


def numerical_rank(M, rel_tol: float = RANK_REL_TOL) -> int:
    """Count singular values above max(rel_tol * sigma_1, 1e-12)."""
    if not 0.0 < rel_tol < 1.0:
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    svals = singular_values(M).singular_values
    if svals.size == 0 or svals[0] <= RANK_ABS_FLOOR:
        return 0
    threshold = max(rel_tol * svals[0], RANK_ABS_FLOOR)
    return int(np.count_nonzero(svals > threshold))


IDENTITY_TOLERANCES = {
    "gram": 1e-10,
    "csym": 1e-8,
    "defect": 1e-8,
    "telescoping": 1e-10,
    "zero-symbol": 1e-6,
    "clark-unitarity": 1e-8,
    "hankel": 1e-6,
}

IDENTITY_NAMES = tuple(IDENTITY_TOLERANCES)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one named identity check on one basis."""

    identity: str
    residual: float
    tolerance: float
    passed: bool
    operands: tuple[str, ...] = field(default_factory=tuple)
    details: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {
                "identity": self.identity,
                "residual": self.residual,
                "tolerance": self.tolerance,
                "pass": self.passed,
                "operands": list(self.operands),
                "details": self.details,
            },
            sort_keys=True,
        )


def _report(name, residual, operands, details="") -> VerificationReport:
    tol = IDENTITY_TOLERANCES[name]
    return VerificationReport(
        identity=name,
        residual=float(residual),
        tolerance=tol,
        passed=bool(residual < tol),
        operands=tuple(operands),
        details=details,
    )


def _random_trig(rng: np.random.Generator, bandwidth: int) -> TrigPolynomial:
    ns = range(-bandwidth, bandwidth + 1)
    return TrigPolynomial(
        coeffs=tuple((n, complex(rng.normal(), rng.normal())) for n in ns)
    )


def verify_identity(
    name: str,
    basis: ModelBasis,
    *,
    m: int = 3,
    phi: TrigPolynomial | None = None,
    psi: TrigPolynomial | None = None,
    alpha: complex = 1.0 + 0.0j,
    order: int | None = None,
    poly_degree: int = 8,
    seed: int = 0,
) -> VerificationReport:
    """Check one named operator identity on the given basis.

    Names: gram, csym, defect, telescoping, zero-symbol, clark-unitarity,
    hankel.  Unspecified symbols are drawn from a generator seeded with
    `seed`, so reports are reproducible.

    Raises
    ------
    UnknownIdentity
        For names outside the list above.
    """
    rng = np.random.default_rng(seed)
    n = basis.dimension

    if name == "gram":
        return _report(name, basis.gram_defect, ("basis",), f"N={basis.quadrature_points}")

    if name == "csym":
        phi = phi if phi is not None else _random_trig(rng, 4)
        M = truncated_toeplitz(basis, phi).entries
        J = conjugation_matrix(basis).entries
        residual = np.linalg.norm(M - J @ M.T @ np.conj(J), 2)
        return _report(name, residual, ("quadrature", "quadrature"))

    if name == "defect":
        A = compressed_shift(basis).entries
        v = kernel_at_zero_coords(basis)
        D = np.eye(n) - A @ A.conj().T
        residual = np.linalg.norm(D - np.outer(v, np.conj(v)), 2)
        return _report(name, residual, ("quadrature", "evaluation"))

    if name == "telescoping":
        A = compressed_shift(basis).entries
        Astar = A.conj().T
        core = A @ Astar - np.eye(n)
        lhs = np.linalg.matrix_power(A, m) @ np.linalg.matrix_power(Astar, m) - np.eye(n)
        rhs = np.zeros_like(lhs)
        left = np.eye(n, dtype=complex)
        for _ in range(m):
            rhs = rhs + left @ core @ left.conj().T
            left = left @ A
        residual = np.linalg.norm(lhs - rhs, 2)
        return _report(name, residual, ("functional-calculus",) * 2, f"m={m}")

    if name == "zero-symbol":
        # phi = u p + conj(u q) annihilates the model space.  The symbol
        # carries the poles of u on top of the basis content, so evaluate
        # on a doubled grid: the certificate on the basis grid does not
        # cover u-weighted integrands near the resolution edge.
        from .modelspace import tm_values
        from .operators import _quadrature_entries

        N2 = 2 * basis.quadrature_points
        z = np.exp(2j * np.pi * np.arange(N2) / N2)
        E = tm_values(basis.source.zeros, z)
        u_grid = basis.source.eval(z)
        p = np.zeros_like(z)
        q = np.zeros_like(z)
        pc = rng.normal(size=poly_degree + 1) + 1j * rng.normal(size=poly_degree + 1)
        qc = rng.normal(size=poly_degree + 1) + 1j * rng.normal(size=poly_degree + 1)
        pc /= np.linalg.norm(pc)
        qc /= np.linalg.norm(qc)
        for k in range(poly_degree + 1):
            p += pc[k] * z**k
            q += qc[k] * z**k
        fvals = u_grid * p + np.conj(u_grid * q)
        M = _quadrature_entries(E, fvals)
        residual = np.linalg.norm(M, 2)
        return _report(name, residual, ("quadrature",), f"poly_degree={poly_degree}")

    if name == "clark-unitarity":
        U = clark_unitary(basis, alpha).entries
        residual = np.linalg.norm(U @ U.conj().T - np.eye(n), 2)
        return _report(name, residual, ("derived",), f"alpha={alpha}")

    if name == "hankel":
        phi = phi if phi is not None else _random_trig(rng, 2)
        psi = psi if psi is not None else _random_trig(rng, 2)
        if order is None:
            order = max(hankel_auto_order(basis, phi), hankel_auto_order(basis, psi))
        residual = hankel_semicommutator_residual(basis, phi, psi, order)
        return _report(name, residual, ("quadrature",) * 3, f"order={order}")

    raise UnknownIdentity(f"unknown identity {name!r}; expected one of {IDENTITY_NAMES}")


def shift_powers_agree(basis: ModelBasis, k: int) -> float:
    """|| A_{z^k} (quadrature) - (A_z)^k || -- the same-sign power identity."""
    A = compressed_shift(basis).entries
    direct = truncated_toeplitz(basis, trig_monomial(k)).entries
    return float(np.linalg.norm(direct - np.linalg.matrix_power(A, k), 2))


__all__ = [
    "SpectralResult",
    "VerificationReport",
    "IDENTITY_NAMES",
    "IDENTITY_TOLERANCES",
    "eigenvalues",
    "singular_values",
    "numerical_rank",
    "op_norm",
    "verify_identity",
    "shift_powers_agree",
]
