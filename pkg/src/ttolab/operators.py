"""Truncated Toeplitz operators and their relatives as dense matrices.

Everything is expressed in the Takenaka-Malmquist basis of a certified
:class:`~ttolab.modelspace.ModelBasis`.  Two construction routes exist and
are kept deliberately independent so each can certify the other:

* quadrature -- entries <phi e_k, e_j> by the grid inner product, valid
  for any bounded symbol sampled on the grid;
* functional calculus -- for trigonometric polynomials only,
  c_0 I + sum c_n A^n + sum c_{-n} (A*)^n with A the compressed shift,
  exact because same-sign powers of the shift compress multiplicatively.

Also here: the canonical conjugation (C f)(z) = u(z) conj(z f(z)) on the
circle, the Clark one-parameter family of unitary rank-one perturbations
of the shift, and Hankel blocks measuring the failure of the model space
to be multiplication-invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct
from .errors import BadAlpha, MethodMismatch, TruncationTooSmall
from .modelspace import ModelBasis, tm_values
from .symbols import JumpSymbol, TrigPolynomial
from ._util import cplx_to_pair

FUNCTIONAL_CALCULUS = "functional-calculus"
QUADRATURE = "quadrature"


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense square matrix tagged with its basis and construction route."""

    entries: np.ndarray
    basis: ModelBasis
    provenance: str

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix(
            entries=self.entries.conj().T.copy(),
            basis=self.basis,
            provenance="derived",
        )

    def to_csv(self) -> str:
        lines = ["row,col,re,im"]
        M = self.entries
        for j in range(M.shape[0]):
            for k in range(M.shape[1]):
                lines.append(f"{j},{k},{M[j, k].real!r},{M[j, k].imag!r}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "basis": {
                "zeros": [cplx_to_pair(a) for a in self.basis.source.zeros],
                "phase": cplx_to_pair(self.basis.source.phase),
                "quadrature_points": self.basis.quadrature_points,
            },
            "provenance": self.provenance,
            "entries": [
                [cplx_to_pair(v) for v in row] for row in self.entries
            ],
        }


@dataclass(frozen=True)
class ConjugationMatrix:
    """Matrix J of the conjugate-linear involution x -> J conj(x)."""

    entries: np.ndarray
    basis: ModelBasis

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.entries @ np.conj(x)


@dataclass(frozen=True)
class HankelBlock:
    """Fourier-side block of (I - P) M_phi restricted to the model space.

    Column k holds the Fourier coefficients, modes -order..order, of
    phi e_k minus its model-space projection.
    """

    block: np.ndarray
    order: int
    basis: ModelBasis
    symbol: TrigPolynomial


def _symbol_grid_values(t: np.ndarray, phi) -> np.ndarray:
    if isinstance(phi, np.ndarray):
        if phi.shape != t.shape:
            raise ValueError("sampled symbol length must match the grid")
        return phi.astype(complex)
    if isinstance(phi, (TrigPolynomial, JumpSymbol)) or callable(phi):
        return np.asarray(phi(t), dtype=complex)
    raise TypeError(f"cannot sample symbol of type {type(phi)}")


def _quadrature_entries(E: np.ndarray, fvals: np.ndarray) -> np.ndarray:
    """M[j, k] = (1/N) sum_t f(t) e_k(t) conj(e_j(t))."""
    N = E.shape[1]
    return ((E * fvals) @ E.conj().T / N).T


def _grid_for_bandwidth(basis: ModelBasis, bandwidth: int):
    """Return (t, z, E) on a grid fine enough for the symbol's bandwidth.

    The cached grid is reused unless the symbol's modes would alias into
    the resolved band; then the basis is re-evaluated on a finer grid.
    """
    needed = 4 * max(bandwidth, 1)
    if basis.quadrature_points >= needed:
        return basis.grid_t, basis.grid_z, basis.values
    N = 1 << int(np.ceil(np.log2(needed)))
    t = 2.0 * np.pi * np.arange(N) / N
    z = np.exp(1j * t)
    return t, z, tm_values(basis.source.zeros, z)


def compressed_shift(basis: ModelBasis) -> OperatorMatrix:
    """Matrix of f -> P(z f), entries <z e_k, e_j> by quadrature.

    In the Takenaka-Malmquist basis this is lower triangular with the
    ordered zeros on the diagonal, so its eigenvalues are exactly the
    zero multiset of u.
    """
    E = basis.values
    M = _quadrature_entries(E, basis.grid_z)
    return OperatorMatrix(entries=M, basis=basis, provenance=QUADRATURE)


def truncated_toeplitz(
    basis: ModelBasis, phi, method: str = QUADRATURE
) -> OperatorMatrix:
    """Matrix of the truncated Toeplitz operator f -> P(phi f).

    Parameters
    ----------
    basis : ModelBasis
    phi : TrigPolynomial | JumpSymbol | ndarray | callable
        The symbol; arrays are grid samples, callables receive angles.
    method : "quadrature" or "functional-calculus"
        Functional calculus requires a TrigPolynomial and evaluates the
        coefficients on powers of the compressed shift.

    Raises
    ------
    MethodMismatch
        If functional calculus is requested for a non-polynomial symbol.
    """
    if method == FUNCTIONAL_CALCULUS:
        if not isinstance(phi, TrigPolynomial):
            raise MethodMismatch(
                "functional calculus needs a TrigPolynomial symbol"
            )
        A = compressed_shift(basis).entries
        M = _polynomial_of(A, A.conj().T, phi)
        return OperatorMatrix(entries=M, basis=basis, provenance=FUNCTIONAL_CALCULUS)
    if method == QUADRATURE:
        bandwidth = phi.bandwidth if isinstance(phi, (TrigPolynomial,)) else 0
        if isinstance(phi, JumpSymbol):
            bandwidth = phi.background.bandwidth
        t, z, E = _grid_for_bandwidth(basis, bandwidth)
        fvals = _symbol_grid_values(t, phi)
        M = _quadrature_entries(E, fvals)
        return OperatorMatrix(entries=M, basis=basis, provenance=QUADRATURE)
    raise ValueError(f"unknown method {method!r}")


def _polynomial_of(A: np.ndarray, Astar: np.ndarray, phi: TrigPolynomial) -> np.ndarray:
    """sum_{n>=0} c_n A^n + sum_{n>=1} c_{-n} Astar^n."""
    n = A.shape[0]
    coeffs = phi.coeff_dict()
    M = coeffs.get(0, 0.0) * np.eye(n, dtype=complex)
    power = np.eye(n, dtype=complex)
    for k in range(1, phi.degree_plus + 1):
        power = power @ A
        c = coeffs.get(k, 0.0)
        if c != 0.0:
            M = M + c * power
    power = np.eye(n, dtype=complex)
    for k in range(1, phi.degree_minus + 1):
        power = power @ Astar
        c = coeffs.get(-k, 0.0)
        if c != 0.0:
            M = M + c * power
    return M


def conjugation_matrix(basis: ModelBasis) -> ConjugationMatrix:
    """Matrix of the conjugation (C f)(z) = u(z) conj(z f(z)) on the circle.

    J is unitary, symmetric, and satisfies J conj(J) = I; every truncated
    Toeplitz matrix M on the same basis satisfies M = J M^T conj(J).
    """
    E = basis.values
    z = basis.grid_z
    u_grid = basis.source.eval(z)
    CE = u_grid * np.conj(z * E)
    N = basis.quadrature_points
    J = ((CE @ E.conj().T) / N).T
    return ConjugationMatrix(entries=J, basis=basis)


def kernel_at_zero_coords(basis: ModelBasis) -> np.ndarray:
    """Coordinates of the reproducing kernel at 0 (an unnormalized vector
    with squared norm 1 - |u(0)|^2)."""
    return np.conj(basis.eval_basis([0.0])[:, 0])


def clark_unitary(basis: ModelBasis, alpha: complex) -> OperatorMatrix:
    """The unitary rank-one perturbation of the compressed shift

        U_alpha = A + alpha / (1 - conj(u(0)) alpha) * (k0 (x) C k0),

    whose eigenvalues are the circle points where u takes the value alpha.

    Raises
    ------
    BadAlpha
        If alpha is not unimodular to 1e-12.
    """
    alpha = complex(alpha)
    if abs(abs(alpha) - 1.0) > 1e-12:
        raise BadAlpha(f"|alpha| = {abs(alpha):.17g} is not 1 to 1e-12")
    A = compressed_shift(basis).entries
    J = conjugation_matrix(basis).entries
    v = kernel_at_zero_coords(basis)
    w = J @ np.conj(v)  # coordinates of C k0
    u0 = basis.source.eval(0.0)
    denom = 1.0 - np.conj(u0) * alpha
    assert abs(denom) > 0.0, "Clark denominator vanished; |u(0)| must be < 1"
    U = A + (alpha / denom) * np.outer(v, np.conj(w))
    return OperatorMatrix(entries=U, basis=basis, provenance="derived")


def clark_functional_gap(
    basis: ModelBasis, alpha: complex, phi: TrigPolynomial
) -> OperatorMatrix:
    """phi(U_alpha) - A_phi, both sides by functional calculus.

    The gap telescopes into at most (analytic degree + coanalytic degree)
    rank-one pieces, which is the finite-rank witness used by the
    normal-plus-compact experiments.
    """
    if not isinstance(phi, TrigPolynomial):
        raise MethodMismatch("functional calculus needs a TrigPolynomial symbol")
    U = clark_unitary(basis, alpha).entries
    A = compressed_shift(basis).entries
    phi_U = _polynomial_of(U, U.conj().T, phi)
    phi_A = _polynomial_of(A, A.conj().T, phi)
    return OperatorMatrix(entries=phi_U - phi_A, basis=basis, provenance="derived")


def polynomial_of_clark(
    basis: ModelBasis, alpha: complex, phi: TrigPolynomial
) -> OperatorMatrix:
    """phi(U_alpha) by functional calculus (a normal matrix)."""
    U = clark_unitary(basis, alpha).entries
    return OperatorMatrix(
        entries=_polynomial_of(U, U.conj().T, phi), basis=basis, provenance="derived"
    )


def hankel_truncation_floor(basis: ModelBasis, phi: TrigPolynomial) -> int:
    return phi.bandwidth + 4 * basis.dimension


def hankel_auto_order(basis: ModelBasis, phi: TrigPolynomial) -> int:
    """Truncation order making the discarded geometric tail negligible.

    The residual columns decay like max|a|^m in the mode index m, so the
    order grows as zeros approach the circle; 12 decades of decay keeps
    semicommutator residuals comfortably below 1e-6.
    """
    amax = max((abs(a) for a in basis.source.zeros), default=0.0)
    floor = hankel_truncation_floor(basis, phi)
    if amax < 1e-6:
        return floor
    tail = int(np.ceil(12.0 * np.log(10.0) / (2.0 * np.log(1.0 / amax))))
    return max(floor, phi.bandwidth + tail)


def hankel_operator(basis: ModelBasis, phi: TrigPolynomial, order: int) -> HankelBlock:
    """Fourier block of (I - P) M_phi on the model space, modes |m| <= order.

    The adjoint block pairs as (H_conj(phi))^* H_psi = A_{phi psi} - A_phi A_psi,
    the semicommutator identity checked by `verify_identity("hankel", ...)`.

    Raises
    ------
    TruncationTooSmall
        If order < bandwidth(phi) + 4 * dimension.
    """
    order = int(order)
    if not isinstance(phi, TrigPolynomial):
        raise MethodMismatch("Hankel blocks are built for TrigPolynomial symbols")
    if order < hankel_truncation_floor(basis, phi):
        raise TruncationTooSmall(
            f"order {order} < bandwidth + 4*degree = "
            f"{hankel_truncation_floor(basis, phi)}"
        )
    # evaluate on a grid that resolves the requested modes cleanly
    needed = 4 * (order + phi.bandwidth + basis.dimension)
    N = max(basis.quadrature_points, 1 << int(np.ceil(np.log2(needed))))
    if N == basis.quadrature_points:
        t, z, E = basis.grid_t, basis.grid_z, basis.values
    else:
        t = 2.0 * np.pi * np.arange(N) / N
        z = np.exp(1j * t)
        E = tm_values(basis.source.zeros, z)
    fvals = np.asarray(phi(t), dtype=complex)
    M = _quadrature_entries(E, fvals)
    residual = (E * fvals) - M.T @ E
    spectrum = np.fft.fft(residual, axis=1) / N
    idx = [m % N for m in range(-order, order + 1)]
    block = spectrum[:, idx].T
    return HankelBlock(block=block, order=order, basis=basis, symbol=phi)


def hankel_semicommutator_residual(
    basis: ModelBasis, phi: TrigPolynomial, psi: TrigPolynomial, order: int
) -> float:
    """Relative 2-norm residual of
    A_{phi psi} - A_phi A_psi = (H_conj(phi))^* H_psi at the given order."""
    prod = _trig_product(phi, psi)
    A_prod = truncated_toeplitz(basis, prod).entries
    A_phi = truncated_toeplitz(basis, phi).entries
    A_psi = truncated_toeplitz(basis, psi).entries
    H_conj_phi = hankel_operator(basis, phi.conjugate(), order).block
    H_psi = hankel_operator(basis, psi, order).block
    lhs = A_prod - A_phi @ A_psi
    rhs = H_conj_phi.conj().T @ H_psi
    scale = np.linalg.norm(lhs, 2)
    if scale == 0.0:
        return float(np.linalg.norm(lhs - rhs, 2))
    return float(np.linalg.norm(lhs - rhs, 2) / scale)


def _trig_product(phi: TrigPolynomial, psi: TrigPolynomial) -> TrigPolynomial:
    acc: dict[int, complex] = {}
    for n, c in phi.coeffs:
        for m, d in psi.coeffs:
            acc[n + m] = acc.get(n + m, 0.0) + c * d
    return TrigPolynomial(coeffs=tuple(sorted(acc.items())))
