"""Model-space bases, reproducing kernels, and circle quadrature.

The model space of a degree-n Blaschke product u is the n-dimensional
space H2 \\ominus u H2.  Its workhorse orthonormal basis here is the
Takenaka-Malmquist system attached to the ordered zeros (a_1, ..., a_n):

    e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{i<k} b_i(z),

with b_i the Blaschke factor of a_i.  All inner products are uniform
trapezoid sums over the grid t_j = 2 pi j / N, which for these rational
integrands converge geometrically in N.  A basis is accepted only once
the measured Gram defect max|G - I| certifies orthonormality to 1e-10;
otherwise the grid doubles until a hard cap, then QuadratureStall.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct
from .errors import (
    BasePointOnCircle,
    BasePointOutside,
    GridMismatch,
    QuadratureStall,
)

GRAM_TOL = 1e-10
N_CAP = 2**20
_CHUNK = 2**16


def tm_values(zeros, pts: np.ndarray) -> np.ndarray:
    """Takenaka-Malmquist basis values e_k(pts), shape (n, len(pts)).

    Depends only on the ordered zeros; the product phase cancels in the
    orthonormalization and never enters the basis.
    """
    zeros = np.asarray(zeros, dtype=complex)
    pts = np.asarray(pts, dtype=complex)
    n = len(zeros)
    out = np.empty((n, pts.size), dtype=complex)
    running = np.ones(pts.size, dtype=complex)
    flat = pts.reshape(-1)
    for k, a in enumerate(zeros):
        gamma = np.sqrt(1.0 - abs(a) ** 2)
        out[k] = gamma / (1.0 - np.conj(a) * flat) * running
        running = running * (flat - a) / (1.0 - np.conj(a) * flat)
    return out


def _gram_defect(zeros, N: int) -> float:
    """max |G - I| for the order-N uniform grid, accumulated in chunks."""
    n = len(zeros)
    G = np.zeros((n, n), dtype=complex)
    for start in range(0, N, _CHUNK):
        stop = min(start + _CHUNK, N)
        t = 2.0 * np.pi * np.arange(start, stop) / N
        E = tm_values(zeros, np.exp(1j * t))
        G += E @ E.conj().T
    G /= N
    return float(np.max(np.abs(G - np.eye(n))))


@dataclass(frozen=True)
class ModelBasis:
    """Certified Takenaka-Malmquist basis on a uniform circle grid.

    Fields
    ------
    source : BlaschkeProduct
        The inner function whose model space this spans.
    quadrature_points : int
        Grid size N; grid nodes are t_j = 2 pi j / N.
    values : ndarray, shape (n, N)
        Cached e_k(exp(i t_j)).
    gram_defect : float
        Measured max|G - I| at this N (certified < 1e-10).
    """

    source: BlaschkeProduct
    quadrature_points: int
    values: np.ndarray
    gram_defect: float

    @property
    def dimension(self) -> int:
        return self.source.degree

    @property
    def grid_t(self) -> np.ndarray:
        N = self.quadrature_points
        return 2.0 * np.pi * np.arange(N) / N

    @property
    def grid_z(self) -> np.ndarray:
        return np.exp(1j * self.grid_t)

    def eval_basis(self, pts) -> np.ndarray:
        """Basis values at arbitrary points of the closed disk."""
        pts = np.asarray(pts, dtype=complex)
        return tm_values(self.source.zeros, pts.reshape(-1))

    def tag(self) -> str:
        zs = ",".join(f"{a.real:.12g}{a.imag:+.12g}i" for a in self.source.zeros)
        return f"TM[{zs}]@N={self.quadrature_points}"

    def export_csv(self) -> str:
        """Debug/plot export: rows (k, j, t_j, re e_k, im e_k)."""
        buf = io.StringIO()
        buf.write("k,j,t_j,re,im\n")
        t = self.grid_t
        for k in range(self.dimension):
            row = self.values[k]
            for j in range(self.quadrature_points):
                buf.write(f"{k},{j},{t[j]!r},{row[j].real!r},{row[j].imag!r}\n")
        return buf.getvalue()


def _auto_start(degree: int) -> int:
    n0 = max(1024, 16 * degree)
    return 1 << int(np.ceil(np.log2(n0)))


def build_basis(u: BlaschkeProduct, N: int | None = None) -> ModelBasis:
    """Build the basis, doubling the grid until the Gram defect certifies.

    Parameters
    ----------
    u : BlaschkeProduct
    N : int, optional
        Explicit grid size (power of two, at least 4 * degree).  When
        omitted, doubling starts at max(1024, 16 * degree) rounded up to
        a power of two and stops at the first N with defect < 1e-10.

    Raises
    ------
    QuadratureStall
        If the defect has not certified by N = 2**20.
    """
    n = u.degree
    if N is not None:
        N = int(N)
        if N < 4 * n or (N & (N - 1)) != 0:
            raise ValueError(f"N must be a power of two >= 4*degree, got {N}")
        candidates = [N]
    else:
        start = _auto_start(n)
        candidates = []
        m = start
        while m <= N_CAP:
            candidates.append(m)
            m *= 2

    defect = np.inf
    for m in candidates:
        defect = _gram_defect(u.zeros, m)
        if defect < GRAM_TOL or N is not None:
            t = 2.0 * np.pi * np.arange(m) / m
            values = tm_values(u.zeros, np.exp(1j * t))
            values.setflags(write=False)
            if defect >= GRAM_TOL and N is not None:
                raise QuadratureStall(
                    f"explicit N={m} leaves Gram defect {defect:.3e} >= 1e-10"
                )
            return ModelBasis(
                source=u, quadrature_points=m, values=values, gram_defect=defect
            )
    raise QuadratureStall(
        f"Gram defect {defect:.3e} still >= 1e-10 at N = 2**20; zeros too "
        "close to the circle for the uniform grid"
    )


def circle_inner_product(f: np.ndarray, g: np.ndarray) -> complex:
    """(1/N) sum f(t_j) conj(g(t_j)); exact for bandwidth < N.

    Raises
    ------
    GridMismatch
        If the two grid vectors have different lengths.
    """
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != g.shape:
        raise GridMismatch(f"grid sizes differ: {f.shape} vs {g.shape}")
    return complex(np.vdot(g, f) / f.size)


@dataclass(frozen=True)
class KernelValue:
    """Reproducing kernel at a base point: grid samples plus coordinates."""

    base_point: complex
    grid_values: np.ndarray
    coords: np.ndarray
    norm: float


def reproducing_kernel(basis: ModelBasis, lam: complex) -> KernelValue:
    """k_lam with grid values from the rational formula and coordinates
    (conj(e_1(lam)), ..., conj(e_n(lam))) from direct evaluation.

    The rational formula (1 - conj(u(lam)) u(z)) / (1 - conj(lam) z) has a
    removable singularity at z = lam when |lam| = 1; grid nodes within
    1e-8 of it are filled from the coordinate expansion instead.

    Raises
    ------
    BasePointOutside
        If |lam| > 1 + 1e-12.
    """
    lam = complex(lam)
    if abs(lam) > 1.0 + 1e-12:
        raise BasePointOutside(f"|lam| = {abs(lam):.17g} > 1")
    u = basis.source
    z = basis.grid_z
    ulam = u.eval(lam)
    coords = np.conj(basis.eval_basis([lam])[:, 0])
    denom = 1.0 - np.conj(lam) * z
    near = np.abs(denom) < 1e-8
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = (1.0 - np.conj(ulam) * u.eval(z)) / denom
    if np.any(near):
        expansion = coords @ basis.values[:, near]
        vals[near] = expansion
    norm2 = circle_inner_product(vals, vals).real
    return KernelValue(
        base_point=lam, grid_values=vals, coords=coords, norm=float(np.sqrt(norm2))
    )


def kernel_density(basis: ModelBasis, lam: complex, t) -> np.ndarray | float:
    """Normalized kernel density
    F_lam(e^it) = (1 - |lam|^2) / (1 - |u(lam)|^2) * |k_lam(e^it)|^2,
    which is nonnegative with circle mean 1.

    Raises
    ------
    BasePointOnCircle
        If |lam| >= 1 - 1e-12 (the normalizer degenerates on the circle).
    """
    lam = complex(lam)
    if abs(lam) >= 1.0 - 1e-12:
        raise BasePointOnCircle(f"|lam| = {abs(lam):.17g} is not < 1")
    u = basis.source
    t_arr = np.asarray(t, dtype=float)
    z = np.exp(1j * t_arr.reshape(-1))
    ulam = u.eval(lam)
    k = (1.0 - np.conj(ulam) * u.eval(z)) / (1.0 - np.conj(lam) * z)
    out = (1.0 - abs(lam) ** 2) / (1.0 - abs(ulam) ** 2) * np.abs(k) ** 2
    out = out.reshape(t_arr.shape)
    return out if out.shape else float(out)


def boundary_kernel_norm_check(basis: ModelBasis, zeta: complex) -> tuple[float, float]:
    """Return (||k_zeta||^2 by quadrature, |u'(zeta)| by evaluation).

    For a finite Blaschke product the kernel extends across the circle and
    the two numbers agree; their ratio is a working accuracy certificate.
    """
    zeta = complex(zeta)
    coords = np.conj(basis.eval_basis([zeta])[:, 0])
    grid_vals = coords @ basis.values
    norm2 = circle_inner_product(grid_vals, grid_vals).real
    der = basis.source.derivative(zeta)
    return float(norm2), float(abs(der))
