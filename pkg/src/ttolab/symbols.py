"""Symbols on the unit circle: trigonometric polynomials and jump symbols.

Two concrete classes cover everything the operator constructions need:

* :class:`TrigPolynomial` -- a finite Fourier sum ``sum c_n e^{i n t}``.
* :class:`JumpSymbol` -- a trig-polynomial background plus finitely many
  sawtooth steps.  The canonical step profile is

      chi(e^{i theta}) = 1 - theta / (2 pi),   0 <= theta < 2 pi,

  which jumps from 0 to 1 at the point 1 and decays linearly around the
  circle.  A jump of height h at angle theta_0 contributes
  ``h * chi(e^{i (theta - theta_0)})``, so (right - left) at the jump
  equals h and the contribution is continuous everywhere else.

Jump points evaluate to their right limit, matching the half-open
parametrization of chi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadDegree, WrongJumpSet
from ._util import cplx_to_pair, pair_to_cplx

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class TrigPolynomial:
    """Finite Fourier sum with coefficient map n -> c_n."""

    coeffs: tuple[tuple[int, complex], ...]

    @staticmethod
    def from_dict(coeffs: dict) -> "TrigPolynomial":
        items = tuple(sorted((int(n), complex(c)) for n, c in coeffs.items()))
        return TrigPolynomial(coeffs=items)

    def coeff_dict(self) -> dict[int, complex]:
        return dict(self.coeffs)

    @property
    def degree_plus(self) -> int:
        return max((n for n, _ in self.coeffs if n > 0), default=0)

    @property
    def degree_minus(self) -> int:
        return max((-n for n, _ in self.coeffs if n < 0), default=0)

    @property
    def bandwidth(self) -> int:
        return max((abs(n) for n, _ in self.coeffs), default=0)

    def is_analytic(self) -> bool:
        return all(n >= 0 for n, c in self.coeffs if c != 0)

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        w = np.exp(1j * t_arr.reshape(-1))
        out = np.zeros(w.shape, dtype=complex)
        for n, c in self.coeffs:
            out += c * w**n
        out = out.reshape(t_arr.shape)
        return out if out.shape else complex(out)

    def conjugate(self) -> "TrigPolynomial":
        return TrigPolynomial(
            coeffs=tuple(sorted((-n, np.conj(c)) for n, c in self.coeffs))
        )

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = TrigPolynomial(coeffs=((0, complex(other)),))
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        acc = dict(self.coeffs)
        for n, c in other.coeffs:
            acc[n] = acc.get(n, 0.0) + c
        return TrigPolynomial(coeffs=tuple(sorted(acc.items())))

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float, complex)):
            return NotImplemented
        return TrigPolynomial(
            coeffs=tuple((n, c * complex(scalar)) for n, c in self.coeffs)
        )

    __rmul__ = __mul__

    def to_json_dict(self) -> dict:
        return {
            "type": "trig",
            "coeffs": {str(n): cplx_to_pair(c) for n, c in self.coeffs},
        }


def trig_monomial(n: int, c: complex = 1.0) -> TrigPolynomial:
    return TrigPolynomial(coeffs=((int(n), complex(c)),))


def _chi_profile(theta: np.ndarray) -> np.ndarray:
    """chi on angles reduced to [0, 2 pi)."""
    s = np.mod(theta, TWO_PI)
    return 1.0 - s / TWO_PI


@dataclass(frozen=True)
class JumpSymbol:
    """Trig-polynomial background plus sawtooth steps at given angles.

    ``jumps`` holds (angle, height) pairs: at ``e^{i angle}`` the symbol
    steps by ``height`` (right limit minus left limit).
    """

    background: TrigPolynomial
    jumps: tuple[tuple[float, complex], ...] = ()

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        flat = t_arr.reshape(-1)
        out = np.asarray(self.background(flat), dtype=complex).reshape(flat.shape)
        for theta0, h in self.jumps:
            out = out + h * _chi_profile(flat - theta0)
        out = out.reshape(t_arr.shape)
        return out if out.shape else complex(out)

    def jump_angles(self) -> tuple[float, ...]:
        return tuple(theta for theta, h in self.jumps if h != 0)

    def right_limit(self, theta0: float) -> complex:
        return complex(self(theta0))

    def left_limit(self, theta0: float) -> complex:
        val = complex(self.background(theta0))
        for theta, h in self.jumps:
            gap = np.mod(theta0 - theta, TWO_PI)
            if gap < 1e-15:
                # approaching theta0 from below, this step contributes its
                # decayed end value 0 (chi -> 0 as the angle sweeps to 2 pi)
                continue
            val += h * _chi_profile(gap)
        return complex(val)

    def to_json_dict(self) -> dict:
        return {
            "type": "jump",
            "jumps": [
                {"angle": float(theta), "height": cplx_to_pair(h)}
                for theta, h in self.jumps
            ],
            "background": {
                str(n): cplx_to_pair(c) for n, c in self.background.coeffs
            },
        }


def chi_symbol() -> JumpSymbol:
    """The sawtooth jump symbol with step 1 at the point 1."""
    return JumpSymbol(background=TrigPolynomial(coeffs=()), jumps=((0.0, 1.0 + 0.0j),))


def eval_symbol(phi, t):
    """Pointwise value of a TrigPolynomial or JumpSymbol at angle(s) t."""
    return phi(t)


# chi Fourier coefficients, gated against the piecewise-Gauss oracle in the
# test suite before being trusted here: c_0 = 1/2, c_n = 1/(2 pi i n).
def chi_coefficient(n: int) -> complex:
    if n == 0:
        return 0.5 + 0.0j
    return 1.0 / (2.0j * np.pi * n)


def fourier_coefficients(phi, d: int) -> TrigPolynomial:
    """Coefficients c_n = (1/2 pi) int phi e^{-i n theta} dtheta, |n| <= d.

    TrigPolynomial inputs are truncated; JumpSymbol inputs combine the
    background coefficients with shifted closed-form sawtooth coefficients.

    Raises
    ------
    BadDegree
        If d < 1.
    """
    d = int(d)
    if d < 1:
        raise BadDegree(f"order must be >= 1, got {d}")
    if isinstance(phi, TrigPolynomial):
        items = {n: c for n, c in phi.coeffs if abs(n) <= d}
        return TrigPolynomial(coeffs=tuple(sorted(items.items())))
    if isinstance(phi, JumpSymbol):
        acc = {n: c for n, c in phi.background.coeffs if abs(n) <= d}
        for theta0, h in phi.jumps:
            for n in range(-d, d + 1):
                shift = np.exp(-1j * n * theta0)
                acc[n] = acc.get(n, 0.0) + h * shift * chi_coefficient(n)
        return TrigPolynomial(coeffs=tuple(sorted(acc.items())))
    raise TypeError(f"expected TrigPolynomial or JumpSymbol, got {type(phi)}")


def fourier_coefficients_by_quadrature(
    phi, d: int, points_per_segment: int = 512
) -> TrigPolynomial:
    """Same coefficients by piecewise Gauss-Legendre quadrature.

    Splits the circle at the jump angles so every segment is smooth; used
    as the independent check on the closed forms above.
    """
    d = int(d)
    if d < 1:
        raise BadDegree(f"order must be >= 1, got {d}")
    angles = []
    if isinstance(phi, JumpSymbol):
        angles = sorted(np.mod(theta, TWO_PI) for theta in phi.jump_angles())
    cuts = [0.0] + [a for a in angles if a > 0.0] + [TWO_PI]
    xg, wg = np.polynomial.legendre.leggauss(points_per_segment)
    coeffs = {}
    for lo, hi in zip(cuts, cuts[1:]):
        if hi - lo < 1e-15:
            continue
        theta = 0.5 * (hi - lo) * (xg + 1.0) + lo
        w = 0.5 * (hi - lo) * wg
        vals = np.asarray(phi(theta), dtype=complex)
        for n in range(-d, d + 1):
            contrib = np.sum(w * vals * np.exp(-1j * n * theta)) / TWO_PI
            coeffs[n] = coeffs.get(n, 0.0) + contrib
    return TrigPolynomial(coeffs=tuple(sorted(coeffs.items())))


def cesaro_mean(phi, d: int) -> TrigPolynomial:
    """Fejer mean of order d: coefficients scaled by 1 - |n|/(d+1)."""
    base = fourier_coefficients(phi, d)
    scaled = tuple(
        (n, c * (1.0 - abs(n) / (d + 1.0))) for n, c in base.coeffs if abs(n) <= d
    )
    return TrigPolynomial(coeffs=scaled)


def pc_reduction_coefficients(phi: JumpSymbol):
    """Split a single-jump-at-1 symbol as alpha * chi + beta + remainder.

    alpha is the jump height (right minus left limit at 1), beta the left
    limit there, and the remainder is continuous at 1 with value 0.

    Raises
    ------
    WrongJumpSet
        If the jump set is not exactly the point 1.
    """
    if not isinstance(phi, JumpSymbol):
        raise WrongJumpSet("reduction applies to jump symbols only")
    live = [(np.mod(theta, TWO_PI), h) for theta, h in phi.jumps if h != 0]
    if len(live) != 1 or min(live[0][0], TWO_PI - live[0][0]) > 1e-12:
        raise WrongJumpSet(
            f"jump set must be exactly {{1}}, got angles {[a for a, _ in live]}"
        )
    alpha = complex(live[0][1])
    beta = complex(phi.left_limit(0.0))
    remainder = JumpSymbol(background=phi.background + (-beta), jumps=())
    return alpha, beta, remainder


def symbol_from_json(spec: dict):
    """Materialize a symbol from its JSON description.

    Accepted forms: {"type": "chi"}, {"type": "trig", "coeffs": {...}},
    {"type": "jump", "jumps": [...], "background": {...}}.
    """
    kind = spec.get("type")
    if kind == "chi":
        return chi_symbol()
    if kind == "trig":
        return TrigPolynomial.from_dict(
            {int(n): pair_to_cplx(c) for n, c in spec["coeffs"].items()}
        )
    if kind == "jump":
        background = TrigPolynomial.from_dict(
            {int(n): pair_to_cplx(c) for n, c in spec.get("background", {}).items()}
        )
        jumps = tuple(
            (float(j["angle"]), pair_to_cplx(j["height"])) for j in spec.get("jumps", [])
        )
        return JumpSymbol(background=background, jumps=jumps)
    raise ValueError(f"unknown symbol type {kind!r}")
