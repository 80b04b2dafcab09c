"""Finite Blaschke products and boundary-accumulating truncation families.

A finite Blaschke product is the inner function

    u(z) = phase * prod_j (z - a_j) / (1 - conj(a_j) z),      |a_j| < 1,

with the zeros kept in the order supplied by the caller.  The ordering is
data, not a normalization artifact: it fixes the orthonormal basis of the
model space downstream, and the prefix structure of nested families depends
on it.

A :class:`TruncationFamily` is a nested sequence of such products whose
zeros march geometrically toward a boundary point xi; it is the finite
stand-in for an inner function whose zero set accumulates on the circle.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BadPhase, BadPoint, BadRate, EmptyProduct, PoleHit, ZeroOutsideDisk
from ._util import cplx_to_pair, pair_to_cplx

# Zeros at least this far inside the circle are accepted; closer ones are
# rejected outright (projection would silently change the operator).
BOUNDARY_GUARD = 1e-12
# Above this modulus the quadrature engine degrades; warn but proceed.
CONDITIONING_WARN = 1e-6

POLE_GUARD = 1e-13


class ConditioningWarning(UserWarning):
    """Zeros close enough to the circle to strain the quadrature engine."""


@dataclass(frozen=True)
class BlaschkeProduct:
    """A finite Blaschke product: ordered zeros plus a unimodular phase.

    Parameters
    ----------
    zeros : tuple of complex
        Zeros inside the open unit disk; repetition encodes multiplicity.
    phase : complex
        Unimodular constant multiplying the product.
    """

    zeros: tuple[complex, ...]
    phase: complex = 1.0 + 0.0j

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        """Evaluate u at a scalar or array of points (poles unguarded)."""
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, complex(self.phase), dtype=complex)
        for a in self.zeros:
            out = out * (z - a) / (1.0 - np.conj(a) * z)
        return out if out.shape else complex(out)

    def derivative(self, z):
        """u'(z) by the product rule, with prefix/suffix factor products.

        Correct also at the zeros of u, where the naive u * sum(b'/b)
        form would divide by zero.
        """
        z = np.asarray(z, dtype=complex)
        flat = z.reshape(-1)
        zs = np.asarray(self.zeros, dtype=complex)
        n = len(zs)
        denom = 1.0 - np.conj(zs)[:, None] * flat[None, :]
        factors = (flat[None, :] - zs[:, None]) / denom
        dfactors = (1.0 - np.abs(zs)[:, None] ** 2) / denom**2
        prefix = np.ones_like(factors)
        for k in range(1, n):
            prefix[k] = prefix[k - 1] * factors[k - 1]
        suffix = np.ones_like(factors)
        for k in range(n - 2, -1, -1):
            suffix[k] = suffix[k + 1] * factors[k + 1]
        der = complex(self.phase) * np.sum(prefix * dfactors * suffix, axis=0)
        der = der.reshape(z.shape)
        return der if der.shape else complex(der)

    def poles(self) -> np.ndarray:
        zs = np.asarray(self.zeros, dtype=complex)
        nonzero = zs[np.abs(zs) > 0]
        return 1.0 / np.conj(nonzero)

    def to_json_dict(self) -> dict:
        return {
            "zeros": [cplx_to_pair(a) for a in self.zeros],
            "phase": cplx_to_pair(self.phase),
        }

    @staticmethod
    def from_json_dict(data: dict) -> "BlaschkeProduct":
        return make_blaschke(
            [pair_to_cplx(p) for p in data["zeros"]],
            pair_to_cplx(data.get("phase", [1.0, 0.0])),
        )


def make_blaschke(zeros, phase: complex = 1.0 + 0.0j) -> BlaschkeProduct:
    """Validate and build a finite Blaschke product.

    Raises
    ------
    EmptyProduct
        If no zeros are given.
    ZeroOutsideDisk
        If any zero has modulus >= 1 - 1e-12.
    BadPhase
        If the phase is not unimodular to 1e-12.
    """
    zeros = tuple(complex(a) for a in zeros)
    if len(zeros) == 0:
        raise EmptyProduct("a Blaschke product needs at least one zero")
    moduli = np.abs(np.asarray(zeros, dtype=complex))
    if np.any(moduli >= 1.0 - BOUNDARY_GUARD):
        worst = zeros[int(np.argmax(moduli))]
        raise ZeroOutsideDisk(
            f"zero {worst} has modulus {abs(worst):.17g} >= 1 - 1e-12"
        )
    phase = complex(phase)
    if abs(abs(phase) - 1.0) > 1e-12:
        raise BadPhase(f"|phase| = {abs(phase):.17g} is not 1 to 1e-12")
    if np.any(moduli > 1.0 - CONDITIONING_WARN):
        warnings.warn(
            "zeros within 1e-6 of the unit circle: quadrature may need very "
            "large grids",
            ConditioningWarning,
            stacklevel=2,
        )
    return BlaschkeProduct(zeros=zeros, phase=phase)


def eval_inner(u: BlaschkeProduct, z) -> complex:
    """Evaluate u at z, guarding against pole hits.

    Raises
    ------
    PoleHit
        If |z * conj(a_j) - 1| < 1e-13 for some zero a_j.
    """
    z_arr = np.asarray(z, dtype=complex)
    zs = np.asarray(u.zeros, dtype=complex)
    gaps = np.abs(z_arr[..., None] * np.conj(zs) - 1.0)
    if np.any(gaps < POLE_GUARD):
        raise PoleHit(f"evaluation point {z} within 1e-13 of a pole of u")
    return u.eval(z)


@dataclass(frozen=True)
class TruncationFamily:
    """Nested Blaschke products with zeros (1 - rate**j) * xi, j = 1..degree.

    Member k has ``member_degrees[k]`` zeros; smaller members' zero lists
    are prefixes of larger ones, so their model spaces nest.
    """

    accumulation_point: complex
    rate: float
    member_degrees: tuple[int, ...]
    phase: complex = 1.0 + 0.0j

    def zeros_for_degree(self, degree: int) -> tuple[complex, ...]:
        xi = complex(self.accumulation_point)
        return tuple((1.0 - self.rate**j) * xi for j in range(1, degree + 1))

    def member(self, index: int) -> BlaschkeProduct:
        """Materialize member `index` (may raise ZeroOutsideDisk for zeros
        driven inside the boundary guard by a small rate)."""
        degree = self.member_degrees[index]
        return make_blaschke(self.zeros_for_degree(degree), self.phase)

    def members(self):
        for i in range(len(self.member_degrees)):
            yield self.member(i)

    def to_json_dict(self) -> dict:
        return {
            "xi": cplx_to_pair(self.accumulation_point),
            "rate": self.rate,
            "degrees": list(self.member_degrees),
            "phase": cplx_to_pair(self.phase),
        }

    @staticmethod
    def from_json_dict(data: dict) -> "TruncationFamily":
        return accumulation_family(
            pair_to_cplx(data["xi"]),
            float(data["rate"]),
            [int(d) for d in data["degrees"]],
            phase=pair_to_cplx(data.get("phase", [1.0, 0.0])),
        )


def accumulation_family(
    xi: complex, rate: float, degrees, phase: complex = 1.0 + 0.0j
) -> TruncationFamily:
    """Build a truncation family accumulating at the circle point xi.

    Raises
    ------
    BadRate
        If rate is outside (0, 1).
    BadPoint
        If xi is not on the unit circle to 1e-12.
    """
    rate = float(rate)
    if not 0.0 < rate < 1.0:
        raise BadRate(f"rate {rate} outside (0, 1)")
    xi = complex(xi)
    if abs(abs(xi) - 1.0) > 1e-12:
        raise BadPoint(f"|xi| = {abs(xi):.17g} is not 1 to 1e-12")
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) == 0 or any(d <= 0 for d in degrees):
        raise ValueError("degrees must be positive integers")
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise ValueError("degrees must be strictly increasing")
    if abs(abs(complex(phase)) - 1.0) > 1e-12:
        raise BadPhase(f"|phase| = {abs(complex(phase)):.17g} is not 1 to 1e-12")
    return TruncationFamily(
        accumulation_point=xi, rate=rate, member_degrees=degrees, phase=complex(phase)
    )


def inner_spectrum(obj) -> set[complex]:
    """Points of the closed disk where the inner function degenerates.

    For a finite Blaschke product this is just the zero set (its closure
    adds nothing).  For a truncation family it is the union of all member
    zeros together with the accumulation point, which is the only point
    of the set on the unit circle.
    """
    if isinstance(obj, BlaschkeProduct):
        return set(obj.zeros)
    if isinstance(obj, TruncationFamily):
        pts = set(obj.zeros_for_degree(max(obj.member_degrees)))
        pts.add(complex(obj.accumulation_point))
        return pts
    raise TypeError(f"expected BlaschkeProduct or TruncationFamily, got {type(obj)}")
