import numpy as np
import pytest

from ttolab import build_basis, make_blaschke


def random_zeros(rng, degree, max_modulus=0.9, min_separation=0.0):
    """Zeros uniform in angle, modulus in [0, max_modulus], optionally
    kept pairwise separated (for eigenvalue-matching tests)."""
    zeros = []
    attempts = 0
    while len(zeros) < degree:
        attempts += 1
        if attempts > 10000:
            raise RuntimeError("could not draw separated zeros")
        z = rng.uniform(0.0, max_modulus) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        if min_separation and any(abs(z - w) < min_separation for w in zeros):
            continue
        zeros.append(complex(z))
    return zeros


def random_product(rng, degree, max_modulus=0.9, min_separation=0.0, random_phase=True):
    phase = np.exp(1j * rng.uniform(0, 2 * np.pi)) if random_phase else 1.0
    return make_blaschke(
        random_zeros(rng, degree, max_modulus, min_separation), phase
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


@pytest.fixture
def basis_z3():
    return build_basis(make_blaschke([0.0, 0.0, 0.0]))


@pytest.fixture
def basis_mixed():
    return build_basis(make_blaschke([0.5, -0.3j, 0.2 + 0.4j, -0.55, 0.1 - 0.2j]))
