import numpy as np
import pytest

from privcap import CqEnsemble


def random_density(rng, d):
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    g = m @ m.conj().T
    return g / np.trace(g).real


def random_pure_density(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_unitary(rng, d):
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_ensemble(rng, d=2, nx=2, ny=2, pure=False):
    probs = rng.dirichlet(np.ones(nx * ny)).reshape(nx, ny)
    make = random_pure_density if pure else random_density
    states = np.array([[make(rng, d) for _ in range(ny)] for _ in range(nx)])
    return CqEnsemble(probs, states)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
