"""Classical-quantum ensembles, the region quantities, and the weighted
trade-off objectives with their ensemble-search maximizers.

An ensemble assigns a joint probability p(x, y) and a channel-input
density matrix rho_{x,y} to each pair of classical indices.  Sending
every branch through the channel's isometric extension yields the
conditional output (Bob) and environment (Eve) states; all entropic
quantities are evaluated from those.  Because X and Y are classical,
conditional entropies are probability-weighted sums of branch entropies.

The searches are deterministic given the configuration seed: restart
seeds are pre-assigned per restart index from one xorshift64* stream,
so growing the restart count never changes earlier restarts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, NamedTuple

import numpy as np

from .channels import KrausChannel, warn_if_not_antidegradable
from .entropy import entropy_from_eigenvalues
from .linalg import tensor_product
from .search import XorShift64Star, coordinate_ascent, derive_seeds

PROB_FLOOR = 1e-15

_PAULI = (
    np.eye(2, dtype=complex),
    np.diag([1.0, -1.0]).astype(complex),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
)


@dataclass(frozen=True)
class TradeoffWeights:
    """Non-negative weights (lam, mu) of the trade-off objective."""

    lam: float
    mu: float

    def __post_init__(self):
        if self.lam < 0 or self.mu < 0:
            raise ValueError(f"weights must be non-negative, got ({self.lam}, {self.mu})")


@dataclass(frozen=True)
class SearchConfig:
    """Ensemble-search configuration: {seed, restarts, iters, nx, ny}.

    ``iters`` is the per-restart refinement budget in coordinate probes
    (each probe costs up to two objective evaluations).  ``nx``/``ny``
    cap the classical alphabet sizes; None means dim_in**2.
    """

    seed: int = 0
    restarts: int = 50
    iters: int = 200
    nx: int | None = None
    ny: int | None = None


@dataclass(frozen=True)
class CqEnsemble:
    """Joint distribution p(x, y) with channel-input states rho_{x,y}."""

    probs: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        states = np.array(self.states, dtype=complex)
        if probs.ndim != 2:
            raise ValueError("probs must be a 2-D array over (x, y)")
        nx, ny = probs.shape
        if states.ndim != 4 or states.shape[:2] != (nx, ny) or states.shape[2] != states.shape[3]:
            raise ValueError(f"states shape {states.shape} inconsistent with probs {probs.shape}")
        if probs.min() < -1e-12:
            raise ValueError(f"negative probability {probs.min():.3e}")
        if abs(probs.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {probs.sum()}, expected 1")
        flat = states.reshape(-1, states.shape[-1], states.shape[-1])
        herm = float(np.abs(flat - flat.conj().transpose(0, 2, 1)).max())
        if herm > 1e-8:
            raise ValueError(f"a conditional state deviates from Hermiticity by {herm:.3e}")
        traces = np.einsum("nii->n", flat).real
        if np.abs(traces - 1.0).max() > 1e-8:
            raise ValueError("a conditional state does not have unit trace")
        if float(np.linalg.eigvalsh(flat).min()) < -1e-8:
            raise ValueError("a conditional state has a negative eigenvalue")
        probs.setflags(write=False)
        states.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "states", states)

    @property
    def nx(self) -> int:
        return self.probs.shape[0]

    @property
    def ny(self) -> int:
        return self.probs.shape[1]

    @property
    def dim(self) -> int:
        return self.states.shape[-1]


@dataclass(frozen=True)
class CqEvaluation:
    """All conditional/averaged output and environment states of an ensemble
    through a channel, together with the entropies used by the region bounds.

    Conditional states rho_b_x / rho_e_x are normalized; rows with
    p(x) = 0 hold maximally mixed placeholders and carry zero weight.
    """

    probs: np.ndarray
    rho_b_xy: np.ndarray
    rho_e_xy: np.ndarray
    rho_b_x: np.ndarray
    rho_e_x: np.ndarray
    rho_b: np.ndarray
    rho_e: np.ndarray
    h_b: float
    h_b_x: float
    h_b_xy: float
    h_e_x: float
    h_e_xy: float
    h_e: float = field(default=0.0)


@dataclass(frozen=True)
class RegionQuantities:
    """Right-hand sides of the three region inequalities at one ensemble."""

    rp: float
    ps: float
    rps: float


class _EntropyBundle(NamedTuple):
    h_b: float
    h_e: float
    h_b_x: float
    h_e_x: float
    h_b_xy: float
    h_e_xy: float
    h_in_x: float


def _eigvals_psd(batch: np.ndarray) -> np.ndarray:
    """Eigenvalues of a stack of small Hermitian PSD matrices (2x2 analytic)."""
    d = batch.shape[-1]
    if d == 2:
        a = batch[..., 0, 0].real
        c = batch[..., 1, 1].real
        half = 0.5 * (a + c)
        r = np.sqrt(0.25 * (a - c) ** 2 + np.abs(batch[..., 0, 1]) ** 2)
        return np.stack([half - r, half + r], axis=-1)
    return np.linalg.eigvalsh(batch)


def _entropies_psd(batch: np.ndarray) -> np.ndarray:
    return entropy_from_eigenvalues(np.clip(_eigvals_psd(batch), 0.0, None))


def _conditional_parts(probs: np.ndarray, branch: np.ndarray):
    """Average states over y per x, returning (p_x, normalized states, weighted entropy)."""
    nx, ny = probs.shape
    d = branch.shape[-1]
    p_x = probs.sum(axis=1)
    summed = np.einsum("xy,xyij->xij", probs, branch.reshape(nx, ny, d, d))
    safe = p_x > PROB_FLOOR
    denom = np.where(safe, p_x, 1.0)[:, None, None]
    cond = np.where(safe[:, None, None], summed / denom, (np.eye(d) / d)[None])
    h = float(np.dot(np.where(safe, p_x, 0.0), _entropies_psd(cond)))
    return p_x, cond, h


def _bundle(kstack: np.ndarray, probs: np.ndarray, states_flat: np.ndarray,
            want_states: bool = False):
    """Entropy bundle of an ensemble; optionally also the intermediate states."""
    nx, ny = probs.shape
    p_flat = probs.reshape(-1)
    tmp = kstack[:, None] @ states_flat[None]
    rho_b = np.einsum("knio,kjo->nij", tmp, kstack.conj())
    rho_e = np.einsum("knio,lio->nkl", tmp, kstack.conj())
    h_b_branch = _entropies_psd(rho_b)
    h_e_branch = _entropies_psd(rho_e)
    h_b_xy = float(np.dot(p_flat, h_b_branch))
    h_e_xy = float(np.dot(p_flat, h_e_branch))
    h_in_x = float(np.dot(p_flat, _entropies_psd(states_flat)))
    _, cond_b, h_b_x = _conditional_parts(probs, rho_b)
    _, cond_e, h_e_x = _conditional_parts(probs, rho_e)
    rho_b_bar = np.tensordot(p_flat, rho_b, axes=1)
    rho_e_bar = np.tensordot(p_flat, rho_e, axes=1)
    h_b = float(_entropies_psd(rho_b_bar[None])[0])
    h_e = float(_entropies_psd(rho_e_bar[None])[0])
    bundle = _EntropyBundle(h_b, h_e, h_b_x, h_e_x, h_b_xy, h_e_xy, h_in_x)
    if not want_states:
        return bundle
    d_b = rho_b.shape[-1]
    d_e = rho_e.shape[-1]
    parts = (
        rho_b.reshape(nx, ny, d_b, d_b),
        rho_e.reshape(nx, ny, d_e, d_e),
        cond_b,
        cond_e,
        rho_b_bar,
        rho_e_bar,
    )
    return bundle, parts


def evaluate_ensemble(ch: KrausChannel, ens: CqEnsemble) -> CqEvaluation:
    """Push every ensemble branch through the channel and collect states/entropies."""
    if ens.dim != ch.dim_in:
        raise ValueError(f"ensemble states have dim {ens.dim}, channel expects {ch.dim_in}")
    flat = ens.states.reshape(-1, ens.dim, ens.dim)
    bundle, parts = _bundle(ch.kraus_stack, ens.probs, flat, want_states=True)
    rho_b_xy, rho_e_xy, cond_b, cond_e, rho_b, rho_e = parts
    return CqEvaluation(
        probs=ens.probs,
        rho_b_xy=rho_b_xy,
        rho_e_xy=rho_e_xy,
        rho_b_x=cond_b,
        rho_e_x=cond_e,
        rho_b=rho_b,
        rho_e=rho_e,
        h_b=bundle.h_b,
        h_b_x=bundle.h_b_x,
        h_b_xy=bundle.h_b_xy,
        h_e_x=bundle.h_e_x,
        h_e_xy=bundle.h_e_xy,
        h_e=bundle.h_e,
    )


def region_quantities(ev: CqEvaluation) -> RegionQuantities:
    """rp = I(YX;B), ps = I(Y;B|X) - I(Y;E|X), rps = I(YX;B) - I(Y;E|X)."""
    i_y_e_x = ev.h_e_x - ev.h_e_xy
    rp = ev.h_b - ev.h_b_xy
    ps = (ev.h_b_x - ev.h_b_xy) - i_y_e_x
    return RegionQuantities(rp=rp, ps=ps, rps=rp - i_y_e_x)


def objective_p(ev: CqEvaluation, w: TradeoffWeights) -> float:
    """Weighted trade-off objective rp + lam*ps + mu*rps."""
    q = region_quantities(ev)
    return q.rp + w.lam * q.ps + w.mu * q.rps


def pauli_symmetrize(ens: CqEnsemble) -> CqEnsemble:
    """Extend the X register with a uniform Pauli index j and conjugate each
    branch state by that Pauli (qubit inputs only)."""
    if ens.dim != 2:
        raise ValueError("Pauli symmetrization is defined for qubit inputs")
    nx, ny = ens.probs.shape
    probs = np.repeat(ens.probs / 4.0, 4, axis=0)
    states = np.empty((4 * nx, ny, 2, 2), dtype=complex)
    for x in range(nx):
        for j, sigma in enumerate(_PAULI):
            states[4 * x + j] = sigma @ ens.states[x] @ sigma.conj().T
    return CqEnsemble(probs, states)


def tensor_ensembles(a: CqEnsemble, b: CqEnsemble) -> CqEnsemble:
    """Product ensemble for a product channel; indices of ``a`` are most significant."""
    probs = np.einsum("xy,uv->xuyv", a.probs, b.probs).reshape(a.nx * b.nx, a.ny * b.ny)
    d = a.dim * b.dim
    states = np.empty((a.nx * b.nx, a.ny * b.ny, d, d), dtype=complex)
    for xa in range(a.nx):
        for xb in range(b.nx):
            for ya in range(a.ny):
                for yb in range(b.ny):
                    states[xa * b.nx + xb, ya * b.ny + yb] = tensor_product(
                        a.states[xa, ya], b.states[xb, yb]
                    )
    return CqEnsemble(probs, states)


# ---------------------------------------------------------------------------
# Ensemble parameterization and the restart engine
# ---------------------------------------------------------------------------


class _ParamSpace:
    """Maps a flat real vector to (probs, states).

    Probabilities are normalized squares of the first nx*ny entries.
    Mixed states come from purifications on a doubled space: the 2d**2
    remaining reals per branch form a complex d x d matrix M and the
    state is M M† / Tr(M M†).  Pure states use a complex d-vector the
    same way.
    """

    def __init__(self, nx: int, ny: int, d: int, mixed: bool):
        self.nx = nx
        self.ny = ny
        self.d = d
        self.mixed = mixed
        self.nb = nx * ny
        self.spp = 2 * d * d if mixed else 2 * d
        self.size = self.nb + self.nb * self.spp

    def decode(self, theta: np.ndarray):
        nb, d = self.nb, self.d
        q = theta[:nb]
        w = q * q
        tot = w.sum()
        probs = (w / tot if tot > PROB_FLOOR else np.full(nb, 1.0 / nb)).reshape(self.nx, self.ny)
        s = theta[nb:].reshape(nb, self.spp)
        if self.mixed:
            m = (s[:, : d * d] + 1j * s[:, d * d :]).reshape(nb, d, d)
            g = m @ m.conj().transpose(0, 2, 1)
            tr = np.einsum("nii->n", g).real
            safe = tr > PROB_FLOOR
            g = np.where(safe[:, None, None], g / np.where(safe, tr, 1.0)[:, None, None],
                         (np.eye(d) / d)[None])
        else:
            v = s[:, :d] + 1j * s[:, d:]
            n2 = np.einsum("ni,ni->n", v, v.conj()).real
            safe = n2 > PROB_FLOOR
            v = np.where(safe[:, None], v / np.sqrt(np.where(safe, n2, 1.0))[:, None],
                         np.eye(d, dtype=complex)[0][None])
            g = np.einsum("ni,nj->nij", v, v.conj())
        return probs, g

    def encode(self, probs: np.ndarray, states: np.ndarray) -> np.ndarray:
        q = np.sqrt(np.clip(probs.reshape(-1), 0.0, None))
        flat = states.reshape(self.nb, self.d, self.d)
        blocks = []
        if self.mixed:
            for rho in flat:
                w, v = np.linalg.eigh((rho + rho.conj().T) / 2)
                m = v * np.sqrt(np.clip(w, 0.0, None))
                blocks.append(np.concatenate([m.real.reshape(-1), m.imag.reshape(-1)]))
        else:
            for rho in flat:
                w, v = np.linalg.eigh((rho + rho.conj().T) / 2)
                vec = v[:, -1] * np.sqrt(max(w[-1], 0.0))
                blocks.append(np.concatenate([vec.real, vec.imag]))
        return np.concatenate([q] + blocks)


def _basis_state(d: int, index: int) -> np.ndarray:
    rho = np.zeros((d, d), dtype=complex)
    rho[index % d, index % d] = 1.0
    return rho


def _fourier_state(d: int, index: int) -> np.ndarray:
    v = np.exp(2j * np.pi * (index % d) * np.arange(d) / d) / np.sqrt(d)
    return np.outer(v, v.conj())


def _diag_state(d: int, anchor: int, t: float) -> np.ndarray:
    """Interpolation between a basis state and the maximally mixed state."""
    w = np.full(d, t / d)
    w[anchor % d] += 1.0 - t
    return np.diag(w).astype(complex)


def _canonical_starts(d: int, nx_max: int, ny_max: int, mixed: bool):
    """Deterministic starting ensembles tried before any random restart."""
    starts = []
    nx0, ny0 = min(d, nx_max), min(d, ny_max)

    def uniform(nx, ny):
        return np.full((nx, ny), 1.0 / (nx * ny))

    by_y = np.array([[_basis_state(d, y) for y in range(ny0)] for _ in range(nx0)])
    starts.append((uniform(nx0, ny0), by_y))
    by_x = np.array([[_basis_state(d, x)] for x in range(min(d, nx_max))])
    starts.append((uniform(min(d, nx_max), 1), by_x))
    if mixed:
        mm = np.array([[np.eye(d, dtype=complex) / d for _ in range(ny0)] for _ in range(nx0)])
        starts.append((uniform(nx0, ny0), mm))
        nxd = min(2, nx_max)
        spread = np.empty((nxd, ny0, d, d), dtype=complex)
        for x in range(nxd):
            for y in range(ny0):
                t = (y + 1.0) / (ny0 + 1.0)
                spread[x, y] = _diag_state(d, 0 if x == 0 else d - 1, t)
        starts.append((uniform(nxd, ny0), spread))
    else:
        fb = np.array([[_fourier_state(d, x)] for x in range(min(d, nx_max))])
        starts.append((uniform(min(d, nx_max), 1), fb))
    return starts


def _random_start(rng: XorShift64Star, d: int, nx: int, ny: int, space_mixed: bool):
    nb = nx * ny
    probs = 0.5 + rng.uniforms(nb)
    probs = (probs / probs.sum()).reshape(nx, ny)
    spp = 2 * d * d if space_mixed else 2 * d
    raw = 2.0 * rng.uniforms(nb * spp) - 1.0
    space = _ParamSpace(nx, ny, d, space_mixed)
    theta = np.concatenate([np.sqrt(probs.reshape(-1)), raw])
    return space.decode(theta)


def _run_search(ch: KrausChannel, combine: Callable[[_EntropyBundle], float],
                cfg: SearchConfig, *, mixed: bool = True, ny_forced: int | None = None,
                extra_starts=()):
    """Random-restart coordinate search over ensembles; deterministic by seed.

    Returns (best value, best probs, best states, diagnostics dict).
    """
    d = ch.dim_in
    nx_max = cfg.nx if cfg.nx else d * d
    ny_max = ny_forced if ny_forced else (cfg.ny if cfg.ny else d * d)
    if nx_max < 1 or ny_max < 1 or cfg.restarts < 1 or cfg.iters < 1:
        raise ValueError("search configuration values must be positive")
    kstack = ch.kraus_stack
    budget = 2 * cfg.iters
    seeds = derive_seeds(cfg.seed, cfg.restarts)
    canonical = _canonical_starts(d, nx_max, ny_max, mixed)

    best_val = -math.inf
    best_probs = None
    best_states = None
    diag = {"budget_exhausted": False}

    def refine(probs0, states0):
        nx, ny = probs0.shape
        space = _ParamSpace(nx, ny, d, mixed)
        flat0 = np.asarray(states0, dtype=complex).reshape(nx * ny, d, d)

        def f(theta):
            probs, states = space.decode(theta)
            return combine(_bundle(kstack, probs, states))

        theta0 = space.encode(np.asarray(probs0, dtype=float), flat0)
        v0 = f(theta0)
        budget_a = max(2 * space.nb, int(0.4 * budget))
        budget_a = min(budget_a, budget - 2)
        v1, th1, used = coordinate_ascent(
            f, theta0, v0, coords=range(space.nb), step=0.35, budget=budget_a
        )
        remaining = budget - used
        v2, th2, used2 = coordinate_ascent(f, th1, v1, step=0.3, budget=remaining // 2)
        v3, th3, used3 = coordinate_ascent(
            f, th2, v2, step=0.3, budget=remaining - used2
        )
        # still improving in the final stretch with the budget used up:
        # the refinement likely had not converged
        under_converged = used2 + used3 >= remaining and v3 > v2 + 1e-12
        probs, states = space.decode(th3)
        return v3, probs, states, under_converged

    start_list = [(np.asarray(p, dtype=float), np.asarray(s, dtype=complex))
                  for p, s in extra_starts]
    for r in range(cfg.restarts):
        rng = XorShift64Star(seeds[r])
        if r < len(canonical):
            start_list.append(canonical[r])
        elif r == len(canonical):
            start_list.append(_random_start(rng, d, nx_max, ny_max, mixed))
        else:
            nx = rng.randint(1, nx_max)
            ny = rng.randint(1, ny_max)
            start_list.append(_random_start(rng, d, nx, ny, mixed))

    for probs0, states0 in start_list:
        v, probs, states, under_converged = refine(probs0, states0)
        if v > best_val:
            best_val, best_probs, best_states = v, probs, states
            diag["budget_exhausted"] = under_converged
    return best_val, best_probs, best_states, diag


# ---------------------------------------------------------------------------
# Public maximizers
# ---------------------------------------------------------------------------


def maximize_p(ch: KrausChannel, w: TradeoffWeights, cfg: SearchConfig | None = None,
               starts=(), diagnostics: dict | None = None):
    """Maximize rp + lam*ps + mu*rps over finite ensembles of mixed inputs.

    Returns (best value in bits, achieving CqEnsemble).  ``starts`` may
    hold CqEnsembles used as additional warm starts before the seeded
    restarts.
    """
    cfg = cfg or SearchConfig()

    def combine(b: _EntropyBundle) -> float:
        i_y_e_x = b.h_e_x - b.h_e_xy
        rp = b.h_b - b.h_b_xy
        ps = (b.h_b_x - b.h_b_xy) - i_y_e_x
        return rp + w.lam * ps + w.mu * (rp - i_y_e_x)

    extra = [(e.probs, e.states) for e in starts]
    val, probs, states, diag = _run_search(ch, combine, cfg, mixed=True, extra_starts=extra)
    if diagnostics is not None:
        diagnostics.update(diag)
    nx, ny = probs.shape
    ens = CqEnsemble(probs, states.reshape(nx, ny, ch.dim_in, ch.dim_in))
    return val, ens


def holevo_capacity(ch: KrausChannel, cfg: SearchConfig | None = None) -> float:
    """max I(X;B) over finite ensembles of pure input states."""
    cfg = cfg or SearchConfig()
    val, _, _, _ = _run_search(
        ch, lambda b: b.h_b - b.h_b_x, cfg, mixed=False, ny_forced=1
    )
    return val


def private_information(ch: KrausChannel, cfg: SearchConfig | None = None) -> float:
    """max I(X;B) - I(X;E) over finite ensembles of mixed input states."""
    cfg = cfg or SearchConfig()
    val, _, _, _ = _run_search(
        ch, lambda b: (b.h_b - b.h_b_x) - (b.h_e - b.h_e_x), cfg, mixed=True, ny_forced=1
    )
    return val


def cq_tradeoff_f(ch: KrausChannel, mu: float, cfg: SearchConfig | None = None) -> float:
    """Classical-quantum trade-off value f_mu = max I(X;B) + (1+mu)[H(B|X) - H(E|X)].

    Only the reduced input state of each branch matters, so the search
    runs directly over mixed conditional inputs.
    """
    if mu < 0:
        raise ValueError("mu must be non-negative")
    cfg = cfg or SearchConfig()
    val, _, _, _ = _run_search(
        ch,
        lambda b: (b.h_b - b.h_b_x) + (1.0 + mu) * (b.h_b_x - b.h_e_x),
        cfg, mixed=True, ny_forced=1,
    )
    return val


def public_private_tradeoff(ch: KrausChannel, mu: float,
                            cfg: SearchConfig | None = None) -> float:
    """Public-private trade-off value P_mu = max I(X;B) + (1+mu)[I(Y;B|X) - I(Y;E|X)]."""
    if mu < 0:
        raise ValueError("mu must be non-negative")
    cfg = cfg or SearchConfig()

    def combine(b: _EntropyBundle) -> float:
        ps = (b.h_b_x - b.h_b_xy) - (b.h_e_x - b.h_e_xy)
        return (b.h_b - b.h_b_x) + (1.0 + mu) * ps

    val, _, _, _ = _run_search(ch, combine, cfg, mixed=True)
    return val


def quantum_dynamic_d(ch: KrausChannel, w: TradeoffWeights,
                      cfg: SearchConfig | None = None) -> float:
    """Quantum dynamic trade-off value
    D = max I(AX;B) + lam*I(A>BX) + mu*[I(X;B) + I(A>BX)]
    over classical-quantum ensembles with pure conditional states on a
    reference-input pair.

    With phi_x purifying rho_x through the channel isometry, every term
    reduces to entropies of rho_x and its output/environment images:
    I(AX;B) = H(B) + sum_x p(x)[H(rho_x) - H(E)_x] and
    I(A>BX) = sum_x p(x)[H(B)_x - H(E)_x].
    """
    cfg = cfg or SearchConfig()

    def combine(b: _EntropyBundle) -> float:
        return (
            b.h_b + (b.h_in_x - b.h_e_x)
            + w.lam * (b.h_b_x - b.h_e_x)
            + w.mu * (b.h_b - b.h_e_x)
        )

    val, _, _, _ = _run_search(ch, combine, cfg, mixed=True, ny_forced=1)
    return val


def antidegradable_value(ch: KrausChannel, w: TradeoffWeights, holevo: float) -> float:
    """Simplified trade-off value (1+mu) * max I(X;B) for antidegradable channels.

    Warns when the channel label does not mark it antidegradable.
    """
    warn_if_not_antidegradable(ch)
    return (1.0 + w.mu) * holevo


def derived_config(cfg: SearchConfig, salt: int) -> SearchConfig:
    """A config with a deterministically derived seed (for auxiliary searches)."""
    rng = XorShift64Star(cfg.seed ^ (0xD1F3 + salt))
    return replace(cfg, seed=rng.next_u64())
