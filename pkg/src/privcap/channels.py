"""Channel constructors, isometric extensions, and joint output/environment evolution.

A channel is a list of Kraus operators A_k with sum_k A_k† A_k = I.  The
isometric extension V = sum_k A_k ⊗ |k⟩ sends the input to the joint
output/environment space with the output (Bob) as the most significant
factor; tracing out the output gives the map to the environment (Eve).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .linalg import dag, partial_trace, tensor_product

KRAUS_COMPLETENESS_TOL = 1e-9


@dataclass(frozen=True)
class KrausChannel:
    """A CPTP map given by Kraus operators, each of shape (dim_out, dim_in)."""

    dim_in: int
    dim_out: int
    kraus: tuple
    label: str = "custom"
    params: tuple = ()
    _stack: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ops = tuple(np.array(a, dtype=complex) for a in self.kraus)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        for a in ops:
            if a.shape != (self.dim_out, self.dim_in):
                raise ValueError(
                    f"Kraus operator shape {a.shape} does not match "
                    f"(dim_out, dim_in) = ({self.dim_out}, {self.dim_in})"
                )
            a.setflags(write=False)
        s = sum(dag(a) @ a for a in ops)
        deficit = float(np.abs(s - np.eye(self.dim_in)).max())
        if deficit > KRAUS_COMPLETENESS_TOL:
            raise ValueError(
                f"Kraus completeness violated: max |sum A†A - I| = {deficit:.3e}"
            )
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        stack = np.stack(ops)
        stack.setflags(write=False)
        object.__setattr__(self, "_stack", stack)

    @property
    def kraus_stack(self) -> np.ndarray:
        """All Kraus operators as one (K, dim_out, dim_in) array."""
        return self._stack

    @property
    def num_kraus(self) -> int:
        return len(self.kraus)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Channel output sum_k A_k rho A_k†."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.dim_in, self.dim_in):
            raise ValueError(f"input shape {rho.shape}, expected ({self.dim_in}, {self.dim_in})")
        tmp = self._stack @ rho
        return np.einsum("kio,kjo->ij", tmp, self._stack.conj())

    def environment_output(self, rho: np.ndarray) -> np.ndarray:
        """Complementary-channel output, entry (k, l) = Tr(A_k rho A_l†)."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.dim_in, self.dim_in):
            raise ValueError(f"input shape {rho.shape}, expected ({self.dim_in}, {self.dim_in})")
        tmp = self._stack @ rho
        return np.einsum("kio,lio->kl", tmp, self._stack.conj())


@dataclass(frozen=True)
class Isometry:
    """An isometry V : input -> output ⊗ environment with V†V = I."""

    dim_in: int
    dim_b: int
    dim_e: int
    matrix: np.ndarray

    def __post_init__(self):
        v = np.array(self.matrix, dtype=complex)
        if v.shape != (self.dim_b * self.dim_e, self.dim_in):
            raise ValueError(f"isometry shape {v.shape} inconsistent with dims")
        dev = float(np.abs(dag(v) @ v - np.eye(self.dim_in)).max())
        if dev > KRAUS_COMPLETENESS_TOL:
            raise ValueError(f"V†V deviates from identity by {dev:.3e}")
        v.setflags(write=False)
        object.__setattr__(self, "matrix", v)


class EvolveResult(NamedTuple):
    rho_b: np.ndarray
    rho_e: np.ndarray
    rho_be: np.ndarray


def make_dephasing(p: float) -> KrausChannel:
    """Qubit dephasing channel that applies Z with probability p/2.

    Equivalent to keeping the input with probability 1-p and completely
    dephasing it in the computational basis with probability p; p=1 is
    the completely dephasing channel.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"dephasing probability {p} outside [0, 1]")
    eye = np.eye(2, dtype=complex)
    z = np.diag([1.0, -1.0]).astype(complex)
    kraus = [np.sqrt(1.0 - p / 2.0) * eye, np.sqrt(p / 2.0) * z]
    return KrausChannel(2, 2, tuple(kraus), label="dephasing", params=(p,))


def make_erasure(eps: float) -> KrausChannel:
    """Qubit erasure channel: passes the input with probability 1-eps,
    otherwise outputs the flag |e⟩ (basis index 2).

    The Kraus order is chosen so that the complementary channel equals
    the eps <-> 1-eps swapped erasure channel in the same basis
    convention (environment flag also at index 2).
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"erasure probability {eps} outside [0, 1]")
    embed = np.zeros((3, 2), dtype=complex)
    embed[0, 0] = 1.0
    embed[1, 1] = 1.0
    flag0 = np.zeros((3, 2), dtype=complex)
    flag0[2, 0] = 1.0
    flag1 = np.zeros((3, 2), dtype=complex)
    flag1[2, 1] = 1.0
    kraus = (np.sqrt(eps) * flag0, np.sqrt(eps) * flag1, np.sqrt(1.0 - eps) * embed)
    return KrausChannel(2, 3, kraus, label="erasure", params=(eps,))


def make_cloning(n: int) -> KrausChannel:
    """1->N universal cloning channel in the (N+1)-level symmetric-subspace basis.

    Kraus operator i (0 <= i < N) is
    (1/sqrt(D_N)) (sqrt(N-i) |i⟩⟨0| + sqrt(i+1) |i+1⟩⟨1|) with D_N = N(N+1)/2.
    N=1 reduces to the identity qubit channel.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"cloning N must be a positive integer, got {n}")
    delta = n * (n + 1) / 2.0
    kraus = []
    for i in range(n):
        a = np.zeros((n + 1, 2), dtype=complex)
        a[i, 0] = np.sqrt(n - i)
        a[i + 1, 1] = np.sqrt(i + 1)
        kraus.append(a / np.sqrt(delta))
    return KrausChannel(2, n + 1, tuple(kraus), label="cloning", params=(float(n),))


def make_identity(dim: int = 2) -> KrausChannel:
    """Noiseless channel on ``dim`` levels (single Kraus operator I)."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    return KrausChannel(dim, dim, (np.eye(dim, dtype=complex),), label="custom")


def isometric_extension(ch: KrausChannel) -> Isometry:
    """V = sum_k A_k ⊗ |k⟩ with environment dimension = number of Kraus operators."""
    k = ch.num_kraus
    v = np.zeros((ch.dim_out * k, ch.dim_in), dtype=complex)
    for idx, a in enumerate(ch.kraus):
        e = np.zeros((k, 1), dtype=complex)
        e[idx, 0] = 1.0
        v += tensor_product(a, e)
    return Isometry(ch.dim_in, ch.dim_out, k, v)


def evolve(ch: KrausChannel, rho_in: np.ndarray) -> EvolveResult:
    """Joint evolution: rho_BE = V rho V†, with the reduced output and environment states."""
    rho_in = np.asarray(rho_in, dtype=complex)
    if rho_in.shape != (ch.dim_in, ch.dim_in):
        raise ValueError(f"input shape {rho_in.shape}, expected ({ch.dim_in}, {ch.dim_in})")
    v = isometric_extension(ch).matrix
    rho_be = v @ rho_in @ dag(v)
    dims = [ch.dim_out, ch.num_kraus]
    rho_b = partial_trace(rho_be, dims, keep={0})
    rho_e = partial_trace(rho_be, dims, keep={1})
    return EvolveResult(rho_b, rho_e, rho_be)


def tensor_channels(a: KrausChannel, b: KrausChannel) -> KrausChannel:
    """Parallel use of two channels; Kraus set {A_i ⊗ B_j} with i most significant."""
    kraus = tuple(tensor_product(ai, bj) for ai in a.kraus for bj in b.kraus)
    return KrausChannel(a.dim_in * b.dim_in, a.dim_out * b.dim_out, kraus, label="custom")


def is_degradable_label(ch: KrausChannel) -> bool:
    """Trusted constructor label: dephasing and cloning always, erasure iff eps <= 1/2."""
    if ch.label in ("dephasing", "cloning"):
        return True
    if ch.label == "erasure":
        return ch.params[0] <= 0.5
    return False


def is_antidegradable_label(ch: KrausChannel) -> bool:
    """Trusted constructor label: erasure iff eps >= 1/2, completely dephasing (p=1)."""
    if ch.label == "erasure":
        return ch.params[0] >= 0.5
    if ch.label == "dephasing":
        return ch.params[0] == 1.0
    return False


def warn_if_not_antidegradable(ch: KrausChannel) -> None:
    if not is_antidegradable_label(ch):
        warnings.warn(
            f"channel labeled '{ch.label}' with params {ch.params} is not known "
            "to be antidegradable; the simplified formula may not apply",
            stacklevel=3,
        )


def load_channel(doc: dict) -> KrausChannel:
    """Build a validated channel from its JSON document.

    Schema: {"dim_in": int, "dim_out": int,
             "kraus": [[[re, im], ...] per row] per operator,
             "label": str (optional), "params": [real, ...] (optional)}.
    """
    if not isinstance(doc, dict):
        raise ValueError("channel document must be a JSON object")
    try:
        dim_in = int(doc["dim_in"])
        dim_out = int(doc["dim_out"])
        raw = doc["kraus"]
    except KeyError as exc:
        raise ValueError(f"channel document missing required field {exc}") from exc
    if dim_in <= 0 or dim_out <= 0:
        raise ValueError("channel dimensions must be positive")
    if not isinstance(raw, list) or not raw:
        raise ValueError("'kraus' must be a non-empty list of matrices")
    ops = []
    for idx, mat in enumerate(raw):
        try:
            arr = np.array(
                [[complex(entry[0], entry[1]) for entry in row] for row in mat],
                dtype=complex,
            )
        except (TypeError, IndexError, ValueError) as exc:
            raise ValueError(f"Kraus operator {idx} is not a matrix of [re, im] pairs") from exc
        if arr.shape != (dim_out, dim_in):
            raise ValueError(
                f"Kraus operator {idx} has shape {arr.shape}, expected ({dim_out}, {dim_in})"
            )
        ops.append(arr)
    label = str(doc.get("label", "custom"))
    params = tuple(float(p) for p in doc.get("params", ()))
    return KrausChannel(dim_in, dim_out, tuple(ops), label=label, params=params)


def channel_document(ch: KrausChannel) -> dict:
    """Inverse of load_channel: a JSON-serializable description of the channel."""
    return {
        "dim_in": ch.dim_in,
        "dim_out": ch.dim_out,
        "kraus": [[[[float(v.real), float(v.imag)] for v in row] for row in a] for a in ch.kraus],
        "label": ch.label,
        "params": list(ch.params),
    }
