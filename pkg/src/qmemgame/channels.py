"""Dephasing channels in operator-sum form.

Three constructions are provided:

* single-qubit phase flip, ``A0 = sqrt(1 - p/2) I`` and ``A1 = sqrt(p/2) Z``;
* the ``n``-fold product of the single-qubit channel;
* the two-qubit channel with memory ``mu``. With probability ``1 - mu`` each
  qubit is flipped independently, with probability ``mu`` both qubits get the
  same Pauli.

The single-qubit weights ``q0 = 1 - p/2`` and ``q1 = p/2`` are the ones used
in the two-qubit memory channel too, so ``mu = 0`` gives back the product
channel exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import DimensionError, as_cmatrix

I2 = np.eye(2, dtype=np.complex128)
SIGMA_Z = np.diag([1.0, -1.0]).astype(np.complex128)

MAX_PRODUCT_QUBITS = 4
COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True)
class DephasingParams:
    """One channel traversal: dephasing probability ``p`` and memory ``mu``."""

    p: float
    mu: float = 0.0

    def __post_init__(self):
        for name in ("p", "mu"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and 0.0 <= v <= 1.0):
                raise ValueError(f"{name} must be a real number in [0, 1], got {v!r}")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "mu", float(self.mu))


@dataclass(frozen=True)
class KrausSet:
    """Ordered Kraus operators of a trace-preserving channel."""

    operators: tuple

    def __post_init__(self):
        ops = tuple(as_cmatrix(k) for k in self.operators)
        if not ops:
            raise ValueError("a Kraus set needs at least one operator")
        dim = ops[0].shape[0]
        for k in ops:
            if k.shape != (dim, dim):
                raise DimensionError("Kraus operators must be square and share one dimension")
        object.__setattr__(self, "operators", ops)
        err = self.completeness_error()
        if err > COMPLETENESS_TOL:
            raise ValueError(f"Kraus operators are not complete (max |sum A^dag A - I| = {err:.3e})")

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def __len__(self):
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)

    def completeness_error(self) -> float:
        total = sum(k.conj().T @ k for k in self.operators)
        return float(np.max(np.abs(total - np.eye(self.dim))))


def _check_p(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"dephasing probability must be in [0, 1], got {p!r}")
    return float(p)


def lambda_to_p(lam: float) -> float:
    """Convert a phase-kick variance parameter to a flip probability, ``1 - exp(-lam)``."""
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam!r}")
    return -math.expm1(-lam)


def flip_weights(p: float) -> tuple[float, float]:
    """Probabilities ``(q0, q1)`` of applying ``I`` and ``Z`` to a single qubit."""
    p = _check_p(p)
    return 1.0 - p / 2.0, p / 2.0


def single_qubit_dephasing_kraus(p: float) -> KrausSet:
    q0, q1 = flip_weights(p)
    return KrausSet((math.sqrt(q0) * I2, math.sqrt(q1) * SIGMA_Z))


def n_qubit_product_kraus(p: float, n: int) -> KrausSet:
    """Independent dephasing of ``n`` qubits, ``2**n`` operators.

    Operators are ordered by the index tuple ``(k_1, ..., k_n)`` with the
    first qubit as the left tensor factor.
    """
    if n < 1:
        raise ValueError(f"need at least one qubit, got {n}")
    if n > MAX_PRODUCT_QUBITS:
        raise MemoryError(f"product channel capped at {MAX_PRODUCT_QUBITS} qubits, got {n}")
    single = single_qubit_dephasing_kraus(p).operators
    ops = []
    for idx in itertools.product(range(2), repeat=n):
        op = np.ones((1, 1), dtype=np.complex128)
        for k in idx:
            op = np.kron(op, single[k])
        ops.append(op)
    return KrausSet(tuple(ops))


def correlated_dephasing_kraus(params: DephasingParams) -> KrausSet:
    """Two-qubit dephasing with memory.

    ``A_ij = sqrt(q_i * ((1 - mu) q_j + mu [i == j])) sigma_i (x) sigma_j`` for
    ``i, j`` in ``{I, Z}``. Zero-weight operators are kept as zero matrices so
    the index ``2*i + j`` is stable.
    """
    q = flip_weights(params.p)
    paulis = (I2, SIGMA_Z)
    mu = params.mu
    ops = []
    for i in range(2):
        for j in range(2):
            w = q[i] * ((1.0 - mu) * q[j] + mu * (i == j))
            ops.append(math.sqrt(w) * np.kron(paulis[i], paulis[j]))
    return KrausSet(tuple(ops))


def apply_channel(rho, kraus: KrausSet | Sequence) -> np.ndarray:
    """Return ``sum_k A_k rho A_k^dagger``."""
    if not isinstance(kraus, KrausSet):
        kraus = KrausSet(tuple(kraus))
    rho = as_cmatrix(rho)
    if rho.shape != (kraus.dim, kraus.dim):
        raise DimensionError(f"state of shape {rho.shape} does not fit a {kraus.dim}-dim channel")
    out = np.zeros_like(rho)
    for a in kraus:
        out += a @ rho @ a.conj().T
    return out


def coherence_decay_factor(params: DephasingParams) -> float:
    """Scaling of a double-flip coherence such as ``|00><11|`` per traversal.

    Equals ``(1 - mu)(1 - p)**2 + mu``; single-flip coherences scale by
    ``1 - p`` instead.
    """
    return (1.0 - params.mu) * (1.0 - params.p) ** 2 + params.mu
