"""Brute-force Hilbert space over degree-0 configurations, with monomial operators.

Basis states are indexed in mixed radix over the coordinate moduli of
``hom(C, G)^0`` (first coordinate most significant).  Shift and clock operators
are permutations with phases, stored as integer arrays; a phase ``k`` stands
for ``exp(2 pi i k / N)`` where ``N`` is the exponent of ``hom(C, G)^0``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from ..abelian import GroupHomomorphism, RationalPhase
from ..homcx import Cochain, DualCochain, HomComplex

__all__ = [
    "CapExceeded",
    "DEFAULT_MAX_COUNT",
    "DEFAULT_MAX_DIM",
    "HilbertSpace",
    "MonomialOperator",
    "count_kernel",
]

DEFAULT_MAX_DIM = 4096
DEFAULT_MAX_COUNT = 2 ** 20
_CHUNK = 1 << 16


class CapExceeded(RuntimeError):
    """A brute-force computation would exceed its configured size limit."""


def _int64_matrix(f: GroupHomomorphism) -> np.ndarray:
    return np.array(f.matrix, dtype=np.int64).reshape(f.target.ngens, f.source.ngens)


def _reduce(X: np.ndarray, moduli: np.ndarray) -> np.ndarray:
    return np.mod(X, moduli) if moduli.size else X


def count_kernel(f: GroupHomomorphism, max_count: int = DEFAULT_MAX_COUNT) -> int:
    """``|ker f|`` by enumerating the (finite) source in chunks."""
    order = f.source.order()
    if order > max_count:
        raise CapExceeded(f"enumeration of {order} elements exceeds the cap of {max_count}")
    M = _int64_matrix(f)
    smods = np.array(f.source.moduli, dtype=np.int64)
    tmods = np.array(f.target.moduli, dtype=np.int64)
    if not f.source.ngens:
        return 1
    total = 0
    for start in range(0, order, _CHUNK):
        idx = np.arange(start, min(order, start + _CHUNK), dtype=np.int64)
        X = np.stack(np.unravel_index(idx, tuple(smods)), axis=1)
        Y = _reduce(X @ M.T, tmods)
        total += int(np.count_nonzero(~Y.any(axis=1)))
    return total


class HilbertSpace:
    """``C[hom(C, G)^0]`` with mixed-radix basis indexing."""

    def __init__(self, hc: HomComplex, max_dim: int = DEFAULT_MAX_COUNT):
        self.hc = hc
        self.group = hc.group(0)
        self.moduli = np.array(self.group.moduli, dtype=np.int64)
        self.dim = int(self.group.order())
        if self.dim > max_dim:
            raise CapExceeded(f"Hilbert space dimension {self.dim} exceeds the cap of {max_dim}")
        self.N = self.group.exponent
        self.weights = (self.N // self.moduli) if self.moduli.size else self.moduli

    # -- indexing -----------------------------------------------------------

    def encode(self, coords) -> np.ndarray | int:
        X = np.asarray(coords, dtype=np.int64)
        if not self.moduli.size:
            return np.zeros(X.shape[:-1], dtype=np.int64) if X.ndim > 1 else 0
        X = np.mod(X, self.moduli)
        out = np.ravel_multi_index(tuple(np.moveaxis(X, -1, 0)), tuple(self.moduli))
        return out if X.ndim > 1 else int(out)

    def decode(self, index) -> np.ndarray:
        if not self.moduli.size:
            return np.zeros((np.size(index), 0), dtype=np.int64) if np.ndim(index) else \
                np.zeros(0, dtype=np.int64)
        return np.stack(np.unravel_index(index, tuple(self.moduli)), axis=-1).astype(np.int64)

    @cached_property
    def states(self) -> np.ndarray:
        """All basis configurations as rows (index order)."""
        return self.decode(np.arange(self.dim, dtype=np.int64)).reshape(self.dim, -1)

    def cochain(self, index: int) -> Cochain:
        return self.hc.cochain(0, [int(x) for x in self.decode(index)])

    def index_of(self, f: Cochain) -> int:
        return self.encode(f.coords)

    @cached_property
    def flat_mask(self) -> np.ndarray:
        """``delta^0 f == 0`` for every basis state."""
        d = self.hc.delta(0)
        M = _int64_matrix(d)
        tm = np.array(d.target.moduli, dtype=np.int64)
        return ~_reduce(self.states @ M.T, tm).any(axis=1)

    # -- operators ----------------------------------------------------------

    def identity(self) -> MonomialOperator:
        return MonomialOperator(self, np.arange(self.dim, dtype=np.int64),
                                np.zeros(self.dim, dtype=np.int64))

    def shift(self, t: Cochain) -> MonomialOperator:
        """``P_t |f> = |f + t>``."""
        if t.p != 0:
            raise ValueError("shift needs a degree-0 cochain")
        perm = self.encode(self.states + np.array(t.coords, dtype=np.int64))
        return MonomialOperator(self, perm, np.zeros(self.dim, dtype=np.int64))

    def clock(self, m: DualCochain) -> MonomialOperator:
        """``Q_m |f> = chi_m(f) |f>``."""
        if m.p != 0:
            raise ValueError("clock needs a degree-0 dual cochain")
        k = np.array(m.coords, dtype=np.int64) * self.weights
        phase = np.mod(self.states @ k, self.N) if self.moduli.size else np.zeros(self.dim, np.int64)
        return MonomialOperator(self, np.arange(self.dim, dtype=np.int64), phase)

    def gauge_op(self, t: Cochain) -> MonomialOperator:
        """``A_t = P_{delta t}`` for a gauge parameter ``t`` of degree -1."""
        if t.p != -1:
            raise ValueError("gauge parameters have degree -1")
        return self.shift(Cochain(self.hc, 0, self.hc.delta(-1)(t.value)))

    def holonomy_op(self, m: DualCochain) -> MonomialOperator:
        """``B_m = Q_{delta_1 m}`` for a dual cochain ``m`` of degree 1."""
        if m.p != 1:
            raise ValueError("holonomy labels have degree 1")
        return self.clock(DualCochain(self.hc, 0, self.hc.delta_dual(1)(m.value)))

    def phase(self, k: int) -> RationalPhase:
        return RationalPhase(Fraction(int(k), self.N))


class MonomialOperator:
    """``O |f> = omega^{phase[f]} |perm[f]>`` with ``omega = exp(2 pi i / N)``."""

    def __init__(self, space: HilbertSpace, perm: np.ndarray, phase: np.ndarray):
        self.space = space
        self.perm = np.asarray(perm, dtype=np.int64)
        self.phase = np.mod(np.asarray(phase, dtype=np.int64), space.N)

    def __matmul__(self, other: MonomialOperator) -> MonomialOperator:
        """Operator product ``self . other`` (``other`` acts first)."""
        return MonomialOperator(self.space, self.perm[other.perm],
                                other.phase + self.phase[other.perm])

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonomialOperator) and np.array_equal(self.perm, other.perm)
                and np.array_equal(self.phase, other.phase))

    __hash__ = None

    def times_phase(self, k: int) -> MonomialOperator:
        """Multiply by the scalar ``omega^k``."""
        return MonomialOperator(self.space, self.perm, self.phase + k)

    def phase_at(self, index: int) -> RationalPhase:
        return self.space.phase(self.phase[index])

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.perm, np.arange(self.space.dim))) and not self.phase.any()

    def is_diagonal(self) -> bool:
        return bool(np.array_equal(self.perm, np.arange(self.space.dim)))

    def apply(self, vec: np.ndarray) -> np.ndarray:
        out = np.zeros(self.space.dim, dtype=complex)
        out[self.perm] = np.exp(2j * np.pi * self.phase / self.space.N) * vec
        return out

    def to_sparse(self) -> sp.csr_matrix:
        n = self.space.dim
        data = np.exp(2j * np.pi * self.phase / self.space.N)
        return sp.csr_matrix((data, (self.perm, np.arange(n))), shape=(n, n))
