"""Exact rational projectors and the brute-force degeneracy oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from ..complex import ChainComplex
from ..homcx import HomComplex
from .hilbert import (
    DEFAULT_MAX_COUNT,
    DEFAULT_MAX_DIM,
    CapExceeded,
    HilbertSpace,
    _int64_matrix,
    _reduce,
    count_kernel,
)

__all__ = [
    "OracleReport",
    "RationalMatrixOperator",
    "RationalVector",
    "counting_gsd",
    "gauge_orbit_counts",
    "gsd_oracle",
    "projector_A0",
    "projector_B0",
    "trace_gsd",
]

_LIMIT = 1 << 62


def _gcd_all(values, start: int = 0) -> int:
    g = start
    for v in values:
        g = math.gcd(g, int(v))
        if g == 1:
            break
    return g


class RationalMatrixOperator:
    """Sparse matrix ``numerator / denominator`` with int64 numerators."""

    def __init__(self, numerator, denominator: int = 1):
        num = sp.csr_matrix(numerator, dtype=np.int64)
        num.eliminate_zeros()
        den = int(denominator)
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = _gcd_all(num.data, den)
        if g > 1:
            num.data //= g
            den //= g
        self.numerator = num
        self.denominator = den

    @property
    def shape(self):
        return self.numerator.shape

    def __matmul__(self, other: RationalMatrixOperator) -> RationalMatrixOperator:
        a = int(abs(self.numerator).max()) if self.numerator.nnz else 0
        b = int(abs(other.numerator).max()) if other.numerator.nnz else 0
        if a * b * self.shape[1] >= _LIMIT or self.denominator * other.denominator >= _LIMIT:
            raise OverflowError("exact product would overflow 64-bit numerators")
        return RationalMatrixOperator(self.numerator @ other.numerator,
                                      self.denominator * other.denominator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrixOperator) or other.shape != self.shape:
            return False
        diff = self.numerator * other.denominator - other.numerator * self.denominator
        return diff.count_nonzero() == 0

    __hash__ = None

    def is_idempotent(self) -> bool:
        return self @ self == self

    def trace(self) -> Fraction:
        return Fraction(int(self.numerator.diagonal().sum()), self.denominator)

    def entries(self) -> set[Fraction]:
        return {Fraction(int(x), self.denominator) for x in self.numerator.data}

    def apply(self, v: RationalVector) -> RationalVector:
        return RationalVector(self.numerator @ v.numerator, self.denominator * v.denominator)

    def to_dense(self) -> np.ndarray:
        return self.numerator.toarray() / self.denominator


class RationalVector:
    """Dense vector ``numerator / denominator`` with int64 numerators."""

    def __init__(self, numerator, denominator: int = 1):
        num = np.asarray(numerator, dtype=np.int64)
        den = int(denominator)
        g = _gcd_all(num[num != 0], den)
        if g > 1:
            num = num // g
            den //= g
        self.numerator = num
        self.denominator = den

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalVector) and np.array_equal(
            self.numerator * other.denominator, other.numerator * self.denominator)

    __hash__ = None

    def dot(self, other: RationalVector) -> Fraction:
        return Fraction(int(self.numerator @ other.numerator),
                        self.denominator * other.denominator)

    @property
    def support(self) -> np.ndarray:
        return np.nonzero(self.numerator)[0]

    def to_float(self) -> np.ndarray:
        return self.numerator / self.denominator


def _enumerate(group_moduli: np.ndarray, order: int):
    for start in range(0, order, 1 << 16):
        idx = np.arange(start, min(order, start + (1 << 16)), dtype=np.int64)
        yield np.stack(np.unravel_index(idx, tuple(group_moduli)), axis=1)


def gauge_orbit_counts(space: HilbertSpace, max_count: int = DEFAULT_MAX_COUNT):
    """Distinct gauge shifts ``u = delta t`` (as rows) and how many ``t`` give each."""
    d = space.hc.delta(-1)
    order = d.source.order()
    if order > max_count:
        raise CapExceeded(f"|hom^-1| = {order} exceeds the enumeration cap of {max_count}")
    if not d.source.ngens or not space.moduli.size:
        return np.zeros((1, space.moduli.size), dtype=np.int64), np.array([order]), order
    M = _int64_matrix(d)
    smods = np.array(d.source.moduli, dtype=np.int64)
    acc: dict[int, int] = {}
    for T in _enumerate(smods, order):
        U = _reduce(T @ M.T, space.moduli)
        keys, counts = np.unique(space.encode(U), return_counts=True)
        for k, c in zip(keys.tolist(), counts.tolist()):
            acc[k] = acc.get(k, 0) + c
    keys = np.array(sorted(acc), dtype=np.int64)
    return space.decode(keys).reshape(len(keys), -1), np.array([acc[k] for k in keys]), order


def projector_A0(space: HilbertSpace, max_dim: int = DEFAULT_MAX_DIM,
                 max_count: int = DEFAULT_MAX_COUNT) -> RationalMatrixOperator:
    """Average of all gauge shifts ``A_t`` over ``t`` in ``hom^-1``."""
    if space.dim > max_dim:
        raise CapExceeded(f"dimension {space.dim} exceeds the matrix cap of {max_dim}")
    shifts, counts, order = gauge_orbit_counts(space, max_count)
    n = space.dim
    rows = np.concatenate([space.encode(space.states + u) if space.moduli.size
                           else np.zeros(n, np.int64) for u in shifts])
    cols = np.tile(np.arange(n, dtype=np.int64), len(shifts))
    data = np.repeat(counts.astype(np.int64), n)
    return RationalMatrixOperator(sp.csr_matrix((data, (rows, cols)), shape=(n, n)), order)


def projector_B0(space: HilbertSpace, max_dim: int = DEFAULT_MAX_DIM) -> RationalMatrixOperator:
    """Diagonal indicator of flat configurations."""
    if space.dim > max_dim:
        raise CapExceeded(f"dimension {space.dim} exceeds the matrix cap of {max_dim}")
    return RationalMatrixOperator(sp.diags(space.flat_mask.astype(np.int64)).tocsr(), 1)


def counting_gsd(hc: HomComplex, max_count: int = DEFAULT_MAX_COUNT) -> int:
    """``|ker delta^0| * |ker delta^-1| / |hom^-1|`` by plain enumeration."""
    k0 = count_kernel(hc.delta(0), max_count)
    km = count_kernel(hc.delta(-1), max_count)
    num, den = k0 * km, hc.group(-1).order()
    if num % den:
        raise ArithmeticError("orbit count is not an integer")
    return num // den


def trace_gsd(space: HilbertSpace, max_dim: int = DEFAULT_MAX_DIM,
              max_count: int = DEFAULT_MAX_COUNT) -> int:
    """``trace(A0 B0)`` in exact rationals."""
    Pi = projector_A0(space, max_dim, max_count) @ projector_B0(space, max_dim)
    t = Pi.trace()
    if t.denominator != 1:
        raise ArithmeticError(f"projector trace {t} is not an integer")
    return int(t)


@dataclass
class OracleReport:
    counting: int | None
    trace: int | None
    cohomological: int
    skipped: dict[str, str]

    @property
    def agree(self) -> bool:
        vals = [v for v in (self.counting, self.trace) if v is not None]
        return all(v == self.cohomological for v in vals)

    def to_json(self) -> dict:
        return {"counting": self.counting, "trace": self.trace,
                "cohomological": self.cohomological, "skipped": self.skipped,
                "agree": self.agree}


def gsd_oracle(C: ChainComplex, G: ChainComplex, max_dim: int = DEFAULT_MAX_DIM,
               max_count: int = DEFAULT_MAX_COUNT, strict: bool = True,
               hc: HomComplex | None = None) -> OracleReport:
    """Compare both brute-force routes with ``|H^0(C, G)|``.

    With ``strict`` a route that exceeds its cap raises :class:`CapExceeded`;
    otherwise the route is skipped and the reason recorded.
    """
    hc = hc if hc is not None else HomComplex(C, G)
    coh = hc.cohomology(0).order()
    skipped: dict[str, str] = {}
    counting = trace = None
    try:
        counting = counting_gsd(hc, max_count)
    except CapExceeded as exc:
        if strict:
            raise
        skipped["counting"] = str(exc)
    try:
        if hc.order(0) > max_dim:
            raise CapExceeded(f"dimension {hc.order(0)} exceeds the matrix cap of {max_dim}")
        trace = trace_gsd(HilbertSpace(hc, max_dim), max_dim, max_count)
    except CapExceeded as exc:
        if strict:
            raise
        skipped["trace"] = str(exc)
    return OracleReport(counting, trace, coh, skipped)
