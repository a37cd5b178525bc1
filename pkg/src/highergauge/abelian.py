"""Exact arithmetic for finitely generated abelian groups.

Groups are carried in *diagonal form*: a tuple of moduli ``(m_1, ..., m_k)``
standing for ``Z_{m_1} + ... + Z_{m_k}``, where a modulus of 0 means a copy
of ``Z``.  Elements are integer coordinate vectors reduced componentwise.
Arbitrary presentations (generators plus an integer relation matrix) are
brought into invariant-factor form with the Smith normal form; lattice
membership questions (kernels, preimages) go through a column Hermite form.

All integer matrices are numpy arrays of ``dtype=object`` so that entries are
Python integers and never overflow.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

__all__ = [
    "AbelianGroup",
    "Canonicalization",
    "Character",
    "GroupElement",
    "GroupHomomorphism",
    "PresentedAbelianGroup",
    "Quotient",
    "RationalPhase",
    "Subquotient",
    "canonicalize",
    "dual_group",
    "dual_of_hom",
    "ext_group",
    "hermite_normal_form",
    "hom_group",
    "image",
    "int_matrix",
    "kernel",
    "quotient",
    "smith_normal_form",
    "solve_integer",
    "subgroup",
]


# ---------------------------------------------------------------------------
# integer matrix helpers


def int_matrix(data, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Return ``data`` as a 2-d object array of Python ints."""
    if shape is not None and (data is None or np.size(data) == 0):
        return np.zeros(shape, dtype=object)
    arr = np.array(data, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1) if shape is None else arr.reshape(shape)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = int(v)
    if shape is not None and out.shape != shape:
        raise ValueError(f"matrix has shape {out.shape}, expected {shape}")
    return out


def _identity(n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=object)
    for i in range(n):
        m[i, i] = 1
    return m


def _int_vector(v, length: int | None = None) -> np.ndarray:
    arr = np.array([int(x) for x in np.ravel(np.asarray(v, dtype=object))], dtype=object)
    if length is not None and arr.shape != (length,):
        raise ValueError(f"vector has length {arr.shape[0]}, expected {length}")
    return arr


def smith_normal_form(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form of an integer matrix.

    Returns ``(U, D, V)`` with ``U`` and ``V`` unimodular and ``U @ M @ V == D``,
    ``D`` diagonal with nonnegative entries ``d_1 | d_2 | ...`` (zeros last).

    >>> U, D, V = smith_normal_form([[2, 4], [6, 8]])
    >>> [D[0, 0], D[1, 1]]
    [2, 4]
    """
    U, D, V, _ = _snf_with_inverse(int_matrix(M) if np.ndim(M) else int_matrix([[M]]))
    return U, D, V


def _snf_with_inverse(M: np.ndarray):
    A = M.copy()
    m, n = A.shape
    U, Uinv, V = _identity(m), _identity(m), _identity(n)

    def swap_rows(i, j):
        if i != j:
            A[[i, j], :] = A[[j, i], :]
            U[[i, j], :] = U[[j, i], :]
            Uinv[:, [i, j]] = Uinv[:, [j, i]]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]

    for t in range(min(m, n)):
        while True:
            sub = A[t:, t:]
            nz = [(abs(v), i, j) for (i, j), v in np.ndenumerate(sub) if v != 0]
            if not nz:
                return U, A, V, Uinv
            _, i, j = min(nz)
            swap_rows(t, t + i)
            swap_cols(t, t + j)
            p = A[t, t]
            clean = True
            for i in range(t + 1, m):
                q = A[i, t] // p
                if q:
                    A[i, :] -= q * A[t, :]
                    U[i, :] -= q * U[t, :]
                    Uinv[:, t] += q * Uinv[:, i]
                if A[i, t]:
                    clean = False
            for j in range(t + 1, n):
                q = A[t, j] // p
                if q:
                    A[:, j] -= q * A[:, t]
                    V[:, j] -= q * V[:, t]
                if A[t, j]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i, j] % p),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t; the next pass shrinks the pivot
            A[t, :] += A[bad, :]
            U[t, :] += U[bad, :]
            Uinv[:, bad] -= Uinv[:, t]
        if A[t, t] < 0:
            A[t, :] *= -1
            U[t, :] *= -1
            Uinv[:, t] *= -1
    return U, A, V, Uinv


def hermite_normal_form(A) -> tuple[np.ndarray, np.ndarray, int]:
    """Column Hermite form.

    Returns ``(H, V, r)`` with ``V`` unimodular, ``A @ V == H``, the first ``r``
    columns of ``H`` a lower echelon basis of the column lattice (positive
    pivots, entries left of each pivot reduced modulo it) and the remaining
    columns zero, so ``V[:, r:]`` is a basis of the integer kernel of ``A``.
    """
    H = int_matrix(A).copy() if not isinstance(A, np.ndarray) or A.dtype != object else A.copy()
    m, n = H.shape
    V = _identity(n)
    pivots: list[int] = []
    c = 0
    for row in range(m):
        if c >= n:
            break
        while True:
            nz = [(abs(H[row, j]), j) for j in range(c, n) if H[row, j] != 0]
            if not nz:
                break
            _, j0 = min(nz)
            if j0 != c:
                H[:, [c, j0]] = H[:, [j0, c]]
                V[:, [c, j0]] = V[:, [j0, c]]
            p = H[row, c]
            done = True
            for j in range(c + 1, n):
                q = H[row, j] // p
                if q:
                    H[:, j] -= q * H[:, c]
                    V[:, j] -= q * V[:, c]
                if H[row, j]:
                    done = False
            if done:
                break
        if H[row, c] == 0:
            continue
        if H[row, c] < 0:
            H[:, c] *= -1
            V[:, c] *= -1
        p = H[row, c]
        for j in range(c):
            q = H[row, j] // p
            if q:
                H[:, j] -= q * H[:, c]
                V[:, j] -= q * V[:, c]
        pivots.append(row)
        c += 1
    return H, V, c


class _Solver:
    """Reusable integer solver for ``A z = b`` built on one Hermite form."""

    def __init__(self, A: np.ndarray):
        self.A = A
        self.H, self.V, self.rank = hermite_normal_form(A)
        self.pivot_rows = []
        for j in range(self.rank):
            col = self.H[:, j]
            self.pivot_rows.append(next(i for i in range(len(col)) if col[i] != 0))

    def solve(self, b) -> np.ndarray | None:
        res = _int_vector(b, self.A.shape[0]).copy()
        w = np.zeros(self.A.shape[1], dtype=object)
        for j, r in enumerate(self.pivot_rows):
            p = self.H[r, j]
            if res[r] % p:
                return None
            q = res[r] // p
            w[j] = q
            if q:
                res -= q * self.H[:, j]
        if any(res):
            return None
        return self.V @ w if len(w) else w

    @cached_property
    def kernel_basis(self) -> np.ndarray:
        return self.V[:, self.rank:]

    @cached_property
    def image_basis(self) -> np.ndarray:
        return self.H[:, : self.rank]


def solve_integer(A, b) -> np.ndarray | None:
    """One integer solution ``z`` of ``A z = b``, or ``None`` when there is none."""
    return _Solver(int_matrix(A)).solve(b)


# ---------------------------------------------------------------------------
# rational phases (exact U(1) values)


@dataclass(frozen=True)
class RationalPhase:
    """An element of Q/Z, i.e. the exponent of ``exp(2 pi i value)``."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v - math.floor(v))

    def __add__(self, other: RationalPhase) -> RationalPhase:
        return RationalPhase(self.value + other.value)

    def __sub__(self, other: RationalPhase) -> RationalPhase:
        return RationalPhase(self.value - other.value)

    def __neg__(self) -> RationalPhase:
        return RationalPhase(-self.value)

    def __mul__(self, k: int) -> RationalPhase:
        return RationalPhase(self.value * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.value == 0

    def as_complex(self) -> complex:
        return complex(np.exp(2j * np.pi * float(self.value)))

    def __repr__(self) -> str:
        return f"RationalPhase({self.value})"


# ---------------------------------------------------------------------------
# groups and elements


@dataclass(frozen=True)
class AbelianGroup:
    """Direct sum ``Z_{m_1} + ... + Z_{m_k}``; a modulus of 0 is a copy of Z.

    Moduli equal to 1 are dropped on construction.
    """

    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        mods = tuple(int(m) for m in self.moduli)
        if any(m < 0 for m in mods):
            raise ValueError(f"negative modulus in {mods}")
        object.__setattr__(self, "moduli", tuple(m for m in mods if m != 1))

    @classmethod
    def free(cls, rank: int) -> AbelianGroup:
        return cls((0,) * rank)

    @classmethod
    def trivial(cls) -> AbelianGroup:
        return cls(())

    @property
    def ngens(self) -> int:
        return len(self.moduli)

    @property
    def rank(self) -> int:
        return sum(1 for m in self.moduli if m == 0)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def is_trivial(self) -> bool:
        return not self.moduli

    @property
    def is_free(self) -> bool:
        return all(m == 0 for m in self.moduli)

    def order(self) -> int | float:
        """Group order; ``math.inf`` when there is a free summand."""
        return math.prod(self.moduli) if self.is_finite else math.inf

    @property
    def exponent(self) -> int:
        """Least common multiple of the torsion moduli (1 for the trivial group)."""
        return math.lcm(*self.moduli) if self.moduli and self.is_finite else 1

    @cached_property
    def canonical(self) -> Canonicalization:
        """Invariant-factor form together with the coordinate transitions."""
        return canonicalize(PresentedAbelianGroup(self.ngens, self.relation_matrix()))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(m for m in self.canonical.group.moduli if m != 0)

    @property
    def is_canonical(self) -> bool:
        tors = [m for m in self.moduli if m]
        free_tail = all(m == 0 for m in self.moduli[len(tors):])
        return free_tail and all(b % a == 0 for a, b in zip(tors, tors[1:]))

    def is_isomorphic(self, other: AbelianGroup) -> bool:
        return self.canonical.group.moduli == other.canonical.group.moduli

    def relation_matrix(self) -> np.ndarray:
        """The diagonal relation matrix, one column per torsion coordinate."""
        tors = [i for i, m in enumerate(self.moduli) if m]
        R = np.zeros((self.ngens, len(tors)), dtype=object)
        for c, i in enumerate(tors):
            R[i, c] = self.moduli[i]
        return R

    def reduce(self, v) -> np.ndarray:
        v = _int_vector(v, self.ngens)
        return np.array([x % m if m else x for x, m in zip(v, self.moduli)], dtype=object)

    def element(self, coords) -> GroupElement:
        return GroupElement(self, tuple(self.reduce(coords)))

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.ngens)

    def generators(self) -> list[GroupElement]:
        out = []
        for i in range(self.ngens):
            e = [0] * self.ngens
            e[i] = 1
            out.append(self.element(e))
        return out

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic coordinate order (finite groups only)."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        for c in itertools.product(*(range(m) for m in self.moduli)):
            yield GroupElement(self, c)

    def random_element(self, rng: np.random.Generator, free_bound: int = 10) -> GroupElement:
        coords = [
            int(rng.integers(0, m)) if m else int(rng.integers(-free_bound, free_bound + 1))
            for m in self.moduli
        ]
        return GroupElement(self, tuple(coords))

    def __str__(self) -> str:
        return render_group(self)


def render_group(G: AbelianGroup) -> str:
    """Render in invariant-factor form, e.g. ``"Z^2 + Z_2 + Z_4"`` or ``"0"``."""
    can = G.canonical.group
    parts = []
    r = can.rank
    if r == 1:
        parts.append("Z")
    elif r > 1:
        parts.append(f"Z^{r}")
    parts += [f"Z_{d}" for d in sorted(m for m in can.moduli if m)]
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.group.reduce(self.coords)))

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> GroupElement:
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int | float:
        n = 1
        for x, m in zip(self.coords, self.group.moduli):
            if m == 0:
                if x:
                    return math.inf
            else:
                n = math.lcm(n, m // math.gcd(x, m))
        return n

    def _check(self, other):
        if other.group != self.group:
            raise ValueError("elements belong to different groups")


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True, eq=False)
class PresentedAbelianGroup:
    """``Z^num_generators`` modulo the column span of ``relations``."""

    num_generators: int
    relations: np.ndarray = field(default=None)

    def __post_init__(self):
        rel = self.relations
        if rel is None or np.size(rel) == 0:
            rel = np.zeros((self.num_generators, 0), dtype=object)
        else:
            rel = int_matrix(rel)
        if rel.shape[0] != self.num_generators:
            raise ValueError(
                f"relation matrix has {rel.shape[0]} rows for {self.num_generators} generators"
            )
        object.__setattr__(self, "relations", rel)

    @cached_property
    def canonical(self) -> Canonicalization:
        return canonicalize(self)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(m for m in self.canonical.group.moduli if m)

    @property
    def rank(self) -> int:
        return self.canonical.group.rank

    def order(self) -> int | float:
        return self.canonical.group.order()


class Canonicalization(NamedTuple):
    """Invariant-factor form of a presentation.

    ``to_canonical`` maps generator coordinates to canonical coordinates and
    ``from_canonical`` maps back (both before reduction).
    """

    group: AbelianGroup
    to_canonical: np.ndarray
    from_canonical: np.ndarray


def canonicalize(G: PresentedAbelianGroup) -> Canonicalization:
    """Bring a presentation into invariant-factor form ``d_1 | d_2 | ... , Z^r``."""
    n = G.num_generators
    if n == 0:
        return Canonicalization(AbelianGroup(()), np.zeros((0, 0), dtype=object),
                                np.zeros((0, 0), dtype=object))
    U, D, _, Uinv = _snf_with_inverse(G.relations)
    diag = [D[i, i] if i < min(D.shape) else 0 for i in range(n)]
    keep = [i for i, d in enumerate(diag) if d != 1]
    group = AbelianGroup(tuple(diag[i] for i in keep))
    to_c = U[keep, :] if keep else np.zeros((0, n), dtype=object)
    from_c = Uinv[:, keep] if keep else np.zeros((n, 0), dtype=object)
    return Canonicalization(group, to_c, from_c)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class GroupHomomorphism:
    """Homomorphism given by an integer matrix (target coords x source coords)."""

    source: AbelianGroup
    target: AbelianGroup
    matrix: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        M = int_matrix(self.matrix, (self.target.ngens, self.source.ngens))
        for i, m in enumerate(self.target.moduli):
            if m:
                M[i, :] = [x % m for x in M[i, :]]
        object.__setattr__(self, "matrix", M)
        if self.check and not self.is_well_defined():
            raise ValueError("matrix does not define a homomorphism between the given groups")

    @classmethod
    def zero(cls, source: AbelianGroup, target: AbelianGroup) -> GroupHomomorphism:
        return cls(source, target, np.zeros((target.ngens, source.ngens), dtype=object))

    @classmethod
    def identity(cls, G: AbelianGroup) -> GroupHomomorphism:
        return cls(G, G, _identity(G.ngens))

    def is_well_defined(self) -> bool:
        """Every torsion generator of order d must map to an element killed by d."""
        for j, d in enumerate(self.source.moduli):
            if d == 0:
                continue
            for i, m in enumerate(self.target.moduli):
                x = d * self.matrix[i, j]
                if (m == 0 and x != 0) or (m and x % m):
                    return False
        return True

    def apply(self, x) -> GroupElement:
        coords = x.coords if isinstance(x, GroupElement) else x
        v = _int_vector(coords, self.source.ngens)
        out = self.matrix @ v if self.source.ngens else np.zeros(self.target.ngens, dtype=object)
        return self.target.element(out)

    __call__ = apply

    def compose(self, first: GroupHomomorphism) -> GroupHomomorphism:
        """``self o first``."""
        if first.target != self.source:
            raise ValueError("cannot compose: group mismatch")
        return GroupHomomorphism(first.source, self.target, _matmul(self.matrix, first.matrix))

    def __matmul__(self, other: GroupHomomorphism) -> GroupHomomorphism:
        return self.compose(other)

    def __add__(self, other: GroupHomomorphism) -> GroupHomomorphism:
        return GroupHomomorphism(self.source, self.target, self.matrix + other.matrix)

    def __neg__(self) -> GroupHomomorphism:
        return GroupHomomorphism(self.source, self.target, -self.matrix)

    def __mul__(self, k: int) -> GroupHomomorphism:
        return GroupHomomorphism(self.source, self.target, k * self.matrix)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.matrix.flat)

    def equals(self, other: GroupHomomorphism) -> bool:
        return (
            self.source == other.source
            and self.target == other.target
            and all(a == b for a, b in zip(self.matrix.flat, other.matrix.flat))
        )

    @cached_property
    def _solver(self) -> _Solver:
        return _Solver(np.hstack([self.matrix, self.target.relation_matrix()]))

    def preimage(self, y) -> GroupElement | None:
        """Some ``x`` with ``self(x) == y``, or ``None`` if ``y`` is not in the image."""
        coords = y.coords if isinstance(y, GroupElement) else y
        z = self._solver.solve(coords)
        if z is None:
            return None
        return self.source.element(z[: self.source.ngens])

    def contains_in_image(self, y) -> bool:
        return self.preimage(y) is not None


def _as_columns(data, rows: int) -> np.ndarray:
    arr = np.asarray(data, dtype=object)
    if arr.size == 0:
        return np.zeros((rows, 0), dtype=object)
    return int_matrix(arr, (rows, arr.size // rows))


def _matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=object)
    return A @ B


# ---------------------------------------------------------------------------
# kernels, images, quotients


def subgroup(G: AbelianGroup, generators) -> tuple[AbelianGroup, GroupHomomorphism]:
    """Subgroup of ``G`` generated by the columns of ``generators``.

    Returns the subgroup in invariant-factor form and its inclusion into ``G``.
    """
    S = _as_columns(generators, G.ngens)
    rel = G.relation_matrix()
    solver = _Solver(np.hstack([S, rel]))
    basis = solver.image_basis
    r = basis.shape[1]
    if r == 0:
        return AbelianGroup(()), GroupHomomorphism.zero(AbelianGroup(()), G)
    basis_solver = _Solver(basis)
    rels = []
    for c in range(rel.shape[1]):
        y = basis_solver.solve(rel[:, c])
        assert y is not None, "relation lattice not contained in the subgroup lattice"
        rels.append(y)
    R = np.array(rels, dtype=object).T if rels else np.zeros((r, 0), dtype=object)
    can = canonicalize(PresentedAbelianGroup(r, R))
    incl = GroupHomomorphism(can.group, G, _matmul(basis, can.from_canonical))
    return can.group, incl


def kernel(f: GroupHomomorphism) -> tuple[AbelianGroup, GroupHomomorphism]:
    """Kernel of ``f`` with its inclusion into the source.

    >>> Z4 = AbelianGroup((4,))
    >>> K, inc = kernel(GroupHomomorphism(Z4, Z4, [[2]]))
    >>> K.moduli, inc(K.generators()[0]).coords
    ((2,), (2,))
    """
    N = np.hstack([f.matrix, f.target.relation_matrix()])
    gens = _Solver(N).kernel_basis[: f.source.ngens, :]
    return subgroup(f.source, gens)


def image(f: GroupHomomorphism) -> tuple[AbelianGroup, GroupHomomorphism]:
    """Image of ``f`` with its inclusion into the target."""
    return subgroup(f.target, f.matrix)


class Quotient(NamedTuple):
    group: AbelianGroup
    projection: GroupHomomorphism
    lift: np.ndarray  # canonical quotient coords -> representative coords in G


def quotient(G: AbelianGroup, inclusion: GroupHomomorphism) -> Quotient:
    """``G / S`` for a subgroup ``S`` given by its inclusion homomorphism."""
    if inclusion.target != G:
        raise ValueError("inclusion does not land in G")
    R = np.hstack([G.relation_matrix(), inclusion.matrix])
    can = canonicalize(PresentedAbelianGroup(G.ngens, R))
    proj = GroupHomomorphism(G, can.group, can.to_canonical)
    return Quotient(can.group, proj, can.from_canonical)


class Subquotient:
    """``ker(outgoing) / im(incoming)`` for composable maps with zero composite.

    This is the common shape of homology and cohomology; it keeps enough data
    to send a cycle to its class and a class to a representative cycle.
    """

    def __init__(self, incoming: GroupHomomorphism, outgoing: GroupHomomorphism):
        if incoming.target != outgoing.source:
            raise ValueError("maps are not composable")
        if not (outgoing @ incoming).is_zero():
            raise ValueError("composite of the two maps is not zero")
        self.ambient = outgoing.source
        self.cycles, self.inclusion = kernel(outgoing)
        cols = []
        for j in range(incoming.source.ngens):
            pre = self.inclusion.preimage(incoming.matrix[:, j])
            assert pre is not None
            cols.append(pre.coords)
        M = (np.array(cols, dtype=object).T if cols
             else np.zeros((self.cycles.ngens, 0), dtype=object))
        into_cycles = GroupHomomorphism(incoming.source, self.cycles, M)
        _, self.boundaries_inclusion = image(into_cycles)
        self.group, self.projection, self._lift = quotient(self.cycles, self.boundaries_inclusion)

    def is_cycle(self, x) -> bool:
        return self.inclusion.preimage(x) is not None

    def class_of(self, x) -> GroupElement:
        k = self.inclusion.preimage(x)
        if k is None:
            raise ValueError("element is not a cycle")
        return self.projection(k)

    def representative(self, h) -> GroupElement:
        coords = h.coords if isinstance(h, GroupElement) else h
        v = _int_vector(coords, self.group.ngens)
        k = _matmul(self._lift, v.reshape(-1, 1)).ravel() if self.group.ngens else \
            np.zeros(self.cycles.ngens, dtype=object)
        return self.inclusion(k)


# ---------------------------------------------------------------------------
# Hom, Ext and duals


def _hom_cyclic(a: int, b: int) -> tuple[int, int] | None:
    """Hom(Z_a, Z_b) as (order-modulus, image of 1 under the generator)."""
    if b == 0:
        return (0, 1) if a == 0 else None
    if a == 0:
        return (b, 1)
    g = math.gcd(a, b)
    return (g, b // g) if g > 1 else None


def hom_group(A: AbelianGroup, B: AbelianGroup) -> tuple[AbelianGroup, list[GroupHomomorphism]]:
    """``Hom(A, B)`` built summand by summand.

    Returns the group (one coordinate per nonzero ``Hom(Z_a, Z_b)`` factor, in
    order target-coordinate-major) and the homomorphism attached to each
    coordinate generator; an element with coordinates ``c`` is ``sum c_k basis[k]``.
    """
    mods, basis = [], []
    for i, b in enumerate(B.moduli):
        for j, a in enumerate(A.moduli):
            h = _hom_cyclic(a, b)
            if h is None:
                continue
            mods.append(h[0])
            M = np.zeros((B.ngens, A.ngens), dtype=object)
            M[i, j] = h[1]
            basis.append(GroupHomomorphism(A, B, M))
    return AbelianGroup(tuple(mods)), basis


def hom_from_element(basis: Sequence[GroupHomomorphism], x: GroupElement,
                     source: AbelianGroup, target: AbelianGroup) -> GroupHomomorphism:
    M = np.zeros((target.ngens, source.ngens), dtype=object)
    for c, phi in zip(x.coords, basis):
        M = M + c * phi.matrix
    return GroupHomomorphism(source, target, M)


def ext_group(A: AbelianGroup, B: AbelianGroup) -> AbelianGroup:
    """``Ext^1(A, B)``: ``Ext(Z, B) = 0`` and ``Ext(Z_a, B) = B / aB``."""
    mods = []
    for a in A.moduli:
        if a == 0:
            continue
        for b in B.moduli:
            mods.append(a if b == 0 else math.gcd(a, b))
    return AbelianGroup(tuple(mods))


@dataclass(frozen=True)
class Character:
    """Character of a finite diagonal group: ``x -> sum_i k_i x_i / m_i`` in Q/Z."""

    group: AbelianGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        if not self.group.is_finite:
            raise ValueError("characters are only defined here for finite groups")
        object.__setattr__(self, "exponents", tuple(int(k) for k in self.group.reduce(self.exponents)))

    def __call__(self, x) -> RationalPhase:
        coords = x.coords if isinstance(x, GroupElement) else x
        return RationalPhase(sum(Fraction(k * int(c), m)
                                 for k, c, m in zip(self.exponents, coords, self.group.moduli)))

    evaluate = __call__

    def __add__(self, other: Character) -> Character:
        return Character(self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __neg__(self) -> Character:
        return Character(self.group, tuple(-a for a in self.exponents))

    def is_trivial(self) -> bool:
        return not any(self.exponents)


def dual_group(G: AbelianGroup) -> tuple[AbelianGroup, list[Character]]:
    """The character group of finite ``G`` (same moduli) and its basis characters.

    The ``i``-th basis character sends the ``i``-th generator to ``1/m_i``.
    """
    if not G.is_finite:
        raise ValueError("dual group requires a finite group")
    basis = []
    for i in range(G.ngens):
        k = [0] * G.ngens
        k[i] = 1
        basis.append(Character(G, tuple(k)))
    return AbelianGroup(G.moduli), basis


def dual_of_hom(f: GroupHomomorphism) -> GroupHomomorphism:
    """``rho -> rho o f`` as a homomorphism between dual groups (target^ -> source^)."""
    if not (f.source.is_finite and f.target.is_finite):
        raise ValueError("dual maps require finite groups")
    a, b = f.source.moduli, f.target.moduli
    L = np.zeros((len(a), len(b)), dtype=object)
    for j, aj in enumerate(a):
        for i, bi in enumerate(b):
            num = aj * f.matrix[i, j]
            assert num % bi == 0
            L[j, i] = num // bi
    return GroupHomomorphism(AbelianGroup(b), AbelianGroup(a), L)


def enumerate_subgroup(inclusion: GroupHomomorphism) -> np.ndarray:
    """All elements of a finite subgroup as rows of ambient coordinates."""
    S = inclusion.source
    if not S.is_finite:
        raise ValueError("subgroup is infinite")
    if S.ngens == 0:
        return np.zeros((1, inclusion.target.ngens), dtype=np.int64)
    grid = np.indices(S.moduli).reshape(S.ngens, -1).T.astype(np.int64)
    M = np.array(inclusion.matrix, dtype=np.int64)
    mods = np.array([m if m else 0 for m in inclusion.target.moduli], dtype=np.int64)
    out = grid @ M.T
    return np.where(mods > 0, np.mod(out, np.where(mods > 0, mods, 1)), out)


def iter_coords(moduli: Iterable[int]) -> Iterator[tuple[int, ...]]:
    return itertools.product(*(range(m) for m in moduli))
