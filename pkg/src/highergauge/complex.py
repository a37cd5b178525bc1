"""Chain complexes: geometric (free, with a cell basis) and gauge (finite groups).

Geometric complexes come from simplicial complexes or from the built-in cubical
tori; gauge complexes are short complexes of finite abelian groups such as
``0 -> Z_4 -> Z_2 -> 0``.  Both share :class:`ChainComplex`.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .abelian import AbelianGroup, GroupHomomorphism, Subquotient, int_matrix, render_group

__all__ = [
    "CellBasis",
    "ChainComplex",
    "SimplicialComplex",
    "Violation",
    "build_gauge",
    "betti_numbers",
    "build_space",
    "from_simplicial",
    "gauge_complex",
    "homology",
    "homology_data",
    "homology_table",
    "parse_gauge",
    "parse_space",
    "validate",
]


@dataclass(frozen=True)
class CellBasis:
    """Ordered cell labels per degree; ``C_n`` is free on ``cells[n]``."""

    cells: Mapping[int, tuple[str, ...]]

    def __post_init__(self):
        cells = {int(n): tuple(labels) for n, labels in self.cells.items()}
        for n, labels in cells.items():
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate cell labels in degree {n}")
        object.__setattr__(self, "cells", dict(sorted(cells.items())))

    def __getitem__(self, n: int) -> tuple[str, ...]:
        return self.cells.get(n, ())

    def index(self, n: int, label: str) -> int:
        return self[n].index(label)

    def counts(self) -> dict[int, int]:
        return {n: len(c) for n, c in self.cells.items()}


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Finite-support graded groups with boundary maps ``d_n: C_n -> C_{n-1}``.

    Degrees outside the support carry the trivial group and zero maps.
    """

    groups: Mapping[int, AbelianGroup]
    boundaries: Mapping[int, GroupHomomorphism] = field(default_factory=dict)
    basis: CellBasis | None = None

    def __post_init__(self):
        groups = {int(n): g for n, g in self.groups.items() if not g.is_trivial}
        object.__setattr__(self, "groups", dict(sorted(groups.items())))
        bds = {}
        for n, d in self.boundaries.items():
            n = int(n)
            if d.source != self.group_at(n) or d.target != self.group_at(n - 1):
                raise ValueError(f"boundary in degree {n} has the wrong source or target")
            if not d.is_zero():
                bds[n] = d
        object.__setattr__(self, "boundaries", bds)

    @property
    def degrees(self) -> list[int]:
        return list(self.groups)

    def group_at(self, n: int) -> AbelianGroup:
        return self.groups.get(n, AbelianGroup(()))

    def boundary_at(self, n: int) -> GroupHomomorphism:
        d = self.boundaries.get(n)
        if d is None:
            return GroupHomomorphism.zero(self.group_at(n), self.group_at(n - 1))
        return d

    @property
    def is_free(self) -> bool:
        return all(g.is_free for g in self.groups.values())

    @property
    def is_finite(self) -> bool:
        return all(g.is_finite for g in self.groups.values())

    def cells(self, n: int) -> tuple[str, ...]:
        if self.basis is None:
            raise ValueError("complex has no cell basis")
        return self.basis[n]

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * g.ngens for n, g in self.groups.items())

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        bd = {str(n): [[int(x) for x in row] for row in d.matrix]
              for n, d in sorted(self.boundaries.items())}
        if self.basis is not None and self.is_free:
            return {"cells": {str(n): list(c) for n, c in self.basis.cells.items() if c},
                    "boundary": bd}
        return {"groups": {str(n): list(g.moduli) for n, g in self.groups.items()},
                "boundary": bd}

    @classmethod
    def from_json(cls, data: Mapping) -> ChainComplex:
        """Parse either the geometric (``cells``) or the gauge (``groups``) format."""
        if "cells" in data and "groups" in data:
            raise ValueError("complex JSON must have exactly one of 'cells' and 'groups'")
        if "cells" in data:
            basis = CellBasis({int(n): tuple(map(str, c)) for n, c in data["cells"].items()})
            groups = {n: AbelianGroup.free(len(c)) for n, c in basis.cells.items()}
        elif "groups" in data:
            basis = None
            groups = {int(n): AbelianGroup(tuple(int(m) for m in mods))
                      for n, mods in data["groups"].items()}
        else:
            raise ValueError("complex JSON needs a 'cells' or a 'groups' field")
        tmp = cls(groups)
        bds = {}
        for key, rows in data.get("boundary", {}).items():
            n = int(key)
            shape = (tmp.group_at(n - 1).ngens, tmp.group_at(n).ngens)
            try:
                M = int_matrix(rows, shape)
            except ValueError as exc:
                raise ValueError(f"boundary '{key}': {exc}") from None
            bds[n] = GroupHomomorphism(tmp.group_at(n), tmp.group_at(n - 1), M)
        return cls(groups, bds, basis)

    @classmethod
    def load(cls, path) -> ChainComplex:
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True)
class Violation:
    degree: int
    message: str


def validate(C: ChainComplex) -> Violation | None:
    """First degree ``n`` with ``d_{n-1} d_n != 0``, or ``None`` if the complex is fine."""
    for n in sorted(set(C.boundaries) | {m + 1 for m in C.boundaries}):
        comp = C.boundary_at(n - 1) @ C.boundary_at(n)
        if not comp.is_zero():
            return Violation(n, f"boundary_{n - 1} o boundary_{n} is not zero")
    return None


# ---------------------------------------------------------------------------
# simplicial complexes


class SimplicialComplex:
    """Finite simplicial complex with simplices stored as increasing vertex tuples."""

    def __init__(self, vertices: Sequence, simplices: Iterable[Sequence]):
        self.vertices = tuple(vertices)
        order = {v: i for i, v in enumerate(self.vertices)}
        if len(order) != len(self.vertices):
            raise ValueError("repeated vertex")
        simp = set()
        for s in simplices:
            if any(v not in order for v in s):
                raise ValueError(f"simplex {tuple(s)} uses an unknown vertex")
            t = tuple(sorted(s, key=order.__getitem__))
            if len(set(t)) != len(t) or not t:
                raise ValueError(f"malformed simplex {tuple(s)}")
            simp.add(t)
        for s in simp:
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                if face and face not in simp:
                    raise ValueError(f"face {face} of simplex {s} is missing")
        self._order = order
        self.simplices = simp

    @classmethod
    def closure(cls, vertices: Sequence, maximal: Iterable[Sequence]) -> SimplicialComplex:
        faces = set()
        for s in maximal:
            for k in range(1, len(s) + 1):
                faces.update(itertools.combinations(s, k))
        return cls(vertices, faces)

    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def simplices_of_dim(self, n: int) -> list[tuple]:
        key = lambda s: [self._order[v] for v in s]
        return sorted((s for s in self.simplices if len(s) == n + 1), key=key)


def _simplex_label(s: tuple) -> str:
    return "[" + ",".join(map(str, s)) + "]"


def from_simplicial(S: SimplicialComplex) -> ChainComplex:
    """Free chain complex with ``d[v_0..v_n] = sum_i (-1)^i [v_0..^v_i..v_n]``."""
    by_dim = {n: S.simplices_of_dim(n) for n in range(S.dimension() + 1)}
    index = {n: {s: i for i, s in enumerate(ss)} for n, ss in by_dim.items()}
    groups = {n: AbelianGroup.free(len(ss)) for n, ss in by_dim.items()}
    bds = {}
    for n in range(1, S.dimension() + 1):
        M = np.zeros((len(by_dim[n - 1]), len(by_dim[n])), dtype=object)
        for j, s in enumerate(by_dim[n]):
            for i in range(n + 1):
                M[index[n - 1][s[:i] + s[i + 1:]], j] += (-1) ** i
        bds[n] = GroupHomomorphism(groups[n], groups[n - 1], M)
    basis = CellBasis({n: tuple(_simplex_label(s) for s in ss) for n, ss in by_dim.items()})
    return ChainComplex(groups, bds, basis)


# ---------------------------------------------------------------------------
# built-in spaces

_AXES = "xyz"


def _torus(d: int, L: int) -> ChainComplex:
    """Cubical d-torus with L^d vertices; k-cells are (base vertex, axis set)."""
    verts = list(itertools.product(range(L), repeat=d))
    cells: dict[int, list] = {}
    for k in range(d + 1):
        cells[k] = [(v, S) for S in itertools.combinations(range(d), k) for v in verts]
    index = {k: {c: i for i, c in enumerate(cs)} for k, cs in cells.items()}

    def shift(v, axis):
        w = list(v)
        w[axis] = (w[axis] + 1) % L
        return tuple(w)

    groups = {k: AbelianGroup.free(len(cs)) for k, cs in cells.items()}
    bds = {}
    for k in range(1, d + 1):
        M = np.zeros((len(cells[k - 1]), len(cells[k])), dtype=object)
        for j, (v, S) in enumerate(cells[k]):
            for i, a in enumerate(S):
                face = S[:i] + S[i + 1:]
                sign = (-1) ** i
                M[index[k - 1][(shift(v, a), face)], j] += sign
                M[index[k - 1][(v, face)], j] -= sign
        bds[k] = GroupHomomorphism(groups[k], groups[k - 1], M)

    prefix = "vefc"

    def label(k, v, S):
        return f"{prefix[k]}{','.join(map(str, v))}" + (":" + "".join(_AXES[a] for a in S) if S else "")

    basis = CellBasis({k: tuple(label(k, v, S) for v, S in cs) for k, cs in cells.items()})
    return ChainComplex(groups, bds, basis)


def _circle(L: int) -> ChainComplex:
    groups = {0: AbelianGroup.free(L), 1: AbelianGroup.free(L)}
    M = np.zeros((L, L), dtype=object)
    for i in range(L):
        M[(i + 1) % L, i] += 1
        M[i, i] -= 1
    basis = CellBasis({0: tuple(f"v{i}" for i in range(L)), 1: tuple(f"e{i}" for i in range(L))})
    return ChainComplex(groups, {1: GroupHomomorphism(groups[1], groups[0], M)}, basis)


def build_space(name: str, *params: int) -> ChainComplex:
    """Built-in geometric complexes.

    ``interval``; ``circle(L)``; ``sphere(d)`` as the boundary of the
    (d+1)-simplex; ``torus(d, L)`` as a periodic cubical lattice.
    """
    if name == "interval" and not params:
        return from_simplicial(SimplicialComplex.closure("ab", ["ab"]))
    if name == "circle" and len(params) == 1 and params[0] >= 1:
        return _circle(params[0])
    if name == "sphere" and len(params) == 1 and params[0] in (1, 2, 3):
        d = params[0]
        verts = list(range(d + 2))
        facets = itertools.combinations(verts, d + 1)
        return from_simplicial(SimplicialComplex.closure(verts, facets))
    if name == "torus" and len(params) == 2 and params[0] in (1, 2, 3) and params[1] >= 1:
        return _torus(*params)
    raise ValueError(f"unsupported space {name}{tuple(params) if params else ''}")


def parse_space(spec: str) -> ChainComplex:
    """Parse ``interval``, ``circle:L``, ``sphere:d`` or ``torus:d:L``."""
    name, *rest = spec.split(":")
    try:
        params = [int(p) for p in rest]
    except ValueError:
        raise ValueError(f"bad space parameters in '{spec}'") from None
    return build_space(name, *params)


# ---------------------------------------------------------------------------
# gauge complexes


def gauge_complex(groups: Mapping[int, Sequence[int]],
                  boundaries: Mapping[int, Sequence[Sequence[int]]] | None = None) -> ChainComplex:
    """Gauge complex from moduli lists and boundary matrices (target x source)."""
    data = {"groups": {str(n): list(m) for n, m in groups.items()},
            "boundary": {str(n): M for n, M in (boundaries or {}).items()}}
    return ChainComplex.from_json(data)


_ZN_AT = re.compile(r"z(\d+)-at-(-?\d+)$")


def build_gauge(name: str) -> ChainComplex:
    """Named gauge complexes.

    ``zN-at-k``: ``Z_N`` alone in degree ``k`` (``z2-at-1`` is the toric code).
    ``z4-z2``: ``Z_4 -> Z_2`` in degrees 2, 1 with ``1 -> 1``.
    ``trivial``: the zero complex.
    """
    if name == "trivial":
        return ChainComplex({})
    if name == "z4-z2":
        return gauge_complex({1: [2], 2: [4]}, {2: [[1]]})
    m = _ZN_AT.match(name)
    if m and int(m.group(1)) >= 2:
        return gauge_complex({int(m.group(2)): [int(m.group(1))]})
    raise ValueError(f"unknown gauge complex '{name}'")


parse_gauge = build_gauge


# ---------------------------------------------------------------------------
# homology


def homology_data(C: ChainComplex, n: int) -> Subquotient:
    """``ker d_n / im d_{n+1}`` with cycle/class bookkeeping."""
    return Subquotient(C.boundary_at(n + 1), C.boundary_at(n))


def homology(C: ChainComplex, n: int) -> AbelianGroup:
    """``H_n(C)`` in invariant-factor form."""
    return homology_data(C, n).group


def homology_table(C: ChainComplex, degrees: Iterable[int] | None = None) -> dict[int, str]:
    degs = C.degrees if degrees is None else degrees
    return {n: render_group(homology(C, n)) for n in degs}


def betti_numbers(C: ChainComplex) -> dict[int, int]:
    return {n: homology(C, n).rank for n in C.degrees}


def order_of(G: AbelianGroup) -> int | float:
    return G.order() if G.is_finite else math.inf
