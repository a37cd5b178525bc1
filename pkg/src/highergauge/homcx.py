"""The hom complex ``hom(C, G)``: cochains, coboundaries, characters and cohomology.

A degree-``p`` cochain assigns to every cell ``x`` of degree ``n`` an element of
``G_{n-p}``.  Coordinates are laid out by ascending ``n``, then cell order, then
the coordinates of ``G_{n-p}``, so ``hom(C, G)^p`` is just a diagonal
:class:`AbelianGroup` and the coboundary is an integer matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple

import numpy as np

from .abelian import (
    AbelianGroup,
    Character,
    GroupElement,
    GroupHomomorphism,
    RationalPhase,
    Subquotient,
    dual_of_hom,
)
from .complex import ChainComplex

__all__ = [
    "Block",
    "CohomologyClassSet",
    "Cochain",
    "DualCochain",
    "HomComplex",
    "cohomology",
    "delta",
    "delta_dual",
    "gauge_equivalent",
    "hom_group_flat",
    "is_flat",
    "local_dual",
    "local_map",
    "pairing",
]


class Block(NamedTuple):
    """Coordinates ``offset : offset + len(moduli)`` hold the value on cell ``label``."""

    degree: int
    index: int
    label: str
    offset: int
    moduli: tuple[int, ...]


class HomComplex:
    """``hom(C, G)`` for a free geometric complex ``C`` and a finite gauge complex ``G``."""

    def __init__(self, C: ChainComplex, G: ChainComplex):
        if C.basis is None or not C.is_free:
            raise ValueError("the geometric complex must be free with a cell basis")
        if not G.is_finite:
            raise ValueError("the gauge complex must consist of finite groups")
        self.C = C
        self.G = G
        self._layouts: dict[int, tuple[Block, ...]] = {}
        self._deltas: dict[int, GroupHomomorphism] = {}
        self._cohomology: dict[int, CohomologyClassSet] = {}

    # -- layout -------------------------------------------------------------

    def layout(self, p: int) -> tuple[Block, ...]:
        if p not in self._layouts:
            blocks, off = [], 0
            for n in self.C.degrees:
                mods = self.G.group_at(n - p).moduli
                if not mods:
                    continue
                for i, label in enumerate(self.C.cells(n)):
                    blocks.append(Block(n, i, label, off, mods))
                    off += len(mods)
            self._layouts[p] = tuple(blocks)
        return self._layouts[p]

    def group(self, p: int) -> AbelianGroup:
        """``hom(C, G)^p`` as a diagonal group."""
        return AbelianGroup(tuple(m for b in self.layout(p) for m in b.moduli))

    def dual_group(self, p: int) -> AbelianGroup:
        """``hom(C, G)_p``: same moduli, coordinates are character exponents."""
        return self.group(p)

    def order(self, p: int) -> int:
        return self.group(p).order()

    def block(self, p: int, degree: int, cell) -> Block:
        idx = cell if isinstance(cell, int) else self.C.basis.index(degree, cell)
        for b in self.layout(p):
            if b.degree == degree and b.index == idx:
                return b
        if 0 <= idx < len(self.C.cells(degree)):
            return Block(degree, idx, self.C.cells(degree)[idx], -1, ())
        raise KeyError(f"no cell {cell!r} in degree {degree}")

    def _degree_offsets(self, p: int) -> dict[int, int]:
        out = {}
        for b in self.layout(p):
            out.setdefault(b.degree, b.offset)
        return out

    # -- coboundaries -------------------------------------------------------

    def delta(self, p: int) -> GroupHomomorphism:
        """``(delta f)_n = f_{n-1} d^C_n - (-1)^p d^G_{n-p} f_n`` as a matrix."""
        if p in self._deltas:
            return self._deltas[p]
        src, tgt = self.group(p), self.group(p + 1)
        M = np.zeros((tgt.ngens, src.ngens), dtype=object)
        s_off, t_off = self._degree_offsets(p), self._degree_offsets(p + 1)
        sign = -1 if p % 2 == 0 else 1
        for n, t0 in t_off.items():
            g = self.G.group_at(n - p - 1).ngens
            ncells = len(self.C.cells(n))
            if n - 1 in s_off:
                dC = self.C.boundary_at(n).matrix
                s0 = s_off[n - 1]
                for y in range(ncells):
                    for x in np.nonzero(dC[:, y])[0]:
                        for c in range(g):
                            M[t0 + y * g + c, s0 + x * g + c] += dC[x, y]
            if n in s_off:
                dG = self.G.boundary_at(n - p).matrix
                h = self.G.group_at(n - p).ngens
                s0 = s_off[n]
                for y in range(ncells):
                    M[t0 + y * g: t0 + (y + 1) * g, s0 + y * h: s0 + (y + 1) * h] += sign * dG
        d = GroupHomomorphism(src, tgt, M)
        self._deltas[p] = d
        return d

    def delta_dual(self, p: int) -> GroupHomomorphism:
        """``hom(C, G)_p -> hom(C, G)_{p-1}``, adjoint to ``delta(p - 1)``."""
        return dual_of_hom(self.delta(p - 1))

    # -- cochains -----------------------------------------------------------

    def cochain(self, p: int, coords=None) -> Cochain:
        G = self.group(p)
        return Cochain(self, p, G.zero() if coords is None else G.element(coords))

    def dual_cochain(self, p: int, coords=None) -> DualCochain:
        G = self.dual_group(p)
        return DualCochain(self, p, G.zero() if coords is None else G.element(coords))

    def random_cochain(self, p: int, rng: np.random.Generator) -> Cochain:
        return Cochain(self, p, self.group(p).random_element(rng))

    def random_dual(self, p: int, rng: np.random.Generator) -> DualCochain:
        return DualCochain(self, p, self.dual_group(p).random_element(rng))

    def cohomology(self, p: int) -> CohomologyClassSet:
        if p not in self._cohomology:
            self._cohomology[p] = CohomologyClassSet(self, p)
        return self._cohomology[p]


def _check_same(a, b):
    if a.hc is not b.hc or a.p != b.p:
        raise ValueError("cochains live in different groups")


@dataclass(frozen=True, eq=False)
class Cochain:
    """Element of ``hom(C, G)^p``."""

    hc: HomComplex
    p: int
    value: GroupElement

    @property
    def coords(self) -> tuple[int, ...]:
        return self.value.coords

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and other.hc is self.hc and other.p == self.p
                and other.value == self.value)

    def __hash__(self):
        return hash((self.p, self.value.coords))

    def __add__(self, other: Cochain) -> Cochain:
        _check_same(self, other)
        return Cochain(self.hc, self.p, self.value + other.value)

    def __sub__(self, other: Cochain) -> Cochain:
        _check_same(self, other)
        return Cochain(self.hc, self.p, self.value - other.value)

    def __neg__(self) -> Cochain:
        return Cochain(self.hc, self.p, -self.value)

    def __mul__(self, k: int) -> Cochain:
        return Cochain(self.hc, self.p, self.value * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def at(self, degree: int, cell) -> GroupElement:
        """Value ``f_n(x)`` as an element of ``G_{n-p}``."""
        b = self.hc.block(self.p, degree, cell)
        G = self.hc.G.group_at(degree - self.p)
        return G.element(self.coords[b.offset: b.offset + len(b.moduli)])

    def components(self) -> Iterator[tuple[Block, GroupElement]]:
        for b in self.hc.layout(self.p):
            yield b, self.at(b.degree, b.index)

    def to_json(self) -> dict:
        comps = {f"{b.degree}/{b.label}": list(v.coords) for b, v in self.components()}
        return {"p": self.p, "components": comps}

    @classmethod
    def from_json(cls, hc: HomComplex, data: Mapping) -> Cochain:
        p = int(data["p"])
        coords = [0] * hc.group(p).ngens
        for key, vals in data.get("components", {}).items():
            deg, _, label = key.partition("/")
            b = hc.block(p, int(deg), label)
            if len(vals) != len(b.moduli):
                raise ValueError(f"component {key} needs {len(b.moduli)} coordinates")
            coords[b.offset: b.offset + len(vals)] = [int(v) for v in vals]
        return hc.cochain(p, coords)


@dataclass(frozen=True, eq=False)
class DualCochain:
    """Element of ``hom(C, G)_p``: one character of ``G_{n-p}`` per cell."""

    hc: HomComplex
    p: int
    value: GroupElement

    @property
    def coords(self) -> tuple[int, ...]:
        return self.value.coords

    def __eq__(self, other) -> bool:
        return (isinstance(other, DualCochain) and other.hc is self.hc and other.p == self.p
                and other.value == self.value)

    def __hash__(self):
        return hash((self.p, self.value.coords))

    def __add__(self, other: DualCochain) -> DualCochain:
        _check_same(self, other)
        return DualCochain(self.hc, self.p, self.value + other.value)

    def __neg__(self) -> DualCochain:
        return DualCochain(self.hc, self.p, -self.value)

    def __mul__(self, k: int) -> DualCochain:
        return DualCochain(self.hc, self.p, self.value * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def at(self, degree: int, cell) -> Character:
        b = self.hc.block(self.p, degree, cell)
        G = self.hc.G.group_at(degree - self.p)
        return Character(G, self.coords[b.offset: b.offset + len(b.moduli)])

    def character(self) -> Character:
        """``chi_m`` as a character of the whole group ``hom(C, G)^p``."""
        return Character(self.hc.group(self.p), self.coords)

    def __call__(self, f: Cochain) -> RationalPhase:
        return pairing(self, f)

    def to_json(self) -> dict:
        comps = {f"{b.degree}/{b.label}": list(self.coords[b.offset: b.offset + len(b.moduli)])
                 for b in self.hc.layout(self.p)}
        return {"p": self.p, "components": comps}


# ---------------------------------------------------------------------------
# functional interface


def hom_group_flat(C: ChainComplex, G: ChainComplex, p: int) -> tuple[AbelianGroup, HomComplex]:
    hc = HomComplex(C, G)
    return hc.group(p), hc


def delta(f: Cochain) -> Cochain:
    return Cochain(f.hc, f.p + 1, f.hc.delta(f.p)(f.value))


def delta_dual(m: DualCochain) -> DualCochain:
    return DualCochain(m.hc, m.p - 1, m.hc.delta_dual(m.p)(m.value))


def pairing(m: DualCochain, f: Cochain) -> RationalPhase:
    """``chi_m(f) = sum_n sum_x <m_n(x), f_n(x)>`` in Q/Z."""
    if m.hc is not f.hc or m.p != f.p:
        raise ValueError("pairing needs a dual cochain and a cochain of the same degree")
    return m.character()(f.coords)


def local_map(hc: HomComplex, p: int, degree: int, cell, g: GroupElement) -> Cochain:
    """The cochain equal to ``g`` on ``cell`` and zero elsewhere."""
    b = hc.block(p, degree, cell)
    if g.group != hc.G.group_at(degree - p):
        raise ValueError(f"value must lie in the gauge group of degree {degree - p}")
    coords = [0] * hc.group(p).ngens
    coords[b.offset: b.offset + len(b.moduli)] = g.coords
    return hc.cochain(p, coords)


def local_dual(hc: HomComplex, p: int, degree: int, cell, r: Character) -> DualCochain:
    """The dual cochain evaluating ``r`` on the value at ``cell``."""
    b = hc.block(p, degree, cell)
    if r.group != hc.G.group_at(degree - p):
        raise ValueError(f"character must be of the gauge group of degree {degree - p}")
    coords = [0] * hc.group(p).ngens
    coords[b.offset: b.offset + len(b.moduli)] = r.exponents
    return hc.dual_cochain(p, coords)


class CohomologyClassSet:
    """``H^p(C, G) = ker delta^p / im delta^{p-1}`` with representatives."""

    def __init__(self, hc: HomComplex, p: int):
        self.hc = hc
        self.p = p
        self._sq = Subquotient(hc.delta(p - 1), hc.delta(p))
        self.group = self._sq.group

    def order(self) -> int:
        return self.group.order()

    def class_of(self, f: Cochain) -> GroupElement:
        if f.hc is not self.hc or f.p != self.p:
            raise ValueError("cochain has the wrong degree or complex")
        return self._sq.class_of(f.value)

    def representative(self, e) -> Cochain:
        return Cochain(self.hc, self.p, self._sq.representative(e))

    def representatives(self) -> list[Cochain]:
        return [self.representative(e) for e in self.group.generators()]

    def is_cocycle(self, f: Cochain) -> bool:
        return self._sq.is_cycle(f.value)

    @property
    def cocycles(self) -> AbelianGroup:
        return self._sq.cycles

    @property
    def cocycle_inclusion(self) -> GroupHomomorphism:
        return self._sq.inclusion

    @property
    def coboundary_subgroup(self) -> AbelianGroup:
        return self._sq.boundaries_inclusion.source


def cohomology(C: ChainComplex, G: ChainComplex, p: int) -> CohomologyClassSet:
    return HomComplex(C, G).cohomology(p)


def is_flat(f: Cochain) -> bool:
    return f.hc.delta(f.p)(f.value).is_zero()


def gauge_equivalent(f: Cochain, g: Cochain) -> bool:
    """``f - g`` lies in the image of the coboundary from one degree below."""
    _check_same(f, g)
    return f.hc.delta(f.p - 1).contains_in_image((f - g).value)
