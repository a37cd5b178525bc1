"""Ground-state degeneracy and its three cohomological routes.

* direct: ``|H^0(C, G)|`` from the hom complex;
* product: ``prod_n |H^n(C, H_n(G))|``, realised by an explicit map built from a
  splitting of each ``H_n(G)`` back into ``ker d^G_n``;
* universal coefficients: ``prod_n |Hom(H_n C, H_n G)| * |Ext(H_{n-1} C, H_n G)|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .abelian import (
    AbelianGroup,
    GroupElement,
    GroupHomomorphism,
    Subquotient,
    ext_group,
    hom_group,
    kernel,
    render_group,
)
from .complex import ChainComplex, homology, homology_data
from .homcx import Cochain, HomComplex

__all__ = [
    "BrownMap",
    "CoefficientCohomology",
    "GsdReport",
    "Splitting",
    "SplittingError",
    "brown_iso",
    "build_splitting",
    "build_splittings",
    "cohomology_with_coefficients",
    "gsd",
    "uct_decomposition",
]


class SplittingError(ValueError):
    """Raised when ``ker d_n -> H_n`` admits no section."""


# ---------------------------------------------------------------------------
# cohomology with coefficients in a single group


class CoefficientCohomology:
    """``H^n(C; S)`` computed from ``d^n(f) = f o d_{n+1}`` on ``S``-valued cell functions."""

    def __init__(self, C: ChainComplex, S: AbelianGroup, n: int):
        if C.basis is None or not C.is_free:
            raise ValueError("the geometric complex must be free with a cell basis")
        if not S.is_finite:
            raise ValueError("coefficient group must be finite")
        self.C, self.S, self.n = C, S, n
        d_in = self._coboundary(n - 1)
        d_out = self._coboundary(n)
        self._sq = Subquotient(d_in, d_out)
        self.group = self._sq.group
        self.cochains = self._cochain_group(n)

    def _cochain_group(self, n: int) -> AbelianGroup:
        return AbelianGroup(self.S.moduli * len(self.C.basis[n]))

    def _coboundary(self, n: int) -> GroupHomomorphism:
        src, tgt = self._cochain_group(n), self._cochain_group(n + 1)
        D = self.C.boundary_at(n + 1).matrix
        s = self.S.ngens
        M = np.zeros((tgt.ngens, src.ngens), dtype=object)
        if M.size:
            M = np.kron(D.T, np.eye(s, dtype=int).astype(object))
        return GroupHomomorphism(src, tgt, M)

    def order(self) -> int:
        return self.group.order()

    def is_cocycle(self, f) -> bool:
        return self._sq.is_cycle(f)

    def class_of(self, f) -> GroupElement:
        return self._sq.class_of(f)

    def representative(self, e) -> GroupElement:
        return self._sq.representative(e)

    def value_at(self, f: GroupElement, cell: int) -> GroupElement:
        s = self.S.ngens
        return self.S.element(f.coords[cell * s:(cell + 1) * s])


def cohomology_with_coefficients(C: ChainComplex, S: AbelianGroup, n: int) -> AbelianGroup:
    return CoefficientCohomology(C, S, n).group


def uct_decomposition(C: ChainComplex, G: ChainComplex, n: int) -> tuple[AbelianGroup, AbelianGroup]:
    """``(Hom(H_n C, H_n G), Ext(H_{n-1} C, H_n G))``."""
    HG = homology(G, n)
    return hom_group(homology(C, n), HG)[0], ext_group(homology(C, n - 1), HG)


# ---------------------------------------------------------------------------
# splittings


@dataclass
class Splitting:
    """Sections ``phi_n: H_n(G) -> G_n`` landing in cycles, with ``pi_n o phi_n = id``.

    ``pi[n]`` is the projection from ``ker d_n`` (in its own coordinates) onto
    ``H_n(G)``; ``cycles[n]`` is the inclusion of ``ker d_n`` into ``G_n``.
    """

    phi: dict[int, GroupHomomorphism]
    pi: dict[int, GroupHomomorphism] = field(default_factory=dict)
    cycles: dict[int, GroupHomomorphism] = field(default_factory=dict)

    def certify(self, G: ChainComplex) -> bool:
        for n, phi in self.phi.items():
            if not (G.boundary_at(n) @ phi).is_zero():
                return False
            H = phi.source
            for e in H.generators():
                k = self.cycles[n].preimage(phi(e))
                if k is None or self.pi[n](k) != e:
                    return False
        return True

    def differs_from(self, other: Splitting) -> bool:
        return any(not self.phi[n].equals(other.phi[n]) for n in self.phi)


def _section_data(G: ChainComplex, n: int):
    sq = homology_data(G, n)
    H = sq.group
    cols, extras = [], []
    B = sq.boundaries_inclusion  # im d_{n+1} -> ker d_n
    for j, h in enumerate(H.moduli):
        e = H.generators()[j]
        k = sq.inclusion.preimage(sq.representative(e))  # a lift in cycle coordinates
        target = k * (-h)
        hB = B * h
        b = hB.preimage(target)
        if b is None:
            raise SplittingError(
                f"H_{n}(G) = {render_group(H)} does not split off ker d_{n}: "
                f"generator {j} has no lift of order dividing {h}")
        cols.append((k + B(b)).coords)
        K, inc = kernel(hB)
        extras.append([B(inc(g)) for g in K.generators()])
    return sq, cols, extras


def build_splittings(G: ChainComplex, limit: int = 2) -> list[Splitting]:
    """Up to ``limit`` distinct certified splittings (always at least one, or an error)."""
    if not G.is_finite:
        raise ValueError("gauge complex must be finite")
    data = {}
    for n in G.degrees:
        sq, cols, extras = _section_data(G, n)
        if sq.group.is_trivial:
            continue
        data[n] = (sq, cols, extras)

    def make(shift: tuple[int, int, GroupElement] | None) -> Splitting:
        phi, pi, cyc = {}, {}, {}
        for n, (sq, cols, _) in data.items():
            cs = [list(c) for c in cols]
            if shift is not None and shift[0] == n:
                j = shift[1]
                cs[j] = [a + b for a, b in zip(cs[j], shift[2].coords)]
            M = np.array(cs, dtype=object).T
            in_cycles = GroupHomomorphism(sq.group, sq.cycles, M)
            phi[n] = sq.inclusion @ in_cycles
            pi[n] = sq.projection
            cyc[n] = sq.inclusion
        s = Splitting(phi, pi, cyc)
        if not s.certify(G):
            raise SplittingError("constructed section failed its certificate")
        return s

    out = [make(None)]
    for n, (_, _, extras) in data.items():
        for j, alts in enumerate(extras):
            for c in alts:
                if len(out) >= limit:
                    return out
                if not c.is_zero():
                    out.append(make((n, j, c)))
    return out


def build_splitting(G: ChainComplex) -> Splitting:
    return build_splittings(G, limit=1)[0]


# ---------------------------------------------------------------------------
# the product map


class BrownMap:
    """The map ``sum_n H^n(C; H_n G) -> H^0(C, G)`` induced by ``f_n -> phi_n o f_n``."""

    def __init__(self, C: ChainComplex, G: ChainComplex, splitting: Splitting | None = None,
                 hc: HomComplex | None = None):
        self.C, self.G = C, G
        self.hc = hc if hc is not None else HomComplex(C, G)
        self.splitting = splitting if splitting is not None else build_splitting(G)
        self.H0 = self.hc.cohomology(0)
        self.factors: dict[int, CoefficientCohomology] = {}
        for n, phi in self.splitting.phi.items():
            self.factors[n] = CoefficientCohomology(C, phi.source, n)
        cols = []
        for n, fac in self.factors.items():
            for e in fac.group.generators():
                cols.append(self.apply_cocycles({n: fac.representative(e)}).coords)
        self.source = AbelianGroup(tuple(m for f in self.factors.values() for m in f.group.moduli))
        M = (np.array(cols, dtype=object).T if cols
             else np.zeros((self.H0.group.ngens, 0), dtype=object))
        self.hom = GroupHomomorphism(self.source, self.H0.group, M)

    def alpha(self, cocycles: dict[int, GroupElement]) -> Cochain:
        """The degree-0 cochain with components ``phi_n o f_n``."""
        coords = [0] * self.hc.group(0).ngens
        for n, f in cocycles.items():
            fac = self.factors.get(n)
            if fac is None:
                if not f.is_zero():
                    raise ValueError(f"H_{n}(G) is trivial; only the zero cocycle is allowed")
                continue
            if not fac.is_cocycle(f):
                raise ValueError(f"degree-{n} input is not a cocycle")
            phi = self.splitting.phi[n]
            for b in self.hc.layout(0):
                if b.degree == n:
                    v = phi(fac.value_at(f, b.index))
                    coords[b.offset: b.offset + len(b.moduli)] = v.coords
        return self.hc.cochain(0, coords)

    def apply_cocycles(self, cocycles: dict[int, GroupElement]) -> GroupElement:
        f = self.alpha(cocycles)
        return self.H0.class_of(f)

    def __call__(self, classes) -> GroupElement:
        return self.hom(classes)

    def split_source(self, x: GroupElement) -> dict[int, GroupElement]:
        out, i = {}, 0
        for n, fac in self.factors.items():
            k = fac.group.ngens
            out[n] = fac.group.element(x.coords[i:i + k])
            i += k
        return out

    def decompose(self, h: GroupElement) -> dict[int, GroupElement] | None:
        """Per-degree classes mapping onto ``h``, or ``None`` if ``h`` is not hit."""
        x = self.hom.preimage(h)
        return None if x is None else self.split_source(x)

    def is_injective(self) -> bool:
        return kernel(self.hom)[0].is_trivial

    def is_bijective(self) -> bool:
        return self.is_injective() and self.source.order() == self.H0.group.order()


def brown_iso(C: ChainComplex, G: ChainComplex, cocycles: dict[int, GroupElement],
              splitting: Splitting | None = None) -> GroupElement:
    return BrownMap(C, G, splitting).apply_cocycles(cocycles)


# ---------------------------------------------------------------------------
# the report


@dataclass
class GsdReport:
    direct: int
    brown_factors: dict[int, int]
    uct_factors: dict[int, tuple[int, int]] | None
    cohomology: str = ""

    @property
    def brown_product(self) -> int:
        return math.prod(self.brown_factors.values())

    @property
    def uct_product(self) -> int | None:
        if self.uct_factors is None:
            return None
        return math.prod(h * e for h, e in self.uct_factors.values())

    @property
    def brown_agrees(self) -> bool:
        return self.direct == self.brown_product

    @property
    def uct_agrees(self) -> bool | None:
        if self.uct_factors is None:
            return None
        return self.direct == self.uct_product and all(
            self.brown_factors[n] == h * e for n, (h, e) in self.uct_factors.items())

    @property
    def agree(self) -> bool:
        return self.brown_agrees and self.uct_agrees is not False

    def to_json(self) -> dict:
        uct = None if self.uct_factors is None else {
            str(n): {"hom": h, "ext": e} for n, (h, e) in sorted(self.uct_factors.items())}
        return {
            "gsd": self.direct,
            "direct": self.direct,
            "h0": self.cohomology,
            "brown": {"factors": {str(n): v for n, v in sorted(self.brown_factors.items())},
                      "product": self.brown_product, "agrees": self.brown_agrees},
            "uct": ("not applicable" if uct is None else
                    {"factors": uct, "product": self.uct_product, "agrees": self.uct_agrees}),
            "agree": self.agree,
        }


def gsd(C: ChainComplex, G: ChainComplex, hc: HomComplex | None = None) -> GsdReport:
    """All three routes to ``|H^0(C, G)|``."""
    hc = hc if hc is not None else HomComplex(C, G)
    H0 = hc.cohomology(0)
    brown, uct = {}, {} if C.is_free else None
    for n in G.degrees:
        HG = homology(G, n)
        if HG.is_trivial:
            continue
        brown[n] = CoefficientCohomology(C, HG, n).order()
        if uct is not None:
            h, e = uct_decomposition(C, G, n)
            uct[n] = (h.order(), e.order())
    return GsdReport(H0.order(), brown, uct, render_group(H0.group))
