"""Ground states, measurement operators and the Hamiltonian spectrum."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from ..abelian import Character, GroupElement, dual_of_hom
from ..complex import ChainComplex
from ..homcx import Cochain, DualCochain, HomComplex
from ..invariants import BrownMap, Splitting
from .algebra import _power_table
from .hilbert import DEFAULT_MAX_COUNT, DEFAULT_MAX_DIM, CapExceeded, HilbertSpace, MonomialOperator
from .projectors import RationalVector, gauge_orbit_counts

__all__ = [
    "GroundSpace",
    "GroundState",
    "SpectrumReport",
    "hamiltonian_spectrum",
    "preserves_ray",
]


@dataclass
class GroundState:
    """``A0 |f>`` for a flat representative ``f`` of the class ``label``."""

    label: GroupElement
    representative: Cochain
    vector: RationalVector


def preserves_ray(op: MonomialOperator, state: RationalVector) -> bool:
    """Whether ``op |psi>`` is a scalar multiple of ``|psi>`` (exact)."""
    supp = state.support
    if not supp.size:
        return True
    img = op.perm[supp]
    if not np.array_equal(np.sort(img), supp):
        return False
    a, b = state.numerator[supp], state.numerator[img]
    # op|psi> has amplitude omega^phase[i] a_i at img_i; compare with lambda * b_i
    ph = op.phase[supp]
    if not np.all(a * b[0] == b * a[0]):
        return False
    return bool(np.all(ph == ph[0]))


class GroundSpace:
    """Ground-state basis and measurement operators on the brute-force space."""

    def __init__(self, C: ChainComplex, G: ChainComplex, max_dim: int = DEFAULT_MAX_COUNT,
                 max_count: int = DEFAULT_MAX_COUNT, hc: HomComplex | None = None):
        self.hc = hc if hc is not None else HomComplex(C, G)
        self.space = HilbertSpace(self.hc, max_dim)
        self.H0 = self.hc.cohomology(0)
        self._shifts, self._counts, self._order = gauge_orbit_counts(self.space, max_count)

    # -- basis --------------------------------------------------------------

    def orbit_state(self, f: Cochain) -> RationalVector:
        """``A0 |f> = |hom^-1|^-1 sum_t |f + delta t>``."""
        sp_ = self.space
        v = np.zeros(sp_.dim, dtype=np.int64)
        base = np.array(f.coords, dtype=np.int64)
        if sp_.moduli.size:
            idx = sp_.encode(base + self._shifts)
        else:
            idx = np.zeros(len(self._shifts), dtype=np.int64)
        np.add.at(v, idx, self._counts)
        return RationalVector(v, self._order)

    def classes(self) -> list[GroupElement]:
        return list(self.H0.group.elements())

    def ground_basis(self) -> list[GroundState]:
        out = []
        for e in self.classes():
            f = self.H0.representative(e)
            out.append(GroundState(e, f, self.orbit_state(f)))
        return out

    def gram(self, states: list[GroundState] | None = None) -> list[list[Fraction]]:
        states = states if states is not None else self.ground_basis()
        return [[a.vector.dot(b.vector) for b in states] for a in states]

    # -- measurements -------------------------------------------------------

    def lift_dual_class(self, k) -> DualCochain:
        """A closed dual configuration ``m`` whose character on flat ``f`` is ``k([f])``."""
        H = self.H0.group
        kc = k.exponents if isinstance(k, Character) else tuple(k)
        on_cycles = dual_of_hom(self.H0._sq.projection)(H.element(kc))
        restrict = dual_of_hom(self.H0.cocycle_inclusion)
        m = restrict.preimage(on_cycles)
        if m is None:
            raise ArithmeticError("dual class does not extend to a configuration character")
        dm = DualCochain(self.hc, 0, m)
        if not self.hc.delta_dual(0)(m).is_zero():
            raise ArithmeticError("lifted dual class is not closed")
        return dm

    def measurement_op(self, k) -> MonomialOperator:
        return self.space.clock(self.lift_dual_class(k))

    def class_pairing(self, k, h: GroupElement) -> int:
        """``chi_k(h)`` in units of ``1/N`` for ``k`` in the dual of ``H^0``."""
        kc = k.exponents if isinstance(k, Character) else tuple(k)
        q = Character(self.H0.group, kc)(h).value * self.space.N
        assert q.denominator == 1
        return int(q) % self.space.N

    def selector_action(self, target: GroupElement, state: GroundState) -> list[tuple[int, ...]]:
        """Apply ``Q^[target] = |H|^-1 sum_k conj(chi_k(target)) Q_k`` to a ground state.

        Returns, for each support index of the state, the cyclotomic coordinates
        of ``|H| * (amplitude ratio)``; an exact Kronecker delta shows up as
        ``(|H|, 0, ...)`` or all zeros.
        """
        H = self.H0.group
        N = self.space.N
        table = np.array(_power_table(N), dtype=np.int64)
        supp = state.vector.support
        hist = np.zeros((len(supp), N), dtype=np.int64)
        for kc in H.elements():
            Q = self.measurement_op(kc.coords)
            shift = (Q.phase[supp] - self.class_pairing(kc.coords, target)) % N
            hist[np.arange(len(supp)), shift] += 1
        return [tuple(int(x) for x in row) for row in hist @ table]

    def selector_is_delta(self, target: GroupElement, state: GroundState) -> bool:
        rows = self.selector_action(target, state)
        width = len(rows[0]) if rows else 1
        want = (self.H0.group.order(),) + (0,) * (width - 1) if target == state.label \
            else (0,) * width
        return all(r == want for r in rows)

    # -- string operators ---------------------------------------------------

    def string_factorization(self, h: GroupElement, splitting: Splitting | None = None,
                             brown: BrownMap | None = None) -> dict[int, MonomialOperator]:
        """Per-degree shifts ``P_{alpha(f_n)}`` whose product moves ``|0_G>`` to ``|h_G>``."""
        brown = brown if brown is not None else BrownMap(self.hc.C, self.hc.G, splitting, self.hc)
        parts = brown.decompose(h)
        if parts is None:
            raise ArithmeticError("class is not in the image of the product map")
        out = {}
        for n, c in parts.items():
            f_n = brown.factors[n].representative(c)
            out[n] = self.space.shift(brown.alpha({n: f_n}))
        return out


@dataclass
class SpectrumReport:
    eigenvalues: np.ndarray
    ground_energy: float
    multiplicity: int
    n_terms: int

    def to_json(self) -> dict:
        return {"eigenvalues": [round(float(x), 10) for x in self.eigenvalues],
                "ground_energy": round(self.ground_energy, 10),
                "ground_multiplicity": self.multiplicity, "local_terms": self.n_terms}


def _shift_matrix(space: HilbertSpace, u: np.ndarray) -> sp.csr_matrix:
    n = space.dim
    rows = space.encode(space.states + u) if space.moduli.size else np.zeros(n, np.int64)
    return sp.csr_matrix((np.ones(n), (rows, np.arange(n))), shape=(n, n))


def hamiltonian_matrix(hc: HomComplex, space: HilbertSpace) -> tuple[np.ndarray, int]:
    """Dense ``-sum_x A_x^0 - sum_y B_y^0`` and the number of local terms."""
    C, G = hc.C, hc.G
    n = space.dim
    Hm = sp.csr_matrix((n, n))
    d0 = hc.delta(0)
    D = np.array(d0.matrix, dtype=np.int64).reshape(d0.target.ngens, d0.source.ngens)
    tmods = np.array(d0.target.moduli, dtype=np.int64)
    hol = np.mod(space.states @ D.T, tmods) if tmods.size else np.zeros((n, 0), np.int64)
    blocks1 = {(b.degree, b.index): b for b in hc.layout(1)}
    dm1 = hc.delta(-1)
    terms = 0
    for deg in C.degrees:
        Gn1 = G.group_at(deg + 1)
        for x in range(len(C.cells(deg))):
            terms += 2
            # gauge average at x
            A = sp.csr_matrix((n, n))
            for g in Gn1.elements():
                t = [0] * hc.group(-1).ngens
                b = hc.block(-1, deg, x)
                t[b.offset:b.offset + len(b.moduli)] = g.coords
                u = np.array(dm1(t).coords, dtype=np.int64)
                A = A + _shift_matrix(space, u)
            Hm = Hm - A / Gn1.order()
            # trivial local holonomy at x
            b = blocks1.get((deg, x))
            if b is None:
                Hm = Hm - sp.identity(n, format="csr")
            else:
                ok = ~hol[:, b.offset:b.offset + len(b.moduli)].any(axis=1)
                Hm = Hm - sp.diags(ok.astype(float), format="csr")
    return Hm.toarray(), terms


def hamiltonian_spectrum(C: ChainComplex, G: ChainComplex, max_dim: int = DEFAULT_MAX_DIM,
                         tol: float = 1e-8, hc: HomComplex | None = None) -> SpectrumReport:
    hc = hc if hc is not None else HomComplex(C, G)
    if hc.order(0) > max_dim:
        raise CapExceeded(f"dimension {hc.order(0)} exceeds the dense cap of {max_dim}")
    space = HilbertSpace(hc, max_dim)
    Hm, terms = hamiltonian_matrix(hc, space)
    if not np.allclose(Hm, Hm.T, atol=1e-12):
        raise ArithmeticError("Hamiltonian is not symmetric")
    ev = np.linalg.eigvalsh(Hm)
    e0 = float(ev[0])
    mult = int(np.count_nonzero(np.abs(ev - e0) <= tol))
    return SpectrumReport(ev, e0, mult, terms)
