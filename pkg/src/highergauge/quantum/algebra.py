"""Exact operator algebra in the shift/clock basis.

Every operator on ``C[hom(C, G)^0]`` is uniquely a linear combination of the
products ``P_u Q_m`` (``u`` a configuration, ``m`` a dual configuration), so an
operator can be stored as a dictionary ``(u, m) -> coefficient`` without ever
forming a matrix.  Products follow from ``Q_m P_u = chi_m(u) P_u Q_m``.
Coefficients live in the cyclotomic field ``Q(zeta_N)``.

Conventions: weighted sums over characters carry the complex conjugate
weight, e.g. ``A_x^r = |G|^-1 sum_g conj(chi_r(g)) A_{g x*}``.  With this choice
``A_x^r`` and the global ``A_s`` project onto the ``r``-eigenspaces of the gauge
shifts, which is what the exchange relations below need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols, totient

from ..abelian import Character, GroupElement, image, kernel
from ..homcx import Cochain, DualCochain, HomComplex, local_dual, local_map
from .hilbert import HilbertSpace, MonomialOperator

__all__ = [
    "Cyclotomic",
    "OperatorAlgebra",
    "PropertyResult",
    "ShiftClockSum",
    "run_algebra_suite",
]


# ---------------------------------------------------------------------------
# cyclotomic numbers


@lru_cache(maxsize=None)
def _power_table(N: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of ``zeta^k`` (``0 <= k < N``) in the power basis mod ``Phi_N``."""
    x = symbols("x")
    phi = Poly(cyclotomic_poly(N, x), x)
    deg = int(totient(N))
    rows = []
    for k in range(N):
        r = Poly(x ** k, x).rem(phi)
        c = [0] * deg
        for (e,), v in r.terms():
            c[e] = int(v)
        rows.append(tuple(c))
    return tuple(rows)


@dataclass(frozen=True)
class Cyclotomic:
    """Element of ``Q(zeta_N)`` in the power basis reduced modulo ``Phi_N``."""

    N: int
    coeffs: tuple[Fraction, ...]

    @classmethod
    def from_powers(cls, N: int, weights: dict[int, Fraction | int]) -> Cyclotomic:
        """``sum_k weights[k] * zeta^k``."""
        table = _power_table(N)
        out = [Fraction(0)] * len(table[0])
        for k, w in weights.items():
            if w:
                for i, c in enumerate(table[k % N]):
                    if c:
                        out[i] += c * w
        return cls(N, tuple(out))

    @classmethod
    def root(cls, N: int, k: int, scale: Fraction | int = 1) -> Cyclotomic:
        return cls.from_powers(N, {k % N: Fraction(scale)})

    @classmethod
    def rational(cls, N: int, q) -> Cyclotomic:
        return cls.from_powers(N, {0: Fraction(q)})

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: Cyclotomic) -> Cyclotomic:
        return Cyclotomic(self.N, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.N, tuple(-a for a in self.coeffs))

    def __sub__(self, other: Cyclotomic) -> Cyclotomic:
        return self + (-other)

    def __mul__(self, other) -> Cyclotomic:
        if not isinstance(other, Cyclotomic):
            return Cyclotomic(self.N, tuple(a * other for a in self.coeffs))
        if other.is_rational():
            return self * other.coeffs[0]
        if self.is_rational():
            return other * self.coeffs[0]
        prod: dict[int, Fraction] = {}
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = (i + j) % self.N
                        prod[k] = prod.get(k, 0) + a * b
        return Cyclotomic.from_powers(self.N, prod)

    __rmul__ = __mul__

    def times_root(self, k: int) -> Cyclotomic:
        if not k % self.N:
            return self
        return Cyclotomic.from_powers(self.N, {(i + k) % self.N: c
                                               for i, c in enumerate(self.coeffs) if c})

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_complex(self) -> complex:
        z = np.exp(2j * np.pi / self.N)
        return complex(sum(float(c) * z ** i for i, c in enumerate(self.coeffs)))


# ---------------------------------------------------------------------------
# operators as shift/clock sums


Key = tuple[tuple[int, ...], tuple[int, ...]]


class ShiftClockSum:
    """``sum c_(u, m) P_u Q_m`` with exact cyclotomic coefficients."""

    def __init__(self, alg: OperatorAlgebra, terms: dict[Key, Cyclotomic] | None = None):
        self.alg = alg
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    def __add__(self, other: ShiftClockSum) -> ShiftClockSum:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return ShiftClockSum(self.alg, out)

    def __neg__(self) -> ShiftClockSum:
        return ShiftClockSum(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: ShiftClockSum) -> ShiftClockSum:
        return self + (-other)

    def scale(self, c) -> ShiftClockSum:
        return ShiftClockSum(self.alg, {k: v * c for k, v in self.terms.items()})

    def __matmul__(self, other: ShiftClockSum) -> ShiftClockSum:
        alg = self.alg
        out: dict[Key, Cyclotomic] = {}
        for (u1, m1), c1 in self.terms.items():
            for (u2, m2), c2 in other.terms.items():
                k = alg.pair(m1, u2)
                key = (alg.add0(u1, u2), alg.add0(m1, m2))
                c = (c1 * c2).times_root(k)
                out[key] = out[key] + c if key in out else c
        return ShiftClockSum(alg, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, ShiftClockSum) and (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def commutator(self, other: ShiftClockSum) -> ShiftClockSum:
        return self @ other - other @ self

    def to_dense(self, space: HilbertSpace) -> np.ndarray:
        """Floating-point matrix (for cross-checks on small spaces)."""
        alg = self.alg
        out = np.zeros((space.dim, space.dim), dtype=complex)
        for (u, m), c in self.terms.items():
            op = space.shift(alg.hc.cochain(0, u)) @ space.clock(alg.hc.dual_cochain(0, m))
            out += c.to_complex() * op.to_sparse().toarray()
        return out


class OperatorAlgebra:
    """Builders for the model's operators as :class:`ShiftClockSum` values."""

    def __init__(self, hc: HomComplex):
        self.hc = hc
        self.G0 = hc.group(0)
        self.mods = self.G0.moduli
        # phases of local projectors live in the characters of hom^-1 and hom^1 too
        self.N = math.lcm(self.G0.exponent, hc.group(-1).exponent, hc.group(1).exponent)
        self.zero = (0,) * self.G0.ngens
        self._weights = tuple(self.N // m for m in self.mods)

    # -- primitive pieces ---------------------------------------------------

    def add0(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.mods))

    def pair(self, m, u) -> int:
        """``chi_m(u)`` as an integer multiple of ``1/N``."""
        return sum(a * b * w for a, b, w in zip(m, u, self._weights)) % self.N

    def one(self) -> ShiftClockSum:
        return ShiftClockSum(self, {(self.zero, self.zero): Cyclotomic.rational(self.N, 1)})

    def P(self, u) -> ShiftClockSum:
        u = u.coords if isinstance(u, Cochain) else tuple(u)
        return ShiftClockSum(self, {(tuple(int(x) for x in self.G0.reduce(u)), self.zero):
                                    Cyclotomic.rational(self.N, 1)})

    def Q(self, m) -> ShiftClockSum:
        m = m.coords if isinstance(m, DualCochain) else tuple(m)
        return ShiftClockSum(self, {(self.zero, tuple(int(x) for x in self.G0.reduce(m))):
                                    Cyclotomic.rational(self.N, 1)})

    def A(self, t: Cochain) -> ShiftClockSum:
        return self.P(self.hc.delta(-1)(t.value).coords)

    def B(self, m: DualCochain) -> ShiftClockSum:
        return self.Q(self.hc.delta_dual(1)(m.value).coords)

    def _root(self, q: Fraction) -> int:
        """Exponent ``k`` with ``exp(2 pi i q) = zeta_N^k``."""
        k = q * self.N
        if k.denominator != 1:
            raise ValueError(f"phase {q} is not an N-th root of unity")
        return int(k) % self.N

    # -- local projectors ---------------------------------------------------

    def local_A(self, degree: int, cell, r: Character) -> ShiftClockSum:
        """``A_x^r = |G_{n+1}|^-1 sum_g conj(chi_r(g)) A_{g x*}``."""
        Gn1 = self.hc.G.group_at(degree + 1)
        out = ShiftClockSum(self)
        w = Fraction(1, Gn1.order())
        for g in Gn1.elements():
            t = local_map(self.hc, -1, degree, cell, g)
            k = self._root(-r(g).value)
            out = out + self.A(t).scale(Cyclotomic.root(self.N, k, w))
        return out

    def local_B(self, degree: int, cell, g: GroupElement) -> ShiftClockSum:
        """``B_y^g = |G_{n-1}|^-1 sum_r conj(chi_r(g)) B_{r y*}``: local holonomy equals ``g``."""
        Gm1 = self.hc.G.group_at(degree - 1)
        out = ShiftClockSum(self)
        w = Fraction(1, Gm1.order())
        for rc in Gm1.elements():
            r = Character(Gm1, rc.coords)
            m = local_dual(self.hc, 1, degree, cell, r)
            k = self._root(-r(g).value)
            out = out + self.B(m).scale(Cyclotomic.root(self.N, k, w))
        return out

    def hamiltonian(self) -> ShiftClockSum:
        """``-sum_x A_x^0 - sum_y B_y^0`` over every cell of the geometric complex."""
        C, G = self.hc.C, self.hc.G
        out = ShiftClockSum(self)
        for n in C.degrees:
            triv_a = Character(G.group_at(n + 1), (0,) * G.group_at(n + 1).ngens)
            zero_b = G.group_at(n - 1).zero()
            for x in range(len(C.cells(n))):
                out = out - self.local_A(n, x, triv_a) - self.local_B(n, x, zero_b)
        return out

    def n_local_terms(self) -> int:
        return 2 * sum(len(self.hc.C.cells(n)) for n in self.hc.C.degrees)

    # -- global projectors --------------------------------------------------

    def global_A(self, s: DualCochain) -> ShiftClockSum:
        """``A_s = |hom^-1|^-1 sum_t conj(chi_s(t)) A_t``, summed over ``im delta^{-1}``.

        Terms with equal ``delta t`` are merged: the sum over a coset of
        ``ker delta^{-1}`` vanishes unless ``s`` kills that kernel, and otherwise
        contributes ``|ker| conj(chi_s(t0))``.
        """
        if s.p != -1:
            raise ValueError("gauge projector labels have degree -1")
        d = self.hc.delta(-1)
        K, kinc = kernel(d)
        chi = s.character()
        if any(not chi(kinc(g)).is_zero() for g in K.generators()):
            return ShiftClockSum(self)
        return self._coset_sum(d, chi, shifts=True)

    def global_B(self, v: Cochain) -> ShiftClockSum:
        """``B_v = |hom_1|^-1 sum_m conj(chi_m(v)) B_m``: projector onto ``delta^0 f = v``."""
        if v.p != 1:
            raise ValueError("flux projector labels have degree 1")
        d = self.hc.delta_dual(1)
        K, kinc = kernel(d)
        # chi_m(v) with m in ker delta_1 must vanish for a nonzero projector
        for g in K.generators():
            if not Character(self.hc.group(1), kinc(g).coords)(v.coords).is_zero():
                return ShiftClockSum(self)
        chi = Character(self.hc.group(1), v.coords)
        return self._coset_sum(d, chi, shifts=False)

    def _coset_sum(self, d, chi, shifts: bool) -> ShiftClockSum:
        """``|im d|^-1 sum_{u in im d} conj(chi(t_u)) X_u`` with ``d t_u = u``."""
        I, inc = image(d)
        n_src = d.source.ngens
        L = np.array([d.preimage(inc(e)).coords for e in I.generators()],
                     dtype=np.int64).reshape(I.ngens, n_src)
        if I.ngens:
            grid = np.indices(I.moduli).reshape(I.ngens, -1).T.astype(np.int64)
        else:
            grid = np.zeros((1, 0), dtype=np.int64)
        smods = np.array(d.source.moduli, dtype=np.int64)
        T = np.mod(grid @ L, smods) if n_src else grid @ L
        D = np.array(d.matrix, dtype=np.int64).reshape(d.target.ngens, n_src)
        U = np.mod(T @ D.T, np.array(self.mods, dtype=np.int64)) if self.mods else T @ D.T
        # chi(t) in units of 1/N
        cw = np.array([e * (self.N // m) for e, m in zip(chi.exponents, d.source.moduli)],
                      dtype=np.int64)
        K = np.mod(-(T @ cw), self.N) if n_src else np.zeros(len(T), dtype=np.int64)
        w = Fraction(1, I.order())
        coeff = {k: Cyclotomic.root(self.N, k, w) for k in set(K.tolist())}
        out: dict[Key, Cyclotomic] = {}
        for u, k in zip(map(tuple, U.tolist()), K.tolist()):
            out[(u, self.zero) if shifts else (self.zero, u)] = coeff[k]
        return ShiftClockSum(self, out)

    def global_A_from_locals(self, s: DualCochain) -> ShiftClockSum:
        """``prod_n prod_x A_x^{s_n(x)}``."""
        out = self.one()
        for b in self.hc.layout(-1):
            out = out @ self.local_A(b.degree, b.index, s.at(b.degree, b.index))
        return out


# ---------------------------------------------------------------------------
# the randomized identity suite


@dataclass
class PropertyResult:
    name: str
    passed: bool
    instances: int
    detail: str = ""

    def line(self) -> str:
        count = "all cells at once" if self.instances == 1 else f"{self.instances} instances"
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  ({count})" + \
            (f"  {self.detail}" if self.detail else "")


def _cells(hc: HomComplex, p: int):
    return [(b.degree, b.index) for b in hc.layout(p)]


def run_algebra_suite(hc: HomComplex, seed: int = 0, instances: int = 100,
                      space: HilbertSpace | None = None) -> list[PropertyResult]:
    """Randomized exact checks of the operator identities of the model."""
    rng = np.random.default_rng(seed)
    space = space if space is not None else HilbertSpace(hc)
    alg = OperatorAlgebra(hc)
    results = []

    def check(name, fn, n=instances):
        ok, bad = True, ""
        for i in range(n):
            if not fn():
                ok, bad = False, f"first failure at instance {i}"
                break
        results.append(PropertyResult(name, ok, n, bad))

    r0 = lambda: hc.random_cochain(0, rng)
    rd0 = lambda: hc.random_dual(0, rng)
    rm1 = lambda: hc.random_cochain(-1, rng)
    rd1 = lambda: hc.random_dual(1, rng)

    def p_law():
        a, b = r0(), r0()
        return space.shift(a) @ space.shift(b) == space.shift(a + b)

    def q_law():
        a, b = rd0(), rd0()
        return space.clock(a) @ space.clock(b) == space.clock(a + b)

    def pq_phase():
        t, m = r0(), rd0()
        k = m(t).value * space.N
        return space.clock(m) @ space.shift(t) == \
            (space.shift(t) @ space.clock(m)).times_phase(int(k))

    def a_law():
        a, b = rm1(), rm1()
        return space.gauge_op(a) @ space.gauge_op(b) == space.gauge_op(a + b)

    def b_law():
        a, b = rd1(), rd1()
        return space.holonomy_op(a) @ space.holonomy_op(b) == space.holonomy_op(a + b)

    def ab_commute():
        t, m = rm1(), rd1()
        A, B = space.gauge_op(t), space.holonomy_op(m)
        return A @ B == B @ A

    def flux_exchange():
        f = r0()
        # half the labels are attainable fluxes, so the projector is nonzero
        v = delta_of(hc, r0()) if rng.integers(2) else hc.random_cochain(1, rng)
        lhs = alg.P(f) @ alg.global_B(v)
        rhs = alg.global_B(v + delta_of(hc, f)) @ alg.P(f)
        return lhs == rhs

    def charge_exchange():
        m = rd0()
        s = hc.random_dual(-1, rng) if rng.integers(2) else _closed_charge(hc, rng)
        lhs = alg.global_A(s) @ alg.Q(m)
        rhs = alg.Q(m) @ alg.global_A(s + _delta0_dual(hc, m))
        return lhs == rhs

    cells_a = _cells(hc, -1)
    cells_b = _cells(hc, 1)

    def local_a_algebra():
        if not cells_a:
            return True
        n, x = cells_a[rng.integers(len(cells_a))]
        Gn = hc.G.group_at(n + 1)
        r1 = Character(Gn, Gn.random_element(rng).coords)
        r2 = Character(Gn, Gn.random_element(rng).coords)
        A1, A2 = alg.local_A(n, x, r1), alg.local_A(n, x, r2)
        expect = A1 if r1 == r2 else ShiftClockSum(alg)
        return A1 @ A2 == expect

    def local_b_algebra():
        if not cells_b:
            return True
        n, y = cells_b[rng.integers(len(cells_b))]
        Gm = hc.G.group_at(n - 1)
        g1, g2 = Gm.random_element(rng), Gm.random_element(rng)
        B1, B2 = alg.local_B(n, y, g1), alg.local_B(n, y, g2)
        expect = B1 if g1 == g2 else ShiftClockSum(alg)
        return B1 @ B2 == expect

    def completeness():
        ok = True
        for n, x in cells_a:
            Gn = hc.G.group_at(n + 1)
            tot = ShiftClockSum(alg)
            for e in Gn.elements():
                tot = tot + alg.local_A(n, x, Character(Gn, e.coords))
            ok &= tot == alg.one()
        for n, y in cells_b:
            tot = ShiftClockSum(alg)
            for g in hc.G.group_at(n - 1).elements():
                tot = tot + alg.local_B(n, y, g)
            ok &= tot == alg.one()
        return ok

    H = alg.hamiltonian()

    def h_commutes_a():
        if not cells_a:
            return True
        n, x = cells_a[rng.integers(len(cells_a))]
        Gn = hc.G.group_at(n + 1)
        return H.commutator(alg.local_A(n, x, Character(Gn, Gn.random_element(rng).coords))).is_zero()

    def h_commutes_b():
        if not cells_b:
            return True
        n, y = cells_b[rng.integers(len(cells_b))]
        return H.commutator(alg.local_B(n, y, hc.G.group_at(n - 1).random_element(rng))).is_zero()

    def local_decomposition():
        s = hc.random_dual(-1, rng) if rng.integers(2) else _closed_charge(hc, rng)
        return alg.global_A(s) == alg.global_A_from_locals(s)

    check("shift group law P_a P_b = P_(a+b)", p_law)
    check("clock group law Q_a Q_b = Q_(a+b)", q_law)
    check("clock-shift phase Q_m P_t = chi_m(t) P_t Q_m", pq_phase)
    check("gauge group law A_a A_b = A_(a+b)", a_law)
    check("holonomy group law B_a B_b = B_(a+b)", b_law)
    check("gauge and holonomy operators commute", ab_commute)
    check("flux exchange P_f B_v = B_(v + delta f) P_f", flux_exchange)
    check("charge exchange A_s Q_m = Q_m A_(s + delta m)", charge_exchange)
    check("local gauge projectors orthogonal", local_a_algebra)
    check("local flux projectors orthogonal", local_b_algebra)
    check("local projectors complete", completeness, n=1)
    check("Hamiltonian commutes with local gauge projectors", h_commutes_a)
    check("Hamiltonian commutes with local flux projectors", h_commutes_b)
    check("global gauge projector factorizes into local ones", local_decomposition)
    return results


def delta_of(hc: HomComplex, f: Cochain) -> Cochain:
    return Cochain(hc, f.p + 1, hc.delta(f.p)(f.value))


def _delta0_dual(hc: HomComplex, m: DualCochain) -> DualCochain:
    return DualCochain(hc, m.p - 1, hc.delta_dual(m.p)(m.value))


def _closed_charge(hc: HomComplex, rng) -> DualCochain:
    """A degree -1 label killing ``ker delta^{-1}`` (so its projector is nonzero)."""
    m = hc.random_dual(0, rng)
    return _delta0_dual(hc, m)
