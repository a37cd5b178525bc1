import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from highergauge.abelian import (
    AbelianGroup,
    Character,
    GroupHomomorphism,
    PresentedAbelianGroup,
    Subquotient,
    canonicalize,
    dual_group,
    ext_group,
    hermite_normal_form,
    hom_group,
    image,
    int_matrix,
    kernel,
    quotient,
    smith_normal_form,
    solve_integer,
    subgroup,
)
from highergauge.abelian import iter_coords


# -- independent oracles ----------------------------------------------------


def determinantal_factors(M):
    """Invariant factors from gcds of k x k minors (d_k = D_k / D_{k-1})."""
    A = sympy.Matrix(M)
    m, n = A.shape
    prev, out = 1, []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, int(A.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def brute_hom_count(A, B):
    """Count assignments of generator images respecting the orders of A's generators."""
    count = 0
    for imgs in itertools.product(list(iter_coords(B)), repeat=len(A)):
        ok = all(all((a * c) % b == 0 for c, b in zip(img, B)) for a, img in zip(A, imgs))
        count += ok
    return count


def brute_kernel_size(f):
    return sum(f(x).is_zero() for x in f.source.elements())


def brute_image_size(f):
    return len({f(x) for x in f.source.elements()})


# -- smith normal form ------------------------------------------------------


def test_snf_examples():
    _, D, _ = smith_normal_form([[2, 4], [6, 8]])
    assert (D[0, 0], D[1, 1]) == (2, 4)
    _, D, _ = smith_normal_form([[2, 0], [0, 3]])
    assert (D[0, 0], D[1, 1]) == (1, 6)
    U, D, V = smith_normal_form(np.zeros((2, 3), dtype=int))
    assert not D.any()
    _, D, _ = smith_normal_form([[0]])
    assert D[0, 0] == 0


def test_snf_large_entries_stay_exact():
    big = 10 ** 30
    U, D, V = smith_normal_form([[big, 0], [0, big * 3]])
    assert (D[0, 0], D[1, 1]) == (big, 3 * big)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30), st.data())
def test_snf_roundtrip(m, n, data):
    M = np.array(data.draw(st.lists(st.integers(-50, 50), min_size=m * n, max_size=m * n)),
                 dtype=object).reshape(m, n)
    U, D, V = smith_normal_form(M)
    assert ((U @ int_matrix(M) @ V) == D).all()
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    diag = [D[i, i] for i in range(min(m, n))]
    off = D.copy()
    for i in range(min(m, n)):
        off[i, i] = 0
    assert not off.any()
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert diag[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_matches_determinantal_divisors(m, n, data):
    M = np.array(data.draw(st.lists(st.integers(-9, 9), min_size=m * n, max_size=m * n)),
                 dtype=object).reshape(m, n)
    _, D, _ = smith_normal_form(M)
    diag = [D[i, i] for i in range(min(m, n)) if D[i, i]]
    assert diag == determinantal_factors(M)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_hnf_and_solve(m, n, data):
    A = np.array(data.draw(st.lists(st.integers(-20, 20), min_size=m * n, max_size=m * n)),
                 dtype=object).reshape(m, n)
    x = np.array(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)), dtype=object)
    H, W, r = hermite_normal_form(A)
    assert ((int_matrix(A) @ W) == H).all()
    assert abs(sympy.Matrix(W).det()) == 1
    b = int_matrix(A) @ x.reshape(-1, 1)
    y = solve_integer(A, b.ravel())
    assert y is not None
    assert ((int_matrix(A) @ np.array(y, dtype=object).reshape(-1, 1)) == b).all()


def test_solve_integer_no_solution():
    assert solve_integer([[2]], [1]) is None
    assert solve_integer([[2, 4]], [6]) is not None


# -- groups -----------------------------------------------------------------


def test_canonicalize_examples():
    G = PresentedAbelianGroup(2, [[2, 0], [0, 3]])
    assert G.canonical.group.moduli == (6,)
    G = PresentedAbelianGroup(3, [[2, 0], [0, 4], [0, 0]])
    assert G.canonical.group.moduli == (2, 4, 0)
    assert G.invariant_factors == (2, 4) and G.rank == 1
    G = PresentedAbelianGroup(2, [[1, 0], [0, 1]])
    assert G.canonical.group.moduli == () and G.order() == 1
    assert PresentedAbelianGroup(0).order() == 1


def test_canonicalize_coordinates_are_consistent():
    G = PresentedAbelianGroup(2, [[4, 6], [6, 4]])
    can = canonicalize(G)
    assert can.group.order() == 20
    H = can.group
    # relations die in canonical coordinates
    for c in (can.to_canonical @ G.relations).T:
        assert H.element(c).is_zero()
    # to o from is the identity on canonical coordinates
    round_trip = can.to_canonical @ can.from_canonical
    for j, e in enumerate(H.generators()):
        assert H.element(round_trip[:, j]) == e


def test_group_basics():
    G = AbelianGroup((1, 4, 0, 1, 2))
    assert G.moduli == (4, 0, 2)
    assert G.rank == 1 and not G.is_finite and G.order() == math.inf
    Z6 = AbelianGroup((2, 3))
    assert Z6.invariant_factors == (6,) and not Z6.is_canonical
    assert Z6.is_isomorphic(AbelianGroup((6,)))
    assert len(list(AbelianGroup((2, 3)).elements())) == 6
    x = AbelianGroup((4,)).element((3,))
    assert (x + x).coords == (2,) and x.order() == 4 and (x * 4).is_zero()


def test_kernel_image_quotient_examples():
    Z4 = AbelianGroup((4,))
    f = GroupHomomorphism(Z4, Z4, [[2]])
    K, _ = kernel(f)
    I, _ = image(f)
    assert K.moduli == (2,) and I.moduli == (2,)
    Q = quotient(Z4, image(f)[1])
    assert Q.group.moduli == (2,)
    with pytest.raises(ValueError):
        GroupHomomorphism(AbelianGroup((2,)), AbelianGroup((3,)), [[1]])
    Z = AbelianGroup((0,))
    g = GroupHomomorphism(Z, AbelianGroup((6,)), [[4]])
    K, inc = kernel(g)
    assert K.moduli == (0,) and inc(K.generators()[0]).coords in {(3,), (-3,)}
    assert image(g)[0].moduli == (3,)


finite_moduli = st.lists(st.sampled_from([2, 3, 4, 6]), min_size=0, max_size=3)


@st.composite
def finite_hom(draw):
    A = AbelianGroup(tuple(draw(finite_moduli)))
    B = AbelianGroup(tuple(draw(finite_moduli)))
    # draw a well-defined matrix: column j must be killed by the order of generator j
    cols = []
    for a in A.moduli:
        col = []
        for b in B.moduli:
            step = b // math.gcd(a, b)
            col.append(step * draw(st.integers(0, b)))
        cols.append(col)
    M = np.array(cols, dtype=object).T.reshape(B.ngens, A.ngens)
    return GroupHomomorphism(A, B, M)


@settings(max_examples=80, deadline=None)
@given(finite_hom())
def test_kernel_image_against_enumeration(f):
    K, _ = kernel(f)
    I, _ = image(f)
    assert K.order() == brute_kernel_size(f)
    assert I.order() == brute_image_size(f)
    assert f.source.order() == K.order() * I.order()
    Q = quotient(f.target, image(f)[1])
    assert Q.group.order() * I.order() == f.target.order()
    for x in f.source.elements():
        y = f(x)
        pre = f.preimage(y)
        assert pre is not None and f(pre) == y


@settings(max_examples=40, deadline=None)
@given(finite_hom())
def test_subquotient_is_consistent(f):
    zero_in = GroupHomomorphism.zero(AbelianGroup((2,)), f.source)
    sq = Subquotient(zero_in, f)
    assert sq.group.order() == brute_kernel_size(f)
    for h in sq.group.elements():
        r = sq.representative(h)
        assert sq.is_cycle(r) and sq.class_of(r) == h


@pytest.mark.parametrize("A,B", [((2,), (4,)), ((4,), (6,)), ((2, 2), (2,)), ((3,), (2,)),
                                 ((4,), (2, 4)), ((6,), (4,)), ((2, 4), (4,)), ((), (3,))])
def test_hom_and_ext_against_enumeration(A, B):
    H, basis = hom_group(AbelianGroup(A), AbelianGroup(B))
    assert H.order() == brute_hom_count(A, B)
    assert all(phi.is_well_defined() for phi in basis)
    # Ext(Z_a, B) = B / aB, counted by enumeration
    expected = 1
    for a in A:
        expected *= len(list(iter_coords(B))) // len({tuple((a * c) % b for c, b in zip(x, B))
                                                       for x in iter_coords(B)})
    assert ext_group(AbelianGroup(A), AbelianGroup(B)).order() == expected


def test_hom_ext_with_free_parts():
    Z = AbelianGroup((0,))
    assert hom_group(Z, AbelianGroup((4,)))[0].moduli == (4,)
    assert hom_group(AbelianGroup((4,)), Z)[0].order() == 1
    assert hom_group(Z, Z)[0].moduli == (0,)
    assert ext_group(Z, AbelianGroup((4,))).order() == 1
    assert ext_group(AbelianGroup((4,)), Z).moduli == (4,)


# -- characters -------------------------------------------------------------


@pytest.mark.parametrize("mods", [(2,), (4,), (2, 2), (2, 4), (3, 3), (4, 4, 4), (2, 32), (8, 8)])
def test_duality_is_nondegenerate(mods):
    G = AbelianGroup(mods)
    D, basis = dual_group(G)
    assert D.order() == G.order()
    elems = list(G.elements())
    for k in D.elements():
        chi = Character(G, k.coords)
        if not chi.is_trivial():
            assert any(not chi(x).is_zero() for x in elems)
        # homomorphism
        for x, y in itertools.islice(zip(elems, reversed(elems)), 8):
            assert chi(x + y) == chi(x) + chi(y)
    for x in elems:
        if not x.is_zero():
            assert any(not Character(G, k.coords)(x).is_zero() for k in D.elements())


def test_character_values_are_exact():
    G = AbelianGroup((4, 2))
    chi = Character(G, (1, 1))
    assert chi((1, 1)).value == Fraction(3, 4)
    assert chi((2, 1)).value == Fraction(0)
    assert (chi + (-chi)).is_trivial()


def test_subgroup_generated():
    G = AbelianGroup((4, 4))
    S, inc = subgroup(G, np.array([[2, 0], [0, 2]], dtype=object))
    assert S.order() == 4
    S, inc = subgroup(G, np.array([[1], [1]], dtype=object))
    assert S.moduli == (4,)
