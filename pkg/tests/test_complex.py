import itertools
import json

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from highergauge.abelian import AbelianGroup, render_group
from highergauge.complex import (
    ChainComplex,
    SimplicialComplex,
    betti_numbers,
    build_gauge,
    build_space,
    from_simplicial,
    gauge_complex,
    homology,
    homology_table,
    parse_space,
    validate,
)


def free_homology_oracle(C, n):
    """(rank, torsion) of H_n of a free complex via sympy rank and sympy SNF."""
    dim = C.group_at(n).ngens
    d_n = sympy.Matrix(C.boundary_at(n).matrix.tolist()) if C.boundary_at(n).matrix.size else None
    d_up = C.boundary_at(n + 1).matrix
    r_n = d_n.rank() if d_n is not None else 0
    torsion, r_up = [], 0
    if d_up.size:
        D = sympy_snf(sympy.Matrix(d_up.tolist()), domain=sympy.ZZ)
        diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
        r_up = sum(1 for d in diag if d)
        torsion = sorted(d for d in diag if d > 1)
    return dim - r_n - r_up, torsion


def finite_homology_order(G, n):
    """|ker d_n| / |im d_{n+1}| by enumerating elements."""
    d_n, d_up = G.boundary_at(n), G.boundary_at(n + 1)
    ker = sum(d_n(x).is_zero() for x in G.group_at(n).elements())
    im = len({d_up(x) for x in G.group_at(n + 1).elements()})
    return ker // im


@pytest.mark.parametrize("L", [1, 2, 3])
def test_torus2_homology(L):
    T = parse_space(f"torus:2:{L}")
    assert homology_table(T) == {0: "Z", 1: "Z^2", 2: "Z"}
    counts = T.basis.counts()
    assert counts == {0: L * L, 1: 2 * L * L, 2: L * L}


def test_torus3_homology():
    T = parse_space("torus:3:2")
    assert homology_table(T) == {0: "Z", 1: "Z^3", 2: "Z^3", 3: "Z"}
    assert T.euler_characteristic() == 0


def test_torus_boundary_signs():
    T = parse_space("torus:2:2")
    d2 = T.boundary_at(2)
    j = T.basis.index(2, "f0,0:xy")
    col = {T.cells(1)[i]: d2.matrix[i, j] for i in range(d2.matrix.shape[0]) if d2.matrix[i, j]}
    assert col == {"e0,0:x": 1, "e0,1:x": -1, "e0,0:y": -1, "e1,0:y": 1}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_spheres(d):
    S = build_space("sphere", d)
    table = homology_table(S, range(0, d + 1))
    assert table[0] == "Z" and table[d] == "Z"
    assert all(table[k] == "0" for k in range(1, d))
    assert S.euler_characteristic() == 1 + (-1) ** d


def test_sphere2_is_tetrahedron_boundary():
    S = parse_space("sphere:2")
    assert S.basis.counts() == {0: 4, 1: 6, 2: 4}
    assert S.cells(0) == ("[0]", "[1]", "[2]", "[3]")


def test_interval_and_circle():
    I = parse_space("interval")
    assert homology_table(I) == {0: "Z", 1: "0"}
    for L in (1, 3, 5):
        assert homology_table(parse_space(f"circle:{L}")) == {0: "Z", 1: "Z"}


@pytest.mark.parametrize("bad", ["sphere:4", "torus:4:2", "torus:2:0", "circle:0", "moebius",
                                 "torus:2:x", "torus:2"])
def test_bad_space_names(bad):
    with pytest.raises(ValueError):
        parse_space(bad)


def test_gauge_complexes():
    G = build_gauge("z4-z2")
    assert homology_table(G, [0, 1, 2]) == {0: "0", 1: "0", 2: "Z_2"}
    assert homology_table(build_gauge("z2-at-1"), [1]) == {1: "Z_2"}
    assert build_gauge("z5-at--1").group_at(-1).moduli == (5,)
    assert build_gauge("trivial").degrees == []
    for bad in ("z1-at-0", "z4-z3", "zz"):
        with pytest.raises(ValueError):
            build_gauge(bad)


def test_rejects_non_complex():
    G = gauge_complex({0: [4], 1: [4], 2: [4]}, {1: [[1]], 2: [[1]]})
    bad = validate(G)
    assert bad is not None and bad.degree == 2
    assert validate(build_gauge("z4-z2")) is None


def test_simplicial_missing_face():
    with pytest.raises(ValueError):
        SimplicialComplex("abc", [("a", "b", "c")])
    with pytest.raises(ValueError):
        SimplicialComplex("ab", [("a", "z")])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 5), min_size=1, max_size=4, unique=True),
                min_size=1, max_size=8))
def test_random_subcomplexes_of_simplex(facets):
    S = SimplicialComplex.closure(range(6), facets)
    C = from_simplicial(S)
    assert validate(C) is None
    chi = sum((-1) ** n * homology(C, n).rank for n in C.degrees)
    assert chi == C.euler_characteristic()
    for n in C.degrees:
        H = homology(C, n)
        rank, torsion = free_homology_oracle(C, n)
        assert H.rank == rank
        assert list(m for m in H.moduli if m) == torsion


@pytest.mark.parametrize("name", ["interval", "circle:4", "sphere:3", "torus:2:2", "torus:3:2"])
def test_free_homology_matches_oracle(name):
    C = parse_space(name)
    for n in C.degrees:
        rank, torsion = free_homology_oracle(C, n)
        H = homology(C, n)
        assert (H.rank, [m for m in H.moduli if m]) == (rank, torsion)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 6]), st.sampled_from([2, 3, 4, 6]), st.integers(0, 11))
def test_two_term_gauge_homology_by_enumeration(a, b, k):
    # Z_a -> Z_b, 1 -> c with c chosen so the map is well defined
    step = b // np.gcd(a, b)
    G = gauge_complex({1: [b], 2: [a]}, {2: [[step * k % b]]})
    for n in (1, 2):
        assert homology(G, n).order() == finite_homology_order(G, n)


def test_json_round_trip():
    for C in (parse_space("torus:2:2"), parse_space("sphere:2"), build_gauge("z4-z2")):
        data = json.loads(json.dumps(C.to_json()))
        D = ChainComplex.from_json(data)
        assert D.to_json() == C.to_json()
        for n in C.degrees:
            assert render_group(homology(D, n)) == render_group(homology(C, n))


def test_json_errors():
    with pytest.raises(ValueError):
        ChainComplex.from_json({})
    with pytest.raises(ValueError):
        ChainComplex.from_json({"cells": {"0": ["a"]}, "groups": {"0": [2]}})
    with pytest.raises(ValueError):
        ChainComplex.from_json({"cells": {"0": ["a"], "1": ["e"]}, "boundary": {"1": [[1, 1]]}})


def test_betti_numbers():
    assert betti_numbers(parse_space("torus:3:2")) == {0: 1, 1: 3, 2: 3, 3: 1}
    assert AbelianGroup((0, 0)).rank == 2
    assert list(itertools.islice(build_gauge("z2-at-1").group_at(1).elements(), 3))
