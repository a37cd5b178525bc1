import itertools

import pytest

from highergauge.abelian import AbelianGroup
from highergauge.complex import build_gauge, gauge_complex, parse_space
from highergauge.homcx import HomComplex
from highergauge.invariants import (
    BrownMap,
    SplittingError,
    brown_iso,
    build_splitting,
    build_splittings,
    cohomology_with_coefficients,
    gsd,
    uct_decomposition,
)

SPACES = ["interval", "circle:3", "sphere:2", "torus:2:1", "torus:2:2", "torus:2:3", "torus:3:2"]
GAUGES = ["z2-at-1", "z3-at-1", "z4-z2", "z2-at-0"]


def coefficient_cohomology_order(C, N, n):
    """|H^n(C; Z_N)| by enumerating Z_N-valued functions on cells."""
    def cobound(f, k):
        D = C.boundary_at(k + 1).matrix
        return tuple(sum(int(D[x, y]) * f[x] for x in range(len(f))) % N
                     for y in range(len(C.cells(k + 1))))

    def functions(k):
        return itertools.product(range(N), repeat=len(C.cells(k)))

    ker = sum(not any(cobound(f, n)) for f in functions(n))
    im = len({cobound(f, n - 1) for f in functions(n - 1)}) if n - 1 in C.degrees else 1
    return ker // im


@pytest.mark.parametrize("space,N,n", [("circle:3", 2, 1), ("circle:3", 4, 1), ("torus:2:1", 2, 1),
                                       ("torus:2:1", 4, 2), ("sphere:2", 2, 2), ("sphere:2", 3, 0),
                                       ("interval", 4, 1), ("torus:2:2", 2, 1)])
def test_coefficient_cohomology_against_enumeration(space, N, n):
    C = parse_space(space)
    assert cohomology_with_coefficients(C, AbelianGroup((N,)), n).order() == \
        coefficient_cohomology_order(C, N, n)


def test_coefficient_cohomology_examples():
    assert cohomology_with_coefficients(parse_space("torus:2:2"), AbelianGroup((2,)), 1).order() == 4
    assert cohomology_with_coefficients(parse_space("sphere:2"), AbelianGroup((2,)), 2).order() == 2
    assert cohomology_with_coefficients(parse_space("sphere:2"), AbelianGroup(()), 1).order() == 1


def test_uct_examples():
    h, e = uct_decomposition(parse_space("torus:2:2"), build_gauge("z2-at-1"), 1)
    assert h.moduli == (2, 2) and e.order() == 1
    h, e = uct_decomposition(parse_space("circle:3"), build_gauge("z4-at-1"), 1)
    assert h.moduli == (4,) and e.order() == 1
    h, e = uct_decomposition(parse_space("sphere:2"), build_gauge("z4-z2"), 1)
    assert h.order() == 1 and e.order() == 1


@pytest.mark.parametrize("space,gauge,expected", [("torus:2:2", "z2-at-1", 4),
                                                  ("torus:3:2", "z2-at-1", 8),
                                                  ("sphere:2", "z4-z2", 2),
                                                  ("interval", "z2-at-0", 2)])
def test_gsd_examples(space, gauge, expected):
    rep = gsd(parse_space(space), build_gauge(gauge))
    assert rep.direct == expected and rep.agree


@pytest.mark.parametrize("space", SPACES)
@pytest.mark.parametrize("gauge", GAUGES)
def test_three_routes_agree(space, gauge):
    rep = gsd(parse_space(space), build_gauge(gauge))
    assert rep.direct == rep.brown_product == rep.uct_product


def test_homological_invariance():
    a = gsd(parse_space("torus:2:2"), build_gauge("z4-z2")).to_json()
    b = gsd(parse_space("torus:2:3"), build_gauge("z4-z2")).to_json()
    assert a == b


def test_splitting_examples():
    s = build_splitting(build_gauge("z2-at-1"))
    assert s.phi[1].matrix.tolist() == [[1]]
    s = build_splitting(build_gauge("z4-z2"))
    assert list(s.phi) == [2] and s.phi[2].matrix.tolist() == [[2]]
    assert build_splitting(build_gauge("trivial")).phi == {}


def test_two_distinct_splittings():
    G = gauge_complex({1: [2, 2], 2: [2]}, {2: [[1], [0]]})
    ss = build_splittings(G, limit=2)
    assert len(ss) == 2 and ss[0].differs_from(ss[1])
    assert all(s.certify(G) for s in ss)
    for space in ("torus:2:2", "sphere:2", "circle:3"):
        C = parse_space(space)
        a, b = BrownMap(C, G, ss[0]), BrownMap(C, G, ss[1])
        assert a.hom.equals(b.hom)
        for x in a.source.elements():
            assert a(x) == b(x)


def test_non_split_gauge_complex():
    # 2Z_4 -> Z_4 -> Z_2 does not split
    G = gauge_complex({1: [4], 2: [4]}, {2: [[2]]})
    with pytest.raises(SplittingError):
        build_splitting(G)
    rep = gsd(parse_space("torus:2:2"), G)
    assert rep.agree


@pytest.mark.parametrize("space", SPACES)
@pytest.mark.parametrize("gauge", ["z2-at-1", "z4-z2", "z3-at-1"])
def test_brown_map_is_an_isomorphism(space, gauge):
    C, G = parse_space(space), build_gauge(gauge)
    hc = HomComplex(C, G)
    bm = BrownMap(C, G, hc=hc)
    for n, fac in bm.factors.items():
        for e in fac.group.elements():
            f = bm.alpha({n: fac.representative(e)})
            assert hc.delta(0)(f.value).is_zero()
    assert bm.is_bijective()
    if bm.source.order() <= 64:
        images = {bm(x) for x in bm.source.elements()}
        assert len(images) == bm.source.order()


def test_toric_generators_map_to_distinct_classes():
    C, G = parse_space("torus:2:2"), build_gauge("z2-at-1")
    bm = BrownMap(C, G)
    fac = bm.factors[1]
    a, b = (brown_iso(C, G, {1: fac.representative(e)}) for e in fac.group.generators())
    assert not a.is_zero() and not b.is_zero() and a != b
    assert brown_iso(C, G, {1: fac.cochains.zero()}).is_zero()


def test_brown_rejects_non_cocycle():
    C, G = parse_space("torus:2:2"), build_gauge("z2-at-1")
    bm = BrownMap(C, G)
    fac = bm.factors[1]
    single_edge = fac.cochains.element([1] + [0] * (fac.cochains.ngens - 1))
    with pytest.raises(ValueError):
        bm.alpha({1: single_edge})
