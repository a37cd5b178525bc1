"""
The toric code on a two-dimensional torus
=========================================

"""

# a cubical torus with 3 x 3 vertices and a Z_2 gauge field on its edges
from highergauge import build_gauge, parse_space
C = parse_space("torus:2:3")
G = build_gauge("z2-at-1")
print(C.basis.counts())

# homology of the torus: one vertex class, two loops, one surface
from highergauge.complex import homology_table
print(homology_table(C))

# degeneracy from the cohomology of hom(C, G), and the two products over degrees
from highergauge.invariants import gsd
report = gsd(C, G)
print(report.direct, report.brown_product, report.uct_product)

# the same number does not depend on how finely the torus is cut
print([gsd(parse_space(f"torus:2:{L}"), G).direct for L in (1, 2, 3)])

# the flat, gauge-inequivalent configurations: one representative per class
from highergauge.homcx import HomComplex
hc = HomComplex(C, G)
H0 = hc.cohomology(0)
for e in H0.group.elements():
    f = H0.representative(e)
    print(e.coords, [b.label for b, v in f.components() if not v.is_zero()])

# on T^3 the degeneracy grows to 8
print(gsd(parse_space("torus:3:2"), G).direct)
