"""
A Z_4 -> Z_2 higher gauge theory on the sphere
==============================================

"""

# the gauge complex Z_4 -> Z_2 sits in degrees 2 and 1; only H_2 = Z_2 survives
from highergauge import build_gauge, parse_space
from highergauge.complex import homology_table
G = build_gauge("z4-z2")
print(homology_table(G, [0, 1, 2]))

# the sphere is the boundary of a tetrahedron
C = parse_space("sphere:2")
print(homology_table(C))

# ground-state degeneracy by three routes
from highergauge.invariants import gsd, uct_decomposition
report = gsd(C, G)
print(report.direct, report.brown_factors, report.uct_factors)

# universal coefficients in degree 2: Hom(H_2(S^2), Z_2) and Ext(H_1(S^2), Z_2)
hom_part, ext_part = uct_decomposition(C, G, 2)
print(hom_part.order(), ext_part.order())

# the section of H_2(G) into ker d_2 picks 2 in Z_4
from highergauge.invariants import BrownMap, build_splitting
phi = build_splitting(G).phi[2]
print(phi.matrix.tolist())

# a generator of H^2(S^2; Z_2) becomes a flat configuration on the triangles
bm = BrownMap(C, G)
fac = bm.factors[2]
f = bm.alpha({2: fac.representative(fac.group.generators()[0])})
print({b.label: v.coords for b, v in f.components() if not v.is_zero()})
print(bm.is_bijective())
