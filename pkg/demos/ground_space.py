"""
Ground states and measurements by brute force
=============================================

"""

# the full configuration space of the toric code on a 2 x 2 torus has 256 states
from highergauge import build_gauge, parse_space
from highergauge.quantum import GroundSpace, gsd_oracle, hamiltonian_spectrum
C, G = parse_space("torus:2:2"), build_gauge("z2-at-1")
print(gsd_oracle(C, G).to_json())

# smallest torus: diagonalize the Hamiltonian densely
spec = hamiltonian_spectrum(parse_space("torus:2:1"), G)
print(spec.ground_energy, spec.multiplicity, spec.n_terms)

# gauge-averaged flat states, one per cohomology class; the Gram matrix is diagonal
gs = GroundSpace(C, G)
states = gs.ground_basis()
print([[str(x) for x in row] for row in gs.gram(states)])

# the class selectors act on these states as exact Kronecker deltas
print(all(gs.selector_is_delta(t, s) for s in states for t in gs.classes()))

# a clock operator on a single edge is not closed and mixes ground states
from highergauge.abelian import Character
from highergauge.homcx import local_dual
from highergauge.quantum import preserves_ray
m = local_dual(gs.hc, 0, 1, "e0,0:x", Character(G.group_at(1), (1,)))
print([preserves_ray(gs.space.clock(m), s.vector) for s in states])

# exact operator identities, 100 seeded instances each
from highergauge.quantum import run_algebra_suite
for r in run_algebra_suite(gs.hc, seed=0, instances=100, space=gs.space):
    print(r.line())
