# ## Point stabilizers and 6-transitivity at degree 60

import math

from hctgroups.bridges import lifting_delta, stabilizer_orbit_report
from hctgroups.bsgs import build_chain, decompose, is_k_transitive
from hctgroups.gens import combined_generators, ct_family_generators
from hctgroups.perm import evaluate, parse_permutation
from hctgroups.residue import Parameters

P = Parameters.from_n(4)

# Fix the point 2, then five points of E; the remaining points stay one orbit.

print(stabilizer_orbit_report(P, [2]))
print(stabilizer_orbit_report(P, lifting_delta(P)))

# The chain with base 0..5 has full basic orbits on its first six levels.

gens = combined_generators(P)
chain = build_chain(gens, base_prefix=range(6))
print(chain.basic_orbit_lengths[:6])
print(is_k_transitive(gens, 6), chain.order() == math.factorial(60))

# ## Writing a permutation over the generators

gens12 = ct_family_generators(4, 12)
chain12 = build_chain(gens12)
g = parse_permutation("(0 1)", 12)
w = decompose(chain12, g)
print(len(w), "letters, starts with", w.format(gens12.labels)[:60], "...")
print(evaluate(w, gens12) == g)
