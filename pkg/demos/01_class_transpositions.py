# ## Class transpositions on a finite window

import numpy as np

from hctgroups.gens import HorizontalClassTransposition, ct_n_generators, tau
from hctgroups.perm import compose, cycles, format_cycles, parity
from hctgroups.residue import ResidueClass, block, classes_disjoint

# A class transposition swaps r1 + k m with r2 + k m for every k. It is periodic
# with period m, so its restriction to [0, P) with m | P says everything.

t = HorizontalClassTransposition(4, 1, 3)
g = tau(t, 12)
print(t.classes[0], t.classes[1])
print(format_cycles(g))
print("parity", parity(g), "= (12 / 4) mod 2")

# Every such generator is an involution and keeps each m-block in place.

print(compose(g, g).is_identity())
print([list(block(4, j)) for j in range(3)])
print(np.array_equal(g.images // 4, np.arange(12) // 4))

# ## Disjoint residue classes

print(classes_disjoint(ResidueClass(0, 2), ResidueClass(1, 2)))
print(classes_disjoint(ResidueClass(1, 4), ResidueClass(3, 6)))  # both contain 9

# ## All transpositions of one modulus

gens = ct_n_generators(3, 6)
for label, h in zip(gens.labels, gens):
    print(label, cycles(h))
