# ## Orders of <CT_2, ..., CT_n> on [0, N)

import math
import time

from hctgroups.bsgs import build_chain
from hctgroups.gens import ct_family_generators, embedded_block_generators
from hctgroups.oracle import enumerate_group, max_transitivity
from hctgroups.residue import lcm_up_to

# N = lcm(2..n) is the smallest window on which every generator lives.

for n in range(3, 8):
    N = lcm_up_to(n)
    gens = ct_family_generators(n, N)
    t0 = time.perf_counter()
    chain = build_chain(gens)
    dt = time.perf_counter() - t0
    print(f"n={n}  N={N}  generators={len(gens)}  order == N! : "
          f"{chain.order() == math.factorial(N)}  ({dt:.2f} s)")

# n = 3 is the exception: the group is much smaller than 6!.
# Brute force agrees with the stabilizer chain.

grp = enumerate_group(ct_family_generators(3, 6))
print(grp.order, build_chain(ct_family_generators(3, 6)).order(), math.factorial(6))
print("largest k for k-transitivity:", max_transitivity(grp))

# Acting the same way on several blocks at once does not make the group bigger.

print(build_chain(embedded_block_generators(12, 5)).order() == math.factorial(12))
