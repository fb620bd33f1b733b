# ## Bridges between consecutive N-blocks (n = 4)

from hctgroups.bridges import all_bridges, connect, exceptional_set, pier_exclusions
from hctgroups.gens import combined_generators
from hctgroups.perm import evaluate
from hctgroups.residue import Parameters

# n + 1 = 5 is a prime power not dividing N = 12, so [0, 60) is cut into
# five 12-blocks and twelve 5-blocks.

P = Parameters.from_n(4)
print(P, "degree", P.degree)

for b in all_bridges(P):
    print(b.as_record())

# ## The set E and the pier it must avoid

es = exceptional_set(P)
print(list(es.points))
rep = pier_exclusions(P, es)
print(rep.as_record())

# ## Walking from block to block

gens = combined_generators(P)
w = connect(P, 0, 59)
print(w.format(gens.labels))
print("0 ->", evaluate(w, gens)(0))
