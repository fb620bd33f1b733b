"""Brute-force ground truth: enumerate a whole group by Cayley-graph BFS.

Only meant for small groups (default cap 2 million elements). The frontier
is expanded a block at a time with numpy, and elements are deduplicated by
an integer encoding of their image table.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .gens import GeneratorSet
from .perm import Permutation

DEFAULT_CAP = int(os.environ.get("HCTGROUPS_ORACLE_CAP", 2_000_000))


class CappedGroupError(ValueError):
    pass


@dataclass(frozen=True)
class EnumeratedGroup:
    """All elements found by BFS, one image table per row (identity first)."""

    tables: np.ndarray
    degree: int
    capped: bool

    def __len__(self) -> int:
        return len(self.tables)

    @property
    def order(self) -> int:
        if self.capped:
            raise CappedGroupError("enumeration was capped; the order is unknown")
        return len(self.tables)

    @property
    def elements(self) -> set[Permutation]:
        return {Permutation._wrap(row.copy()) for row in self.tables}

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        return bool((self.tables == g.images).all(axis=1).any())


def _encoder(degree: int):
    if degree ** degree < 2**63:
        weights = degree ** np.arange(degree, dtype=np.int64)
        return lambda rows: rows.astype(np.int64) @ weights
    return lambda rows: np.array([r.tobytes() for r in rows], dtype=object)


def enumerate_group(gens: GeneratorSet, cap: int = DEFAULT_CAP) -> EnumeratedGroup:
    """Breadth-first closure from the identity, generators in index order."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    degree = gens.degree
    encode = _encoder(degree)
    tables = [gens[i].images for i in range(len(gens))]
    identity = np.arange(degree, dtype=np.intp)[None, :]
    found = [identity]
    seen = set(encode(identity).tolist())
    frontier = identity
    total = 1
    while len(frontier):
        nxt = []
        for g in tables:
            # right multiplication by g: x -> g[h[x]]
            cand = g[frontier]
            keys = encode(cand).tolist()
            keep = []
            for idx, key in enumerate(keys):
                if key not in seen:
                    seen.add(key)
                    keep.append(idx)
            if keep:
                new = cand[keep]
                nxt.append(new)
                total += len(new)
                if total > cap:
                    found.extend(nxt)
                    return EnumeratedGroup(np.concatenate(found)[: cap + 1], degree, True)
        frontier = np.concatenate(nxt) if nxt else np.empty((0, degree), dtype=np.intp)
        if len(frontier):
            found.append(frontier)
    return EnumeratedGroup(np.concatenate(found), degree, False)


def transitivity_exhaustive(grp: EnumeratedGroup, k: int) -> bool:
    """Every ordered k-tuple of distinct points is the image of ``(0, ..., k-1)``."""
    if grp.capped:
        raise CappedGroupError("cannot decide transitivity on a capped enumeration")
    if not 1 <= k <= grp.degree:
        raise ValueError(f"k must lie in [1, {grp.degree}]")
    hit = {tuple(row) for row in grp.tables[:, :k].tolist()}
    return all(t in hit for t in permutations(range(grp.degree), k))


def max_transitivity(grp: EnumeratedGroup) -> int:
    """Largest k for which :func:`transitivity_exhaustive` holds (0 if none)."""
    best = 0
    for k in range(1, grp.degree + 1):
        if not transitivity_exhaustive(grp, k):
            break
        best = k
    return best
