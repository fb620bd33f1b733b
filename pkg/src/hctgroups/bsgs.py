"""Deterministic Schreier-Sims with words over the original generators.

Each level keeps a Schreier tree (parent point and strong-generator edge per
orbit point) rather than explicit coset representatives, which keeps memory
linear in the degree per level. Every strong generator remembers how it was
made as a short product of earlier strong generators and original
generators, so decompositions come out over the original generators.

Completion follows the usual criterion: every Schreier generator of every
level sifts through the levels below it. The process stops early once the
product of basic orbit lengths reaches an a priori upper bound on the group
order: the orbit lengths are a lower bound for ``|G|``, and
``prod |O|!`` over the orbits ``O`` of ``G`` (halved when every generator is
even) is an upper bound. Equality of the two certifies the chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .gens import GeneratorSet
from .perm import Permutation, Word

# Schreier-tree depth that triggers a breadth-first rebuild of a level.
_REBUILD_DEPTH = 6
DEFAULT_MAX_WORD = 10**7


class NotAMemberError(ValueError):
    """Raised by :func:`decompose`; ``residue`` is the non-trivial sift result."""

    def __init__(self, residue: Permutation, level: int):
        self.residue = residue
        self.level = level
        super().__init__(f"not a member of the group: sift residue {residue} at level {level}")


class WordTooLongError(ValueError):
    pass


class _Level:
    __slots__ = ("base_point", "gen_ids", "parent", "edge", "depth", "max_depth", "orbit",
                 "size", "checked", "cursor", "rebuild_at", "mat")

    def __init__(self, base_point: int, degree: int):
        self.base_point = base_point
        self.gen_ids: list[int] = []
        self.parent = np.full(degree, -1, dtype=np.intp)
        self.edge = np.full(degree, -1, dtype=np.intp)
        self.depth = np.zeros(degree, dtype=np.intp)
        self.parent[base_point] = base_point
        self.max_depth = 0
        self.orbit = np.empty(degree, dtype=np.intp)
        self.orbit[0] = base_point
        self.size = 1
        # checked[pos]: how many of gen_ids were paired with orbit[pos] so far
        self.checked = [0]
        # no position before the cursor has unchecked Schreier pairs
        self.cursor = 0
        self.rebuild_at = _REBUILD_DEPTH
        # level generators stacked row-wise (first len(gen_ids) rows valid)
        self.mat = np.empty((4, degree), dtype=np.intp)

    def push(self, sid: int, images: np.ndarray) -> None:
        n = len(self.gen_ids)
        if n == len(self.mat):
            grown = np.empty((2 * n, self.mat.shape[1]), dtype=np.intp)
            grown[:n] = self.mat
            self.mat = grown
        self.mat[n] = images
        self.gen_ids.append(sid)

    def next_unchecked(self) -> Optional[int]:
        ng = len(self.gen_ids)
        while self.cursor < self.size and self.checked[self.cursor] >= ng:
            self.cursor += 1
        return self.cursor if self.cursor < self.size else None


def orbit_partition(gens: GeneratorSet) -> np.ndarray:
    """Label each point by the least point of its orbit."""
    labels = np.arange(gens.degree, dtype=np.intp)
    changed = True
    while changed:
        changed = False
        for g in gens:
            img = g.images
            merged = np.minimum(labels, labels[img])
            merged[img] = np.minimum(merged[img], merged)
            merged = merged[merged]
            if not np.array_equal(merged, labels):
                labels = merged
                changed = True
            if labels[-1] == 0 and labels.max() == 0:
                return labels
    return labels


def order_upper_bound(gens: GeneratorSet) -> int:
    """``prod |O|!`` over the orbits, halved if every generator is even."""
    labels = orbit_partition(gens)
    sizes = np.bincount(labels, minlength=gens.degree)
    bound = 1
    for s in sizes[sizes > 1].tolist():
        bound *= math.factorial(s)
    if bound > 1 and not any(gens.is_odd(i) for i in range(len(gens))):
        bound //= 2
    return bound


class StabilizerChain:
    """Base and strong generating set for the group generated by ``gens``.

    Levels are numbered from 0; level ``i`` holds base point ``base[i]``, the
    strong generators fixing ``base[:i]`` and a Schreier tree for their orbit
    of ``base[i]``.
    """

    def __init__(self, gens: GeneratorSet, base_prefix: Sequence[int] = (), *, _truncate: bool = False):
        self.gens = gens
        self.degree = gens.degree
        self._identity = np.arange(self.degree, dtype=np.intp)
        self._levels: list[_Level] = []
        self._strong: list[np.ndarray] = []
        self._strong_inv: list[np.ndarray] = []
        # word of each strong generator: tuple of (ref, inverted); ref >= 0 is
        # an earlier strong generator, ref < 0 is original generator -ref-1
        self._strong_word: list[tuple] = []
        self._orig_inv: dict[int, np.ndarray] = {}
        for b in base_prefix:
            if not 0 <= b < self.degree:
                raise ValueError(f"base point {b} outside [0, {self.degree})")
            if b in self.base:
                raise ValueError(f"repeated base point {b}")
            self._levels.append(_Level(int(b), self.degree))
        self._base_arr = np.array(self.base, dtype=np.intp)
        self._upper = order_upper_bound(gens) if len(gens) else 1
        self._lower = 1
        self.sifts = 0
        # truncated mode (used by is_k_transitive): keep only the prefix
        # levels, drop residues fixing the whole prefix, and stop once the
        # prefix orbits are full. Level generators still fix the earlier base
        # points, so full orbits prove transitivity; nothing else is proved.
        self._prefix_goal = len(base_prefix) if _truncate else 0
        self.complete = False
        self._build()
        self.complete = not _truncate

    # -- queries ---------------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lv.base_point for lv in self._levels]

    @property
    def basic_orbit_lengths(self) -> list[int]:
        return [lv.size for lv in self._levels]

    def basic_orbit(self, i: int) -> list[int]:
        lv = self._levels[i]
        return sorted(lv.orbit[: lv.size].tolist())

    @property
    def strong_generators(self) -> list[Permutation]:
        return [Permutation._wrap(s.copy()) for s in self._strong]

    def level_generators(self, i: int) -> list[Permutation]:
        return [Permutation._wrap(self._strong[s].copy()) for s in self._levels[i].gen_ids]

    def order(self) -> int:
        if not self.complete:
            raise RuntimeError("chain was stopped early; its order is only a lower bound")
        return math.prod(self.basic_orbit_lengths)

    def transversal_word(self, i: int, point: int) -> Word:
        """Word carrying ``base[i]`` to ``point``."""
        lv = self._levels[i]
        if lv.parent[point] < 0:
            raise ValueError(f"{point} is not in basic orbit {i}")
        refs = [(s, False) for s in self._path(lv, point)]
        return self._expand(refs)

    # -- construction ----------------------------------------------------------

    def _complete(self) -> bool:
        return self._lower == self._upper or self._prefix_full()

    def _prefix_full(self) -> bool:
        if not self._prefix_goal:
            return False
        return all(self._levels[i].size == self.degree - i for i in range(self._prefix_goal))

    def _build(self) -> None:
        # large supports first: they mix faster, and redundant small ones are
        # then usually caught by the order bound before being sifted
        feed = sorted(range(len(self.gens)), key=lambda i: -self.gens.support_size(i))
        if len(feed) > self.degree:
            # most generators are redundant: keep at most ``degree`` of them
            # (plus any that grow the first basic orbit) and test the rest
            # once the chain is complete
            pending = []
            for pos, i in enumerate(feed):
                if self._complete():
                    return
                if self._prefix_goal and self._levels[0].size == self.degree:
                    # try the Schreier generators of the transitive part first
                    pending.extend(feed[pos:])
                    break
                budget = None if len(self._strong) < self.degree else 0
                level = self._feed(i, max_level=budget)
                if level is not None:
                    pending.append(i)
            self._schreier_pass()
        else:
            pending = feed
        for i in pending:
            if self._complete():
                return
            self._feed(i)
        self._schreier_pass()

    def _feed(self, i: int, max_level: Optional[int] = None) -> Optional[int]:
        """Sift original generator ``i``; add its residue unless it lands
        below ``max_level``, in which case return that level."""
        g = self.gens[i].images
        if np.array_equal(g, self._identity):
            return None
        h, refs, level = self._sift(g, 0)
        if h is None:
            return None
        if max_level is not None and self._levels and level > max_level:
            return level
        self._add_strong(h, ((-i - 1, False),) + tuple(refs), level)
        return None

    def _schreier_pass(self) -> None:
        while not self._complete():
            nxt = self._next_pair()
            if nxt is None:
                return
            i, pos, gi = nxt
            lv = self._levels[i]
            beta = int(lv.orbit[pos])
            sid = lv.gen_ids[gi]
            s = self._strong[sid]
            gamma = int(s[beta])
            if lv.parent[gamma] == beta and lv.edge[gamma] == sid:
                continue
            h = self._identity
            path_b = self._path(lv, beta)
            for t in path_b:
                h = self._strong[t][h]
            h = s[h]
            up_g = self._path(lv, gamma)
            for t in reversed(up_g):
                h = self._strong_inv[t][h]
            head = tuple((t, False) for t in path_b) + ((sid, False),) + tuple(
                (t, True) for t in reversed(up_g)
            )
            res, refs, level = self._sift(h, i + 1)
            if res is not None:
                self._add_strong(res, head + tuple(refs), level)

    def _next_pair(self):
        for i, lv in enumerate(self._levels):
            pos = lv.next_unchecked()
            if pos is not None:
                done = lv.checked[pos]
                lv.checked[pos] = done + 1
                return i, pos, done
        return None

    def _path(self, lv: _Level, point: int) -> list[int]:
        """Strong generator ids on the tree path from the base point to ``point``."""
        out = []
        parent, edge = lv.parent, lv.edge
        while point != lv.base_point:
            out.append(int(edge[point]))
            point = int(parent[point])
        out.reverse()
        return out

    def _sift(self, h: np.ndarray, start: int):
        """Return ``(residue or None, refs, level)``; refs multiply h down."""
        self.sifts += 1
        refs = []
        bases = self._base_arr
        i = start
        while i < len(bases):
            moved = np.flatnonzero(h[bases[i:]] != bases[i:])
            if not moved.size:
                break
            i += int(moved[0])
            lv = self._levels[i]
            beta = int(h[lv.base_point])
            if lv.parent[beta] < 0:
                return h, refs, i
            parent, edge = lv.parent, lv.edge
            while beta != lv.base_point:
                s = int(edge[beta])
                h = self._strong_inv[s][h]
                refs.append((s, True))
                beta = int(parent[beta])
        if np.array_equal(h, self._identity):
            return None, refs, len(self._levels)
        return h, refs, len(self._levels)

    def _add_strong(self, h: np.ndarray, word: tuple, level: int) -> None:
        if level == len(self._levels):
            if self._prefix_goal:
                return
            moved = np.flatnonzero(h != self._identity)
            used = set(self.base)
            b = next(int(x) for x in moved if int(x) not in used)
            self._levels.append(_Level(b, self.degree))
            self._base_arr = np.array(self.base, dtype=np.intp)
        sid = len(self._strong)
        h = np.array(h, dtype=np.intp)
        inv = np.empty_like(h)
        inv[h] = self._identity
        self._strong.append(h)
        self._strong_inv.append(inv)
        self._strong_word.append(word)
        for j in range(level + 1):
            lv = self._levels[j]
            lv.push(sid, h)
            lv.cursor = 0
            self._extend(lv, sid)
        self._lower = math.prod(lv.size for lv in self._levels)

    def _extend(self, lv: _Level, sid: int) -> None:
        s = self._strong[sid]
        orb = lv.orbit[: lv.size]
        img = s[orb]
        fresh = lv.parent[img] < 0
        if not fresh.any():
            return
        queue = self._attach(lv, orb[fresh], img[fresh], sid)
        self._grow(lv, queue)
        if lv.max_depth > lv.rebuild_at:
            self._rebuild(lv)

    def _grow(self, lv: _Level, queue: list[int]) -> None:
        """Breadth-first closure of the orbit from the points in ``queue``."""
        while queue:
            q = np.array(queue, dtype=np.intp)
            queue = []
            imgs = lv.mat[: len(lv.gen_ids)][:, q]
            rows = np.flatnonzero((lv.parent[imgs] < 0).any(axis=1))
            for r in rows.tolist():
                img = imgs[r]
                fresh = lv.parent[img] < 0
                if fresh.any():
                    queue += self._attach(lv, q[fresh], img[fresh], lv.gen_ids[r])

    def _attach(self, lv: _Level, src: np.ndarray, dst: np.ndarray, sid: int) -> list[int]:
        out = []
        for a, b in zip(src.tolist(), dst.tolist()):
            if lv.parent[b] < 0:
                lv.parent[b] = a
                lv.edge[b] = sid
                d = lv.depth[a] + 1
                lv.depth[b] = d
                if d > lv.max_depth:
                    lv.max_depth = d
                lv.orbit[lv.size] = b
                lv.size += 1
                lv.checked.append(0)
                out.append(b)
        return out

    def _rebuild(self, lv: _Level) -> None:
        """Breadth-first Schreier tree over all level generators.

        The transversal changes, so previously checked Schreier pairs of this
        level are no longer valid and are re-queued.
        """
        b = lv.base_point
        lv.parent[:] = -1
        lv.edge[:] = -1
        lv.parent[b] = b
        lv.orbit[0] = b
        lv.size = 1
        lv.checked = [0]
        lv.cursor = 0
        lv.depth[:] = 0
        lv.max_depth = 0
        self._grow(lv, [b])
        lv.rebuild_at = max(_REBUILD_DEPTH, 2 * lv.max_depth)

    # -- sifting and words ------------------------------------------------------

    def sift(self, g: Permutation) -> tuple[Permutation, int]:
        """Sift ``g`` through the whole chain; return ``(residue, level reached)``."""
        if g.degree != self.degree:
            raise ValueError(f"degree mismatch: {g.degree} vs {self.degree}")
        h, _, level = self._sift(g.images, 0)
        if h is None:
            return Permutation.identity(self.degree), level
        return Permutation._wrap(np.array(h)), level

    def contains(self, g: Permutation) -> bool:
        res, _ = self.sift(g)
        return res.is_identity()

    def word_length(self, refs: Iterable) -> int:
        lengths = self._strong_lengths()
        return sum(1 if r < 0 else lengths[r] for r, _ in refs)

    def _strong_lengths(self) -> list[int]:
        out = []
        for word in self._strong_word:
            out.append(sum(1 if r < 0 else out[r] for r, _ in word))
        return out

    def _expand(self, refs, max_length: int = DEFAULT_MAX_WORD) -> Word:
        total = self.word_length(refs)
        if total > max_length:
            raise WordTooLongError(f"word would have {total} letters (limit {max_length})")
        memo: dict[int, list] = {}

        def forward(sid: int) -> list:
            got = memo.get(sid)
            if got is None:
                got = []
                for r, inv in self._strong_word[sid]:
                    if r < 0:
                        got.append((-r - 1, inv))
                    elif inv:
                        got.extend((i, not v) for i, v in reversed(forward(r)))
                    else:
                        got.extend(forward(r))
                memo[sid] = got
            return got

        # strong words nest, so fill the memo bottom-up to avoid deep recursion
        needed = sorted({r for r, _ in refs if r >= 0})
        for sid in range(needed[-1] + 1 if needed else 0):
            forward(sid)
        letters = []
        for r, inv in refs:
            if r < 0:
                letters.append((-r - 1, inv))
            elif inv:
                letters.extend((i, not v) for i, v in reversed(memo[r]))
            else:
                letters.extend(memo[r])
        return Word(self._reduce(letters))

    def _reduce(self, letters: list) -> list:
        """Free reduction; involutive generators lose their inversion flag."""
        out: list = []
        for i, inv in letters:
            if inv and self._is_involution(i):
                inv = False
            if out and out[-1][0] == i and (out[-1][1] != inv or self._is_involution(i)):
                out.pop()
            else:
                out.append((i, inv))
        return out

    def _is_involution(self, i: int) -> bool:
        flag = self._orig_inv.get(i)
        if flag is None:
            g = self.gens[i].images
            flag = bool(np.array_equal(g[g], self._identity))
            self._orig_inv[i] = flag
        return flag

    def decompose(self, g: Permutation, max_length: int = DEFAULT_MAX_WORD) -> Word:
        if g.degree != self.degree:
            raise ValueError(f"degree mismatch: {g.degree} vs {self.degree}")
        h, refs, level = self._sift(g.images, 0)
        if h is not None:
            raise NotAMemberError(Permutation._wrap(np.array(h)), level)
        # g * prod(refs) = id, so g is the inverse of that product
        inv_refs = [(r, not v) for r, v in reversed(refs)]
        return self._expand(inv_refs, max_length)


def build_chain(gens: GeneratorSet, base_prefix: Sequence[int] = ()) -> StabilizerChain:
    return StabilizerChain(gens, base_prefix)


def order(chain_or_gens) -> int:
    if isinstance(chain_or_gens, GeneratorSet):
        chain_or_gens = build_chain(chain_or_gens)
    return chain_or_gens.order()


def contains(chain: StabilizerChain, g: Permutation) -> bool:
    return chain.contains(g)


def decompose(chain: StabilizerChain, g: Permutation, max_length: int = DEFAULT_MAX_WORD) -> Word:
    return chain.decompose(g, max_length)


@dataclass
class Orbit:
    """Orbit of ``root`` with a word per point carrying ``root`` there."""

    root: int
    points: set[int]
    witnesses: dict[int, Word]

    def __contains__(self, x: int) -> bool:
        return x in self.points

    def __len__(self) -> int:
        return len(self.points)


def orbit(gens: GeneratorSet, x: int, witnesses: bool = True) -> Orbit:
    """Breadth-first orbit of ``x``; generators are scanned in index order."""
    if not 0 <= x < gens.degree:
        raise ValueError(f"point {x} outside [0, {gens.degree})")
    parent = np.full(gens.degree, -1, dtype=np.intp)
    edge = np.full(gens.degree, -1, dtype=np.intp)
    parent[x] = x
    found = [x]
    frontier = np.array([x], dtype=np.intp)
    while frontier.size:
        nxt = []
        for gi in range(len(gens)):
            img = gens[gi].images[frontier]
            fresh = parent[img] < 0
            if not fresh.any():
                continue
            for a, b in zip(frontier[fresh].tolist(), img[fresh].tolist()):
                if parent[b] < 0:
                    parent[b] = a
                    edge[b] = gi
                    found.append(b)
                    nxt.append(b)
        frontier = np.array(nxt, dtype=np.intp)
    words: dict[int, Word] = {}
    if witnesses:
        words[x] = Word()
        for y in found[1:]:
            words[y] = words[int(parent[y])] + Word(((int(edge[y]), False),))
    return Orbit(x, set(found), words)


def is_k_transitive(gens: GeneratorSet, k: int, chain: Optional[StabilizerChain] = None) -> bool:
    """Successive point stabilizers: the stabilizer of ``0..i-1`` must be
    transitive on the remaining points, for ``i = 0 .. k-1``."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > gens.degree:
        raise ValueError(f"k={k} exceeds degree {gens.degree}")
    if chain is None or chain.base[:k] != list(range(k)):
        quick = StabilizerChain(gens, range(k), _truncate=True)
        if quick._prefix_full():
            return True
        chain = build_chain(gens, base_prefix=range(k))
    lengths = chain.basic_orbit_lengths
    return all(lengths[i] == gens.degree - i for i in range(k))


def falling_factorial(n: int, k: int) -> int:
    return math.prod(range(n - k + 1, n + 1))
