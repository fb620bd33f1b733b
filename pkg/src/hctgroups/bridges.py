"""Bridges between consecutive N-blocks and the stabilizer bookkeeping.

Setting: ``n + 1 = p**k`` does not divide ``N = lcm(2..n)``; the interval
``[0, N p)`` is cut both into the ``p`` blocks of width ``N`` and into the
``M`` blocks of width ``p**k``. A ``p**k``-block meeting two consecutive
N-blocks is a *bridge*; when one of its two overlaps is a single point, that
point is a *pier*.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from itertools import islice
from typing import Iterable, Optional

import numpy as np

from .gens import PUNCTURE, GeneratorSet, combined_generators, omega_N_stab, omega_pk_stab2
from .perm import Word
from . import bsgs
from .residue import Parameters, block


class BridgeKind(str, Enum):
    INTERIOR = "interior"
    LEFT_SINGLE_LOG = "left_single_log"
    RIGHT_SINGLE_LOG = "right_single_log"


@dataclass(frozen=True)
class BridgeReport:
    i: int
    j: int
    kind: BridgeKind
    overlap_left: int
    overlap_right: int
    pier: Optional[int] = None

    def as_record(self) -> dict:
        rec = asdict(self)
        rec["kind"] = self.kind.value
        return rec


class FalsifiedClaim(AssertionError):
    """A check that must hold for every valid n failed; carries the witness."""

    def __init__(self, message: str, counterexample: dict):
        self.counterexample = counterexample
        super().__init__(f"{message}: {counterexample}")


class DeltaPreconditionError(ValueError):
    def __init__(self, point: int, reason: str):
        self.point = point
        super().__init__(f"delta element {point}: {reason}")


def _overlap(a: range, b: range) -> range:
    return range(max(a.start, b.start), min(a.stop, b.stop))


def find_bridge(params: Parameters, i: int) -> BridgeReport:
    """The p^k-block straddling the boundary between N-blocks ``i`` and ``i+1``."""
    params.require_gap()
    N, pk, p = params.N, params.pk, params.p
    if not 0 <= i < p - 1:
        raise ValueError(f"boundary index {i} outside [0, {p - 1})")
    boundary = (i + 1) * N
    j = (boundary - 1) // pk
    blk = block(pk, j)
    left = _overlap(blk, block(N, i))
    right = _overlap(blk, block(N, i + 1))
    if len(left) == 0 or len(right) == 0:
        raise FalsifiedClaim("boundary without a bridge", {"n": params.n, "i": i, "j": j})
    if len(left) == 1:
        return BridgeReport(i, j, BridgeKind.LEFT_SINGLE_LOG, 1, len(right), left[0])
    if len(right) == 1:
        return BridgeReport(i, j, BridgeKind.RIGHT_SINGLE_LOG, len(left), 1, right[0])
    return BridgeReport(i, j, BridgeKind.INTERIOR, len(left), len(right))


def all_bridges(params: Parameters) -> list[BridgeReport]:
    params.require_gap()
    return [find_bridge(params, i) for i in range(params.p - 1)]


def left_piers(params: Parameters) -> set[int]:
    return {b.pier for b in all_bridges(params) if b.kind is BridgeKind.LEFT_SINGLE_LOG}


def right_piers(params: Parameters) -> set[int]:
    return {b.pier for b in all_bridges(params) if b.kind is BridgeKind.RIGHT_SINGLE_LOG}


@dataclass(frozen=True)
class ExceptionalSet:
    """``points = 2 + a p^k`` for the even ``a < M`` listed in ``index_set``.

    Both are ``range`` objects: M exceeds 10**8 already for n = 22.
    """

    points: range
    index_set: range
    params: Parameters = field(repr=False)

    def __contains__(self, x: int) -> bool:
        return x in self.points

    def __len__(self) -> int:
        return len(self.points)


def exceptional_set(params: Parameters) -> ExceptionalSet:
    params.require_gap()
    M, pk, N = params.M, params.pk, params.N
    index_set = range(0, M, 2)
    points = range(PUNCTURE, PUNCTURE + M * pk, 2 * pk)
    assert len(points) == len(index_set) == (M + 1) // 2
    # a pk = a' pk (mod N) iff N / gcd(N, pk) divides a - a'; |a - a'| < M
    period = N // math.gcd(N, pk)
    if period < M:
        raise FalsifiedClaim(
            "two points of E congruent mod N",
            {"n": params.n, "points": (PUNCTURE, PUNCTURE + period * pk), "N": N},
        )
    return ExceptionalSet(points, index_set, params)


@dataclass
class PierExclusionReport:
    """Translates ``2 + a p^k + b N`` (a in M_E, b < p) that land on piers.

    ``excluded`` holds the points of E whose translates hit a right pier;
    such points may not be stabilized when lifting transitivity.
    """

    n: int
    left_hits: list[dict]
    right_hits: list[dict]
    e_points_on_piers: list[int]

    @property
    def excluded(self) -> list[int]:
        return sorted({h["e_point"] for h in self.right_hits})

    @property
    def counterexamples(self) -> list[dict]:
        out = [dict(h, claim="left pier hit") for h in self.left_hits]
        if len(self.excluded) > 1:
            out += [dict(h, claim="more than one E point on right piers") for h in self.right_hits]
        out += [{"claim": "E point is a pier", "point": x} for x in self.e_points_on_piers]
        return out

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def check(self) -> "PierExclusionReport":
        if not self.ok:
            raise FalsifiedClaim("pier exclusion failed", {"n": self.n, "cases": self.counterexamples})
        return self

    def as_record(self) -> dict:
        return {
            "n": self.n,
            "left_hits": len(self.left_hits),
            "right_hits": self.right_hits,
            "excluded": self.excluded,
            "ok": self.ok,
        }


def pier_exclusions(params: Parameters, es: Optional[ExceptionalSet] = None) -> PierExclusionReport:
    """Find every translate ``2 + a p^k + b N`` (a in M_E, b < p) that is a pier.

    Rather than scanning M_E x [0, p), each of the at most ``p - 1`` piers is
    solved for: for each b, ``a = (pier - 2 - b N) / p^k`` must be a
    non-negative even integer below M.
    """
    params.require_gap()
    es = es or exceptional_set(params)
    pk, N = params.pk, params.N
    bridges = all_bridges(params)
    left_hits, right_hits = [], []
    for br in bridges:
        if br.kind is BridgeKind.INTERIOR:
            continue
        hits = left_hits if br.kind is BridgeKind.LEFT_SINGLE_LOG else right_hits
        for b in range(params.p):
            rest = br.pier - PUNCTURE - b * N
            if rest < 0 or rest % pk:
                continue
            a = rest // pk
            if a in es.index_set:
                hits.append({"a": a, "b": b, "point": br.pier, "e_point": PUNCTURE + a * pk})
    key = lambda h: (h["a"], h["b"])
    piers = {br.pier for br in bridges if br.pier is not None}
    on_piers = sorted(x for x in piers if x in es.points)
    return PierExclusionReport(params.n, sorted(left_hits, key=key), sorted(right_hits, key=key), on_piers)


def pier_exclusions_scan(params: Parameters) -> PierExclusionReport:
    """Literal scan over M_E x [0, p); only for small M."""
    es = exceptional_set(params)
    lp, rp = left_piers(params), right_piers(params)
    left_hits, right_hits = [], []
    for a in es.index_set:
        for b in range(params.p):
            x = PUNCTURE + a * params.pk + b * params.N
            hit = {"a": a, "b": b, "point": x, "e_point": PUNCTURE + a * params.pk}
            if x in lp:
                left_hits.append(hit)
            if x in rp:
                right_hits.append(hit)
    on_piers = [x for x in es.points if x in lp or x in rp]
    return PierExclusionReport(params.n, left_hits, right_hits, on_piers)


def pair_index(m: int, r1: int, r2: int) -> int:
    """Position of ``(r1, r2)`` among the lexicographic pairs of ``range(m)``."""
    if not 0 <= r1 < r2 < m:
        raise ValueError(f"need 0 <= r1 < r2 < {m}")
    return r1 * m - r1 * (r1 + 1) // 2 + (r2 - r1 - 1)


def _swap_letter(m: int, offset: int, x: int, y: int) -> list:
    """Letter of the modulus-``m`` class transposition moving ``x`` to ``y``."""
    a, b = sorted((x % m, y % m))
    if a == b:
        return []
    return [(offset + pair_index(m, a, b), False)]


def connect(params: Parameters, alpha: int, beta: int) -> Word:
    """A word over :func:`combined_generators` carrying ``alpha`` to ``beta``.

    Points in different N-blocks are joined boundary by boundary: move into
    the bridge's left overlap with a modulus-N letter, cross to the right
    overlap with a modulus-p^k letter, continue from there.
    """
    params.require_gap()
    N, pk, P = params.N, params.pk, params.degree
    for x in (alpha, beta):
        if not 0 <= x < P:
            raise ValueError(f"point {x} outside [0, {P})")
    offset = N * (N - 1) // 2
    if alpha == beta:
        return Word()
    s, t = alpha // N, beta // N
    if s == t:
        return Word(_swap_letter(N, 0, alpha, beta))
    if alpha // pk == beta // pk:
        return Word(_swap_letter(pk, offset, alpha, beta))
    if s > t:
        # all letters are involutions, so the reversed word is the inverse
        return Word(tuple(reversed(connect(params, beta, alpha).letters)))
    letters: list = []
    x = alpha
    for i in range(s, t):
        br = find_bridge(params, i)
        blk = block(pk, br.j)
        enter = max(blk.start, i * N)
        leave = (i + 1) * N
        letters += _swap_letter(N, 0, x, enter)
        letters += _swap_letter(pk, offset, enter, leave)
        x = leave
    letters += _swap_letter(N, 0, x, beta)
    return Word(letters)


def _check_delta(params: Parameters, delta: Iterable[int]) -> set[int]:
    es = exceptional_set(params)
    delta = set(delta)
    for x in sorted(delta):
        if x not in es:
            raise DeltaPreconditionError(x, "not in the exceptional set E")
    excluded = set(pier_exclusions(params, es).excluded)
    for x in sorted(delta):
        if x in excluded:
            raise DeltaPreconditionError(
                x, "a translate 2 + b p^k + c N of it is a right single bridge pier"
            )
    return delta


def punctured_bridge_check(params: Parameters, delta: Iterable[int]) -> bool:
    """Each bridge minus its puncture still meets both punctured N-blocks."""
    params.require_gap()
    delta = _check_delta(params, delta)
    N, pk = params.N, params.pk
    delta_N = {a % N for a in delta}
    for br in all_bridges(params):
        bridge = set(block(pk, br.j)) - {br.j * pk + PUNCTURE}
        ok = True
        for side in (br.i, br.i + 1):
            punctured = set(block(N, side)) - {d + side * N for d in delta_N}
            ok = ok and bool(bridge & punctured)
        if not ok:
            return False
    return True


def stabilizer_generators(params: Parameters, delta: Iterable[int]) -> GeneratorSet:
    """``omega_N_stab(delta)`` followed by ``omega_pk_stab2``."""
    return omega_N_stab(params, delta) + omega_pk_stab2(params)


@dataclass
class StabilizerTransitivity:
    delta: list[int]
    fixed: list[int]
    orbit_size: int
    complement_size: int

    @property
    def transitive(self) -> bool:
        return self.orbit_size == self.complement_size


def stabilizer_orbit_report(params: Parameters, delta: Iterable[int]) -> StabilizerTransitivity:
    params.require_gap()
    delta = _check_delta(params, delta)
    gens = stabilizer_generators(params, delta)
    # a transposition of modulus m moves exactly the points in its two classes
    moving = np.zeros(params.degree, dtype=bool)
    for t in set(gens.transpositions):
        moving[t.r1 :: t.modulus] = True
        moving[t.r2 :: t.modulus] = True
    fixed = np.flatnonzero(~moving).tolist()
    start = int(np.flatnonzero(moving)[0])
    orb = bsgs.orbit(gens, start, witnesses=False)
    return StabilizerTransitivity(sorted(delta), fixed, len(orb), int(moving.sum()))


def stabilizer_transitivity(params: Parameters, delta: Iterable[int]) -> bool:
    """Whether the generated stabilizer subgroup is transitive on the points
    it does not fix."""
    return stabilizer_orbit_report(params, delta).transitive


def lifting_delta(params: Parameters, size: int = 5) -> list[int]:
    """The first ``size`` points of E in ascending order, skipping excluded ones."""
    es = exceptional_set(params)
    excluded = set(pier_exclusions(params, es).excluded)
    usable = list(islice((x for x in es.points if x not in excluded), size))
    if len(usable) < size:
        raise ValueError(f"only {len(usable)} usable points in E, need {size}")
    return usable[:size]


def combined(params: Parameters) -> GeneratorSet:
    return combined_generators(params)
