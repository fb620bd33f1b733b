"""Horizontal class transpositions and the generator families built from them.

All generators are class transpositions restricted to ``[0, degree)``. The
stabilizer generators ``omega`` are class transpositions too (same modulus,
same fundamental domain) whose residue pool avoids the stabilized points;
they only differ in their label.

Generator sets can be very large (``CT_420`` at degree 840 has 87990 of
them), so a :class:`GeneratorSet` keeps ``(modulus, r1, r2)`` rows and builds
each permutation when it is indexed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .perm import Permutation, parity
from .residue import Parameters, ResidueClass

#: Residue removed from every p^k-block in the 2-point stabilizer.
PUNCTURE = 2


@dataclass(frozen=True, order=True)
class HorizontalClassTransposition:
    modulus: int
    r1: int
    r2: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.r1 < self.r2 < self.modulus:
            raise ValueError(
                f"need 0 <= r1 < r2 < modulus, got r1={self.r1}, r2={self.r2}, "
                f"modulus={self.modulus}"
            )

    @property
    def classes(self) -> tuple[ResidueClass, ResidueClass]:
        return ResidueClass(self.r1, self.modulus), ResidueClass(self.r2, self.modulus)


def tau(t: HorizontalClassTransposition, degree: int) -> Permutation:
    """Restriction of the class transposition ``t`` to ``[0, degree)``."""
    return Permutation._wrap(_tau_images(t.modulus, t.r1, t.r2, degree))


def _tau_images(m: int, r1: int, r2: int, degree: int) -> np.ndarray:
    if degree <= 0 or degree % m:
        raise ValueError(f"modulus {m} does not divide degree {degree}")
    img = np.arange(degree, dtype=np.intp)
    a = np.arange(r1, degree, m)
    b = np.arange(r2, degree, m)
    img[a] = b
    img[b] = a
    return img


def format_label(kind: str, t: HorizontalClassTransposition) -> str:
    m = t.modulus
    return f"{kind} {t.r1}({m}),{t.r2}({m})"


_LABEL = re.compile(r"^(tau|omega) (\d+)\((\d+)\),(\d+)\((\d+)\)$")


def parse_label(label: str) -> tuple[str, HorizontalClassTransposition]:
    """Inverse of :func:`format_label`."""
    m = _LABEL.match(label.strip())
    if m is None or m.group(3) != m.group(5):
        raise ValueError(f"not a class transposition label: {label!r}")
    kind, r1, mod, r2, _ = m.groups()
    return kind, HorizontalClassTransposition(int(mod), int(r1), int(r2))


class _TauSequence(Sequence[Permutation]):
    """Read-only sequence of class transpositions built on demand."""

    def __init__(self, rows: np.ndarray, degree: int):
        self._rows = rows
        self._degree = degree
        self._get = lru_cache(maxsize=512)(self._build)

    def _build(self, i: int) -> Permutation:
        m, r1, r2 = (int(v) for v in self._rows[i])
        return Permutation._wrap(_tau_images(m, r1, r2, self._degree))

    def __len__(self) -> int:
        return len(self._rows)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        return self._get(i)


@dataclass
class GeneratorSet:
    """Labelled generators of a common degree.

    ``generators`` may be any sequence of permutations; for class
    transposition families ``transpositions`` holds the ``(m, r1, r2)``
    metadata parallel to ``labels``.
    """

    degree: int
    generators: Sequence[Permutation]
    labels: list[str]
    transpositions: Optional[list[HorizontalClassTransposition]] = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.labels) != len(self.generators):
            raise ValueError("labels and generators differ in length")
        if self.transpositions is not None and len(self.transpositions) != len(self.labels):
            raise ValueError("transposition metadata and labels differ in length")
        # lazy families are correct by construction; check explicit lists
        if isinstance(self.generators, (list, tuple)):
            for g in self.generators:
                if g.degree != self.degree:
                    raise ValueError(f"generator of degree {g.degree} in a degree-{self.degree} set")

    @classmethod
    def from_permutations(cls, perms: Iterable[Permutation], labels=None, degree=None) -> "GeneratorSet":
        perms = list(perms)
        if degree is None:
            if not perms:
                raise ValueError("degree is required for an empty generator list")
            degree = perms[0].degree
        if labels is None:
            labels = [f"g{i}" for i in range(len(perms))]
        return cls(degree, perms, list(labels))

    @classmethod
    def from_transpositions(
        cls, ts: Sequence[HorizontalClassTransposition], degree: int, kind: str = "tau"
    ) -> "GeneratorSet":
        for t in ts:
            if degree % t.modulus:
                raise ValueError(f"modulus {t.modulus} does not divide degree {degree}")
        rows = np.array([(t.modulus, t.r1, t.r2) for t in ts], dtype=np.int64).reshape(-1, 3)
        labels = [format_label(kind, t) for t in ts]
        return cls(degree, _TauSequence(rows, degree), labels, list(ts))

    def __len__(self) -> int:
        return len(self.labels)

    def support_size(self, i: int) -> int:
        """Number of points moved by generator ``i``."""
        if self.transpositions is not None:
            return 2 * self.degree // self.transpositions[i].modulus
        return int(self.generators[i].support().size)

    def is_odd(self, i: int) -> bool:
        if self.transpositions is not None:
            return (self.degree // self.transpositions[i].modulus) % 2 == 1
        return parity(self.generators[i]) == 1

    def __getitem__(self, i: int) -> Permutation:
        return self.generators[i]

    def __iter__(self):
        return (self.generators[i] for i in range(len(self)))

    def __add__(self, other: "GeneratorSet") -> "GeneratorSet":
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        labels = self.labels + other.labels
        if self.transpositions is not None and other.transpositions is not None:
            ts = self.transpositions + other.transpositions
            rows = np.array([(t.modulus, t.r1, t.r2) for t in ts], dtype=np.int64).reshape(-1, 3)
            return GeneratorSet(self.degree, _TauSequence(rows, self.degree), labels, ts)
        return GeneratorSet(self.degree, list(self) + list(other), labels)


def _pairs(m: int, pool: Iterable[int]) -> list[HorizontalClassTransposition]:
    return [HorizontalClassTransposition(m, a, b) for a, b in combinations(sorted(pool), 2)]


def ct_n_generators(m: int, degree: int) -> GeneratorSet:
    """All ``C(m, 2)`` class transpositions of modulus ``m`` at ``degree``."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if degree % m:
        raise ValueError(f"modulus {m} does not divide degree {degree}")
    return GeneratorSet.from_transpositions(_pairs(m, range(m)), degree)


def ct_family_generators(n: int, degree: int) -> GeneratorSet:
    """Generators of ``CT_(n) = <CT_2, ..., CT_n>``, moduli ascending."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    for m in range(2, n + 1):
        if degree % m:
            raise ValueError(f"modulus {m} does not divide degree {degree}")
    ts = [t for m in range(2, n + 1) for t in _pairs(m, range(m))]
    return GeneratorSet.from_transpositions(ts, degree)


def embedded_block_generators(m: int, copies: int) -> GeneratorSet:
    """``CT_m`` acting synchronously on ``copies`` consecutive m-blocks."""
    if copies < 1:
        raise ValueError(f"copies must be >= 1, got {copies}")
    return ct_n_generators(m, m * copies)


def combined_generators(params: Parameters) -> GeneratorSet:
    """``CT_N^[p]`` followed by ``CT_{p^k}^[M]``, both at degree ``N p``."""
    params.require_gap()
    return embedded_block_generators(params.N, params.p) + embedded_block_generators(
        params.pk, params.M
    )


def omega_pk_stab2(params: Parameters) -> GeneratorSet:
    """Generators of the stabilizer of ``PUNCTURE`` in ``CT_{p^k}^[M]``."""
    params.require_gap()
    pk = params.pk
    pool = [r for r in range(pk) if r != PUNCTURE]
    return GeneratorSet.from_transpositions(_pairs(pk, pool), params.degree, kind="omega")


def delta_mod_N(params: Parameters, delta: Iterable[int]) -> set[int]:
    """Residues mod N of the points of ``delta``."""
    return {a % params.N for a in delta}


def omega_N_stab(params: Parameters, delta: Iterable[int]) -> GeneratorSet:
    """Generators of the pointwise stabilizer of ``delta`` in ``CT_N^[p]``.

    ``delta`` must be a subset of the exceptional set.
    """
    from .bridges import exceptional_set

    params.require_gap()
    delta = set(delta)
    es = exceptional_set(params)
    bad = sorted(x for x in delta if x not in es)
    if bad:
        raise ValueError(f"points {bad} are not in the exceptional set")
    removed = delta_mod_N(params, delta)
    pool = [s for s in range(params.N) if s not in removed]
    return GeneratorSet.from_transpositions(_pairs(params.N, pool), params.degree, kind="omega")
