"""Permutations of ``{0, ..., degree-1}`` stored as numpy image tables.

Points act on the right: ``x^g = g.images[x]`` and ``compose(a, b)`` applies
``a`` first, then ``b``. A class transposition of modulus ``m`` is periodic,
so its restriction to ``[0, P)`` with ``m | P`` loses nothing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple

import numpy as np


class Permutation:
    """An immutable bijection of ``range(degree)``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images, *, check: bool = True):
        arr = np.array(images, dtype=np.intp, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("a permutation needs a non-empty 1-d image table")
        if check:
            seen = np.zeros(arr.size, dtype=bool)
            if arr.min() < 0 or arr.max() >= arr.size:
                raise ValueError("image out of range")
            seen[arr] = True
            if not seen.all():
                raise ValueError("images are not a bijection")
        arr.setflags(write=False)
        self.images = arr
        self._hash = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Permutation":
        # trusted fast path for results of numpy operations on valid tables
        obj = cls.__new__(cls)
        arr.setflags(write=False)
        obj.images = arr
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(np.arange(degree, dtype=np.intp))

    @property
    def degree(self) -> int:
        return self.images.size

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.images, other.images)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images.tobytes())
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.images != np.arange(self.degree))

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)


def _check_degrees(a: Permutation, b: Permutation) -> None:
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``x -> b(a(x))``."""
    _check_degrees(a, b)
    return Permutation._wrap(b.images[a.images])


def inverse(a: Permutation) -> Permutation:
    inv = np.empty_like(a.images)
    inv[a.images] = np.arange(a.degree, dtype=np.intp)
    return Permutation._wrap(inv)


def cycles(a: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its least point, sorted by it."""
    img = a.images.tolist()
    seen = [False] * len(img)
    out = []
    for start in range(len(img)):
        if seen[start] or img[start] == start:
            continue
        cyc = [start]
        seen[start] = True
        x = img[start]
        while x != start:
            seen[x] = True
            cyc.append(x)
            x = img[x]
        out.append(tuple(cyc))
    return out


def parity(a: Permutation) -> int:
    """0 for even, 1 for odd."""
    return sum(len(c) - 1 for c in cycles(a)) % 2


def is_even(a: Permutation) -> bool:
    return parity(a) == 0


def from_cycles(cycs: Iterable[Sequence[int]], degree: int) -> Permutation:
    img = list(range(degree))
    used = set()
    for cyc in cycs:
        for x in cyc:
            if not 0 <= x < degree:
                raise ValueError(f"point {x} outside [0, {degree})")
            if x in used:
                raise ValueError(f"point {x} occurs in more than one cycle")
            used.add(x)
        for x, y in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
            img[x] = y
    return Permutation._wrap(np.array(img, dtype=np.intp))


def format_cycles(a: Permutation) -> str:
    cs = cycles(a)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


class PermutationParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        self.text = text
        self.pos = pos
        super().__init__(f"{msg} at position {pos}: {text!r}")


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse cycle notation ``"(0 3 5)(1 2)"`` or an image list ``"[3,2,1,0]"``."""
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise PermutationParseError(text, len(text), "missing ']'")
        body = s[1:-1].strip()
        try:
            imgs = [int(t) for t in body.split(",")] if body else []
        except ValueError:
            raise PermutationParseError(text, 1, "image list must hold integers") from None
        if len(imgs) != degree:
            raise PermutationParseError(
                text, 0, f"image list has {len(imgs)} entries, expected {degree}"
            )
        try:
            return Permutation(imgs)
        except ValueError as exc:
            raise PermutationParseError(text, 0, str(exc)) from None

    cycs: list[list[int]] = []
    current = None
    pos = 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        tok_pos = m.start(1) if m.group(1) is not None else m.start(2)
        pos = m.end()
        if m.group(1) is not None:
            if current is None:
                raise PermutationParseError(text, tok_pos, "number outside a cycle")
            current.append(int(m.group(1)))
        elif m.group(2) == "(":
            if current is not None:
                raise PermutationParseError(text, tok_pos, "nested '('")
            current = []
        elif m.group(2) == ")":
            if current is None:
                raise PermutationParseError(text, tok_pos, "unmatched ')'")
            cycs.append(current)
            current = None
        elif m.group(2) == ",":
            if current is None:
                raise PermutationParseError(text, tok_pos, "unexpected ','")
        else:
            raise PermutationParseError(text, tok_pos, f"unexpected {m.group(2)!r}")
    if current is not None:
        raise PermutationParseError(text, len(text), "unclosed '('")
    try:
        return from_cycles(cycs, degree)
    except ValueError as exc:
        raise PermutationParseError(text, 0, str(exc)) from None


Letter = Tuple[int, bool]


@dataclass(frozen=True)
class Word:
    """A product of generators, read left to right; ``(i, True)`` is ``g_i^-1``."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), bool(v)) for i, v in self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((i, not inv) for i, inv in reversed(self.letters)))

    def format(self, labels: Sequence[str]) -> str:
        if not self.letters:
            return "()"
        return " * ".join(labels[i] + ("^-1" if inv else "") for i, inv in self.letters)


def evaluate(word: Word, gens) -> Permutation:
    """Multiply out ``word`` over ``gens`` (a GeneratorSet or a list of permutations)."""
    perms = getattr(gens, "generators", gens)
    degree = gens.degree if hasattr(gens, "degree") else perms[0].degree
    n_gens = len(perms)
    cur = np.arange(degree, dtype=np.intp)
    cache: dict = {}
    for i, inv in word:
        if not 0 <= i < n_gens:
            raise IndexError(f"generator index {i} out of range for {n_gens} generators")
        key = (i, inv)
        table = cache.get(key)
        if table is None:
            g = perms[i]
            table = inverse(g).images if inv else g.images
            cache[key] = table
        cur = table[cur]
    return Permutation._wrap(cur)


def apply_word(word: Word, gens, x: int) -> int:
    """Image of a single point under ``word``; cheaper than :func:`evaluate`."""
    perms = getattr(gens, "generators", gens)
    for i, inv in word:
        g = perms[i]
        if inv:
            x = int(np.flatnonzero(g.images == x)[0])
        else:
            x = int(g.images[x])
    return x
