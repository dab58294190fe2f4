"""Permutations of qubit labels, the S_n group algebra, and Young symmetrizers."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

LABELS = "abcdefgh"
MAX_N = len(LABELS)

_CYCLE_RE = re.compile(r"\(([a-h]+)\)")


@dataclass(frozen=True)
class Permutation:
    """Bijection of qubit positions 0..n-1; ``mapping[i]`` is the image of i.

    Cycle notation reads left to right: (abc) sends a to b, b to c, c to a.
    """

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"not a permutation of 0..{len(self.mapping) - 1}: {self.mapping!r}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        m = list(range(n))
        m[i], m[j] = j, i
        return cls(tuple(m))

    @classmethod
    def from_cycles(cls, n: int, cycles: list[tuple[int, ...]]) -> Permutation:
        m = list(range(n))
        for cycle in cycles:
            for pos, i in enumerate(cycle):
                m[i] = cycle[(pos + 1) % len(cycle)]
        return cls(tuple(m))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def compose(self, other: Permutation) -> Permutation:
        """Group product self*other: ``other`` acts first."""
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        return Permutation(tuple(self.mapping[other.mapping[i]] for i in range(self.n)))

    def inverse(self) -> Permutation:
        m = [0] * self.n
        for i, j in enumerate(self.mapping):
            m[j] = i
        return Permutation(tuple(m))

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest label, sorted by that label."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            i = self.mapping[start]
            while i != start:
                cycle.append(i)
                seen[i] = True
                i = self.mapping[i]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_text(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "e"
        return "".join("(" + "".join(LABELS[i] for i in c) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.cycle_text()


def parse_permutation(text: str, n: int) -> Permutation:
    """Parse cycle notation like ``(ab)(cd)`` or ``e`` against labels a..h."""
    text = text.strip()
    if text == "e":
        return Permutation.identity(n)
    if not re.fullmatch(r"(\([a-h]+\))+", text):
        raise ValueError(f"bad cycle notation: {text!r}")
    cycles = []
    for group in _CYCLE_RE.findall(text):
        labels = [LABELS.index(ch) for ch in group]
        if len(set(labels)) != len(labels) or max(labels) >= n:
            raise ValueError(f"bad cycle {group!r} for n={n}")
        cycles.append(tuple(labels))
    flat = [i for c in cycles for i in c]
    if len(set(flat)) != len(flat):
        raise ValueError(f"cycles overlap in {text!r}")
    return Permutation.from_cycles(n, cycles)


class GroupAlgebraElement:
    """Formal integer-weighted sum of S_n elements, e.g. a Young idempotent.

    Products distribute with ``p*q`` meaning q acts first, matching operator
    composition; coefficients stay exact integers and zero terms are dropped.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: dict[Permutation, int] | None = None):
        acc: dict[Permutation, int] = {}
        for perm, coeff in (terms or {}).items():
            if perm.n != n:
                raise ValueError(f"size mismatch: permutation on {perm.n} in algebra on {n}")
            if coeff:
                acc[perm] = acc.get(perm, 0) + coeff
        self.n = n
        self._terms = {p: c for p, c in acc.items() if c}

    @classmethod
    def one(cls, n: int) -> GroupAlgebraElement:
        return cls(n, {Permutation.identity(n): 1})

    @classmethod
    def from_permutation(cls, perm: Permutation, coeff: int = 1) -> GroupAlgebraElement:
        return cls(perm.n, {perm: coeff})

    @property
    def terms(self) -> dict[Permutation, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupAlgebraElement)
            and self.n == other.n
            and self._terms == other._terms
        )

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        self._check(other)
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) + c
        return GroupAlgebraElement(self.n, out)

    def __sub__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        return self + (-1) * other

    def __neg__(self) -> GroupAlgebraElement:
        return (-1) * self

    def __rmul__(self, scalar: int) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.n, {p: scalar * c for p, c in self._terms.items()})

    def __mul__(self, other: GroupAlgebraElement | int) -> GroupAlgebraElement:
        if isinstance(other, int):
            return other * self
        self._check(other)
        out: dict[Permutation, int] = {}
        for p, cp in self._terms.items():
            for q, cq in other._terms.items():
                pq = p.compose(q)
                out[pq] = out.get(pq, 0) + cp * cq
        return GroupAlgebraElement(self.n, out)

    def _check(self, other: GroupAlgebraElement) -> None:
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")

    def proportionality(self, other: GroupAlgebraElement) -> int | None:
        """Integer c with self == c*other termwise, or None."""
        self._check(other)
        if set(self._terms) != set(other._terms):
            return None
        ratio: int | None = None
        for p, c in self._terms.items():
            d = other._terms[p]
            if c % d:
                return None
            if ratio is None:
                ratio = c // d
            elif c != ratio * d:
                return None
        return ratio

    def text(self) -> str:
        """Render as e.g. ``e + (ab) - 2(ac)``, terms sorted by permutation mapping."""
        if not self._terms:
            return "0"
        parts = []
        for perm in sorted(self._terms, key=lambda p: p.mapping):
            coeff = self._terms[perm]
            mag = abs(coeff)
            body = perm.cycle_text()
            if mag != 1:
                body = f"{mag}{body}" if body != "e" else f"{mag}e"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str, n: int) -> GroupAlgebraElement:
        text = text.strip()
        if text == "0":
            return cls(n)
        terms: dict[Permutation, int] = {}
        chunks = re.findall(r"([+-]?)\s*(\d*)\s*(e|(?:\([a-h]+\))+)", text)
        rebuilt = "".join(f"{s}{m}{b}" for s, m, b in chunks)
        if rebuilt != re.sub(r"\s+", "", text):
            raise ValueError(f"bad algebra element text: {text!r}")
        for sign, mag, body in chunks:
            coeff = (-1 if sign == "-" else 1) * (int(mag) if mag else 1)
            perm = parse_permutation(body, n)
            terms[perm] = terms.get(perm, 0) + coeff
        return cls(n, terms)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"GroupAlgebraElement({self.n}, {self.text()!r})"


def group_elements(n: int) -> list[Permutation]:
    """All n! permutations in lexicographic order of their mapping."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}, got {n}")
    return [Permutation(m) for m in itertools.permutations(range(n))]


def symmetrizer(n: int, labels: tuple[int, ...]) -> GroupAlgebraElement:
    """Sum of all permutations of the given labels, other labels fixed."""
    terms = {}
    for arrangement in itertools.permutations(labels):
        m = list(range(n))
        for src, dst in zip(labels, arrangement):
            m[src] = dst
        terms[Permutation(tuple(m))] = 1
    return GroupAlgebraElement(n, terms)


def antisymmetrizer(n: int, labels: tuple[int, ...]) -> GroupAlgebraElement:
    """Signed sum of all permutations of the given labels."""
    terms = {}
    for arrangement in itertools.permutations(labels):
        m = list(range(n))
        for src, dst in zip(labels, arrangement):
            m[src] = dst
        perm = Permutation(tuple(m))
        terms[perm] = perm.sign()
    return GroupAlgebraElement(n, terms)


@dataclass(frozen=True)
class YoungDiagram:
    """Partition of n drawn as weakly decreasing rows of cells."""

    row_lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        rows = self.row_lengths
        if not rows or min(rows) <= 0 or any(lo > hi for hi, lo in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must be weakly decreasing positive: {rows!r}")

    @property
    def n(self) -> int:
        return sum(self.row_lengths)

    @property
    def num_rows(self) -> int:
        return len(self.row_lengths)


@dataclass(frozen=True)
class YoungTableau:
    """Standard filling of a Young diagram with labels 0..n-1."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        shape = tuple(len(r) for r in self.rows)
        YoungDiagram(shape)
        labels = sorted(i for row in self.rows for i in row)
        if labels != list(range(len(labels))):
            raise ValueError(f"filling must use each of 0..n-1 once: {self.rows!r}")
        for row in self.rows:
            if list(row) != sorted(row):
                raise ValueError(f"row not increasing: {row!r}")
        for col in self.columns():
            if list(col) != sorted(col):
                raise ValueError(f"column not increasing: {col!r}")

    @property
    def diagram(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(r) for r in self.rows))

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def columns(self) -> tuple[tuple[int, ...], ...]:
        width = len(self.rows[0])
        return tuple(
            tuple(row[c] for row in self.rows if c < len(row)) for c in range(width)
        )

    def row_word(self) -> tuple[int, ...]:
        return tuple(i for row in self.rows for i in row)

    def text(self) -> str:
        return "/".join("".join(LABELS[i] for i in row) for row in self.rows)

    def __str__(self) -> str:
        return self.text()


def young_diagrams(n: int) -> list[YoungDiagram]:
    """All diagrams of n, ordered by decreasing first row then lexicographically."""

    def parts(total: int, cap: int) -> list[tuple[int, ...]]:
        if total == 0:
            return [()]
        out = []
        for first in range(min(total, cap), 0, -1):
            out.extend((first, *rest) for rest in parts(total - first, first))
        return out

    return [YoungDiagram(p) for p in sorted(parts(n, n), reverse=True)]


def _fillings(shape: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    n = sum(shape)
    results: list[tuple[tuple[int, ...], ...]] = []
    rows: list[list[int]] = [[] for _ in shape]

    def place(label: int) -> None:
        if label == n:
            results.append(tuple(tuple(r) for r in rows))
            return
        for r, row in enumerate(rows):
            if len(row) < shape[r] and (r == 0 or len(rows[r - 1]) > len(row)):
                row.append(label)
                place(label + 1)
                row.pop()

    place(0)
    return results


@lru_cache(maxsize=None)
def _standard_tableaux_cached(n: int) -> tuple[YoungTableau, ...]:
    out: list[YoungTableau] = []
    for diagram in young_diagrams(n):
        fillings = sorted(_fillings(diagram.row_lengths), key=lambda f: tuple(i for r in f for i in r))
        out.extend(YoungTableau(f) for f in fillings)
    return tuple(out)


def standard_tableaux(n: int, max_rows: int | None = None) -> list[YoungTableau]:
    """All standard tableaux of n in the Fig.-1 order (λ runs over this list).

    Diagrams sort by decreasing row lengths, tableaux within a diagram by
    lexicographic row-reading word; ``max_rows`` keeps only wide diagrams.
    """
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}, got {n}")
    tableaux = _standard_tableaux_cached(n)
    if max_rows is None:
        return list(tableaux)
    return [t for t in tableaux if len(t.rows) <= max_rows]


def young_idempotent(tableau: YoungTableau) -> GroupAlgebraElement:
    """Irreducible symmetrizer of a tableau: row symmetrizers times column
    antisymmetrizers, rows on the left."""
    n = tableau.n
    product = GroupAlgebraElement.one(n)
    for row in tableau.rows:
        if len(row) > 1:
            product = product * symmetrizer(n, row)
    for col in tableau.columns():
        if len(col) > 1:
            product = product * antisymmetrizer(n, col)
    return product


def dimension_count(n: int) -> int:
    """Total group order n!, a cheap sanity hook for callers."""
    return factorial(n)
