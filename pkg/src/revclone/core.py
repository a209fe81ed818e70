"""Alphabets, permutations, and dense truth tables for maps A^n -> A^m.

Letters are 1-based: the alphabet of size k is {1, ..., k}.  A Map stores
the complete table of output tuples, indexed by the big-endian encoding of
the input tuple, so structural questions (bijectivity, balance, inversion)
are direct table scans.  Maps are immutable values; every operation on them
returns a fresh value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator


class ShapeError(ValueError):
    """An operand has the wrong shape (arity, co-arity, length or range)."""

    def __init__(self, message: str, expected=None, actual=None):
        if expected is not None or actual is not None:
            message = f"{message}: expected {expected}, got {actual}"
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class NotBijectiveError(ValueError):
    """A bijection was required but the map is not one."""


class MapFormatError(ValueError):
    """Malformed .map text; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Alphabet:
    """The letter set {1, ..., size}."""

    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ShapeError("alphabet size must be a positive integer",
                             expected=">= 1", actual=self.size)

    def letters(self) -> range:
        return range(1, self.size + 1)

    def tuples(self, n: int) -> Iterator[tuple[int, ...]]:
        """All letter tuples of length n, in encoding (lexicographic) order."""
        return itertools.product(self.letters(), repeat=n)

    def tuple_list(self, n: int) -> tuple[tuple[int, ...], ...]:
        """Cached materialization of :meth:`tuples`; the hot loops in the
        composition operations reuse it heavily."""
        return _tuple_list(self.size, n)

    def count(self, n: int) -> int:
        return self.size ** n

    def check_letter(self, letter: int) -> None:
        if not isinstance(letter, int) or not 1 <= letter <= self.size:
            raise ShapeError("letter out of range",
                             expected=f"1..{self.size}", actual=letter)


@dataclass(frozen=True)
class Perm:
    """A permutation of {1, ..., degree}, stored as the tuple of images.

    Products are taken left to right: ``(a * b)(p) == b(a(p))``, so with
    a = (1 2 3) and b = (1 2) the product a * b fixes 1 and swaps 2, 3,
    while the functional composite a(b(1)) is 3.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ShapeError("not a permutation of 1..n", actual=self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]],
                    degree: int | None = None) -> "Perm":
        """Build the left-to-right product of the given cycles.

        The degree defaults to the largest point mentioned; singleton
        cycles are legal and merely pin the degree.
        """
        cycles = [tuple(c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=0)
        if degree is None:
            degree = top
        if degree < top or degree < 0:
            raise ShapeError("cycle point exceeds degree",
                             expected=f"<= {degree}", actual=top)
        perm = cls.identity(degree)
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= degree:
                    raise ShapeError("cycle point out of range",
                                     expected=f"1..{degree}", actual=point)
            if len(set(cycle)) != len(cycle):
                raise ShapeError("repeated point in cycle", actual=cycle)
            if len(cycle) > 1:
                images = list(range(1, degree + 1))
                for a, b in zip(cycle, cycle[1:]):
                    images[a - 1] = b
                images[cycle[-1] - 1] = cycle[0]
                perm = perm * cls(tuple(images))
        return perm

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.degree != self.degree:
            raise ShapeError("permutation degree mismatch",
                             expected=self.degree, actual=other.degree)
        return Perm(tuple(other.images[i - 1] for i in self.images))

    def __pow__(self, exponent: int) -> "Perm":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Perm.identity(self.degree)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "Perm":
        images = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            images[j - 1] = i
        return Perm(tuple(images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycle notation: fixed points omitted, each cycle starts at its
        least point, cycles ordered by that point."""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self(start)
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self(point)
            out.append(tuple(cycle))
        return tuple(out)

    def sign(self) -> int:
        flips = sum(len(c) - 1 for c in self.cycles())
        return -1 if flips % 2 else 1


_TUPLE_LIST_CACHE: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}


def _tuple_list(k: int, n: int) -> tuple[tuple[int, ...], ...]:
    key = (k, n)
    cached = _TUPLE_LIST_CACHE.get(key)
    if cached is None:
        cached = tuple(itertools.product(range(1, k + 1), repeat=n))
        if k ** n <= 200_000:
            _TUPLE_LIST_CACHE[key] = cached
    return cached


def encode(t: tuple[int, ...], alphabet: Alphabet, n: int) -> int:
    """Big-endian mixed-radix index of a letter tuple: t[0] is most
    significant.  Inverse of :func:`decode`."""
    if len(t) != n:
        raise ShapeError("tuple length mismatch", expected=n, actual=len(t))
    k = alphabet.size
    index = 0
    for letter in t:
        if not 1 <= letter <= k:
            raise ShapeError("letter out of range",
                             expected=f"1..{k}", actual=letter)
        index = index * k + (letter - 1)
    return index


def decode(index: int, alphabet: Alphabet, n: int) -> tuple[int, ...]:
    """The letter tuple whose :func:`encode` value is ``index``."""
    k = alphabet.size
    if not 0 <= index < k ** n:
        raise ShapeError("index out of range",
                         expected=f"0..{k ** n - 1}", actual=index)
    out = [0] * n
    for pos in range(n - 1, -1, -1):
        index, digit = divmod(index, k)
        out[pos] = digit + 1
    return tuple(out)


class Map:
    """A total function A^arity -> A^coarity as a dense truth table.

    ``table[i]`` is the output tuple for the input tuple with encoding i.
    Instances are immutable and hashable; the hash is cached because maps
    are deduplicated heavily during closure searches.
    """

    __slots__ = ("alphabet", "arity", "coarity", "table", "_hash")

    def __init__(self, alphabet: Alphabet, arity: int, coarity: int,
                 table: Iterable[tuple[int, ...]], validate: bool = True):
        self.alphabet = alphabet
        self.arity = arity
        self.coarity = coarity
        self.table = tuple(table)
        self._hash = None
        if validate:
            self._validate()

    def _validate(self) -> None:
        if self.arity < 0 or self.coarity < 0:
            raise ShapeError("arity and coarity must be non-negative",
                             actual=(self.arity, self.coarity))
        expected_rows = self.alphabet.count(self.arity)
        if len(self.table) != expected_rows:
            raise ShapeError("table length must be k^arity",
                             expected=expected_rows, actual=len(self.table))
        k = self.alphabet.size
        for row in self.table:
            if len(row) != self.coarity:
                raise ShapeError("output tuple length mismatch",
                                 expected=self.coarity, actual=len(row))
            for letter in row:
                if not 1 <= letter <= k:
                    raise ShapeError("output letter out of range",
                                     expected=f"1..{k}", actual=letter)

    @classmethod
    def from_function(cls, alphabet: Alphabet, arity: int, coarity: int,
                      fn: Callable[[tuple[int, ...]], tuple[int, ...]]) -> "Map":
        table = [tuple(fn(x)) for x in alphabet.tuples(arity)]
        return cls(alphabet, arity, coarity, table)

    def __call__(self, x: tuple[int, ...]) -> tuple[int, ...]:
        return evaluate(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Map):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.arity == other.arity
                and self.coarity == other.coarity and self.table == other.table)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alphabet.size, self.arity,
                               self.coarity, self.table))
        return self._hash

    def __repr__(self) -> str:
        return (f"Map(k={self.alphabet.size}, arity={self.arity}, "
                f"coarity={self.coarity})")


def identity_map(alphabet: Alphabet, n: int) -> Map:
    """The identity on A^n (i_n)."""
    table = tuple(alphabet.tuples(n))
    return Map(alphabet, n, n, table, validate=False)


def evaluate(f: Map, x: tuple[int, ...]) -> tuple[int, ...]:
    """Apply f to the letter tuple x."""
    return f.table[encode(tuple(x), f.alphabet, f.arity)]


def is_balanced(f: Map) -> bool:
    """Arity equals co-arity."""
    return f.arity == f.coarity


def is_bijective(f: Map) -> bool:
    """True iff the table is injective and covers all of A^coarity.

    Over a finite alphabet this forces arity == coarity, so every
    bijective map is balanced; the check is structural, not short-circuited
    on shapes.
    """
    rows = set(f.table)
    return len(rows) == len(f.table) == f.alphabet.count(f.coarity)


def inverse(f: Map) -> Map:
    """The inverse of a bijective (hence balanced) map."""
    if not is_bijective(f):
        raise NotBijectiveError(
            f"cannot invert a non-bijective map of shape "
            f"({f.arity},{f.coarity})")
    n = f.arity
    table = [()] * len(f.table)
    for index, row in enumerate(f.table):
        table[encode(row, f.alphabet, n)] = decode(index, f.alphabet, n)
    return Map(f.alphabet, n, n, table, validate=False)


def parse_map(text: str) -> Map:
    """Parse the .map text format.

    Header lines ``alphabet <k>``, ``arity <n>``, ``coarity <m>`` come
    first (in any order among themselves), then exactly k^n rows
    ``x1 .. xn -> y1 .. ym`` in any order, each input covered exactly once.
    ``#`` starts a comment.
    """
    headers: dict[str, int] = {}
    rows: dict[int, tuple[int, ...]] = {}
    alphabet = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            if len(headers) < 3:
                raise MapFormatError("table row before complete header", lineno)
            left, _, right = line.partition("->")
            try:
                xs = tuple(int(tok) for tok in left.split())
                ys = tuple(int(tok) for tok in right.split())
            except ValueError:
                raise MapFormatError("non-integer letter", lineno) from None
            if len(xs) != headers["arity"]:
                raise MapFormatError(
                    f"expected {headers['arity']} input letters, got {len(xs)}",
                    lineno)
            if len(ys) != headers["coarity"]:
                raise MapFormatError(
                    f"expected {headers['coarity']} output letters, got {len(ys)}",
                    lineno)
            k = alphabet.size
            for letter in xs + ys:
                if not 1 <= letter <= k:
                    raise MapFormatError(f"letter {letter} outside 1..{k}", lineno)
            try:
                index = encode(xs, alphabet, headers["arity"])
            except ShapeError as exc:
                raise MapFormatError(str(exc), lineno) from None
            if index in rows:
                raise MapFormatError(f"duplicate row for input {xs}", lineno)
            rows[index] = ys
        else:
            parts = line.split()
            if len(parts) != 2 or parts[0] not in ("alphabet", "arity", "coarity"):
                raise MapFormatError(f"unrecognized line {line!r}", lineno)
            key = parts[0]
            if key in headers:
                raise MapFormatError(f"duplicate header {key!r}", lineno)
            try:
                value = int(parts[1])
            except ValueError:
                raise MapFormatError(f"non-integer {key}", lineno) from None
            if key == "alphabet" and value < 1:
                raise MapFormatError("alphabet size must be positive", lineno)
            if key in ("arity", "coarity") and value < 0:
                raise MapFormatError(f"{key} must be non-negative", lineno)
            headers[key] = value
            if len(headers) == 3:
                alphabet = Alphabet(headers["alphabet"])
    if len(headers) < 3:
        raise MapFormatError("missing header line(s): need alphabet, arity, coarity")
    expected = alphabet.count(headers["arity"])
    if len(rows) != expected:
        missing = next(i for i in range(expected) if i not in rows)
        raise MapFormatError(
            f"table covers {len(rows)} of {expected} inputs; first missing "
            f"input is {decode(missing, alphabet, headers['arity'])}")
    table = tuple(rows[i] for i in range(expected))
    return Map(alphabet, headers["arity"], headers["coarity"], table)


def format_map(f: Map) -> str:
    """Render a map in .map text format, rows in canonical encoding order."""
    lines = [f"alphabet {f.alphabet.size}",
             f"arity {f.arity}",
             f"coarity {f.coarity}"]
    for index, row in enumerate(f.table):
        x = decode(index, f.alphabet, f.arity)
        lines.append(f"{' '.join(map(str, x))} -> {' '.join(map(str, row))}")
    return "\n".join(lines) + "\n"
