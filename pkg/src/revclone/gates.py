"""Constructors for the named maps: generalized controlled gates,
elementary and atomic tuple transpositions, fan-out, and the standard
four-element generating family."""

from __future__ import annotations

from .core import Alphabet, Map, Perm, ShapeError


def tg(n: int, alpha: Perm, o: int) -> Map:
    """The controlled gate on n wires: apply the letter permutation alpha
    to the last wire exactly when every other wire carries the control
    letter o.  For n == 1 this is alpha as a unary map (o is irrelevant).
    """
    k = alpha.degree
    alphabet = Alphabet(k)
    if n < 1:
        raise ShapeError("gate needs at least one wire", expected=">= 1",
                         actual=n)
    alphabet.check_letter(o)
    if n == 1:
        rows = [(alpha(x),) for x in alphabet.letters()]
        return Map(alphabet, 1, 1, rows, validate=False)
    rows = []
    for x in alphabet.tuples(n):
        if all(c == o for c in x[:-1]):
            rows.append(x[:-1] + (alpha(x[-1]),))
        else:
            rows.append(x)
    return Map(alphabet, n, n, rows, validate=False)


def elementary(alphabet: Alphabet, x: tuple[int, ...],
               y: tuple[int, ...]) -> Map:
    """The transposition of the two distinct tuples x and y; every other
    tuple is fixed."""
    x = tuple(x)
    y = tuple(y)
    if len(x) != len(y):
        raise ShapeError("tuples must have equal length",
                         expected=len(x), actual=len(y))
    if x == y:
        raise ShapeError("elementary swap needs two distinct tuples",
                         actual=x)
    for letter in x + y:
        alphabet.check_letter(letter)
    n = len(x)
    rows = list(alphabet.tuples(n))
    xi = rows.index(x)
    yi = rows.index(y)
    rows[xi], rows[yi] = y, x
    return Map(alphabet, n, n, rows, validate=False)


def elementary_pair(f: Map) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """The swapped pair (x, y) if f is an elementary permutation,
    else None."""
    if f.arity != f.coarity:
        return None
    moved = []
    for x, row in zip(f.alphabet.tuples(f.arity), f.table):
        if x != row:
            moved.append((x, row))
            if len(moved) > 2:
                return None
    if len(moved) != 2:
        return None
    (x, fx), (y, fy) = moved
    if fx == y and fy == x:
        return (x, y)
    return None


def is_atomic(f: Map) -> bool:
    """Elementary and the two swapped tuples differ in exactly one entry."""
    pair = elementary_pair(f)
    if pair is None:
        return False
    x, y = pair
    return sum(a != b for a, b in zip(x, y)) == 1


def fanout(alphabet: Alphabet, n: int) -> Map:
    """The fan-out phi_n: one input copied to n outputs."""
    if n < 1:
        raise ShapeError("fan-out needs at least one output",
                         expected=">= 1", actual=n)
    rows = [(a,) * n for a in alphabet.letters()]
    return Map(alphabet, 1, n, rows, validate=False)


def standard_generators(k: int, n: int) -> list[tuple[str, Map]]:
    """The four generators: the unary swap and cycle of the letters, and
    the two arity-n gates they induce with control letter 1.

    Four named entries always; for k == 2 the swap and the cycle coincide
    as maps.
    """
    if k < 2:
        raise ShapeError("need at least two letters", expected=">= 2", actual=k)
    swap = Perm.from_cycles([(1, 2)], degree=k)
    cycle = Perm.from_cycles([tuple(range(1, k + 1))], degree=k)
    return [
        ("swap", tg(1, swap, 1)),
        ("cycle", tg(1, cycle, 1)),
        (f"tg{n}-swap", tg(n, swap, 1)),
        (f"tg{n}-cycle", tg(n, cycle, 1)),
    ]
