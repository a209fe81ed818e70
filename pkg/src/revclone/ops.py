"""The composition algebra on maps.

Parallel juxtaposition (oplus), partial composition (compose_k and its
greedy form bullet), input/output rearrangement (tau, zeta, bar_tau,
bar_zeta), variable identification and dummy introduction (delta, nabla),
wire permutations (pi), component selection (select), and constant
insertion (insert) with the combined reduct.

All operations are total over validated inputs and materialize the result
table; there is no lazy or symbolic composition.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .core import Alphabet, Map, Perm, ShapeError, encode


def _require_same_alphabet(f: Map, g: Map) -> None:
    if f.alphabet != g.alphabet:
        raise ShapeError("alphabet mismatch",
                         expected=f.alphabet.size, actual=g.alphabet.size)


def oplus(f: Map, g: Map) -> Map:
    """Place f and g next to one another: f reads the first arity(f)
    inputs, g the rest; outputs are concatenated f-first."""
    _require_same_alphabet(f, g)
    rows = []
    for frow in f.table:
        for grow in g.table:
            rows.append(frow + grow)
    return Map(f.alphabet, f.arity + g.arity, f.coarity + g.coarity,
               rows, validate=False)


def compose_k(f: Map, g: Map, k: int) -> Map:
    """Feed the first k outputs of g into the first k inputs of f.

    The composite reads g's inputs first, then f's remaining inputs; its
    outputs are f's outputs followed by g's unconsumed outputs.  This is a
    partial operation: k must not exceed arity(f) or coarity(g).  k == 0 is
    the degenerate case that consumes nothing (it arises from bullet on
    arity-0 or coarity-0 operands).
    """
    _require_same_alphabet(f, g)
    if not 0 <= k <= min(f.arity, g.coarity):
        raise ShapeError(
            "compose_k out of range",
            expected=f"0 <= k <= min(arity f = {f.arity}, coarity g = {g.coarity})",
            actual=k)
    pad = f.arity - k
    alphabet = f.alphabet
    size = alphabet.size
    ftable = f.table
    rows = []
    if pad == 0:
        for grow in g.table:
            index = 0
            for v in grow[:k]:
                index = index * size + v - 1
            rows.append(ftable[index] + grow[k:])
    else:
        pad_count = alphabet.count(pad)
        for grow in g.table:
            tail = grow[k:]
            base = 0
            for v in grow[:k]:
                base = base * size + v - 1
            base *= pad_count
            for offset in range(pad_count):
                rows.append(ftable[base + offset] + tail)
    return Map(alphabet, f.arity + g.arity - k, f.coarity + g.coarity - k,
               rows, validate=False)


def bullet(f: Map, g: Map) -> Map:
    """Greedy composition: compose_k with k = min(arity f, coarity g)."""
    _require_same_alphabet(f, g)
    return compose_k(f, g, min(f.arity, g.coarity))


def _pull_inputs(f: Map, rearranged) -> Map:
    """Table of x -> f(rearranged(x)) for a fixed input rearrangement."""
    alphabet = f.alphabet
    size = alphabet.size
    ftable = f.table
    rows = []
    for x in alphabet.tuple_list(f.arity):
        index = 0
        for v in rearranged(x):
            index = index * size + v - 1
        rows.append(ftable[index])
    return Map(alphabet, f.arity, f.coarity, rows, validate=False)


def tau(f: Map) -> Map:
    """Swap the first two inputs; identity when arity < 2."""
    if f.arity < 2:
        return f
    return _pull_inputs(f, lambda x: (x[1], x[0]) + x[2:])


def zeta(f: Map) -> Map:
    """Rotate the inputs: the first input moves to the last slot of f;
    identity when arity < 2."""
    if f.arity < 2:
        return f
    return _pull_inputs(f, lambda x: x[1:] + (x[0],))


def bar_tau(f: Map) -> Map:
    """Swap the first two outputs; identity when coarity < 2."""
    if f.coarity < 2:
        return f
    rows = [(row[1], row[0]) + row[2:] for row in f.table]
    return Map(f.alphabet, f.arity, f.coarity, rows, validate=False)


def bar_zeta(f: Map) -> Map:
    """Rotate the outputs: the first output moves to the end; identity
    when coarity < 2."""
    if f.coarity < 2:
        return f
    rows = [row[1:] + (row[0],) for row in f.table]
    return Map(f.alphabet, f.arity, f.coarity, rows, validate=False)


def delta(f: Map) -> Map:
    """Identify the first two inputs; identity when arity < 2."""
    if f.arity < 2:
        return f
    alphabet = f.alphabet
    size = alphabet.size
    ftable = f.table
    rows = []
    for x in alphabet.tuple_list(f.arity - 1):
        index = x[0] - 1
        for v in x:
            index = index * size + v - 1
        rows.append(ftable[index])
    return Map(alphabet, f.arity - 1, f.coarity, rows, validate=False)


def nabla(f: Map) -> Map:
    """Introduce a dummy first input."""
    alphabet = f.alphabet
    rows = f.table * alphabet.size
    return Map(alphabet, f.arity + 1, f.coarity, rows, validate=False)


def pi(alphabet: Alphabet, alpha: Perm) -> Map:
    """The wire permutation pi_alpha: output position j carries input
    alpha^{-1}(j), so the letter on wire i moves to wire alpha(i)."""
    n = alpha.degree
    inv = alpha.inverse()
    sources = tuple(inv(j) - 1 for j in range(1, n + 1))
    rows = [tuple(x[i] for i in sources) for x in alphabet.tuple_list(n)]
    return Map(alphabet, n, n, rows, validate=False)


def _check_selection(theta: Sequence[int], coarity: int,
                     distinct: bool) -> tuple[int, ...]:
    theta = tuple(theta)
    for t in theta:
        if not 1 <= t <= coarity:
            raise ShapeError("selection index out of range",
                             expected=f"1..{coarity}", actual=t)
    if distinct and len(set(theta)) != len(theta):
        raise ShapeError("selection indices must be distinct", actual=theta)
    return theta


def select(theta: Sequence[int], f: Map) -> Map:
    """Keep the output components named by theta, in theta's order.
    Indices must be distinct."""
    theta = _check_selection(theta, f.coarity, distinct=True)
    rows = [tuple(row[t - 1] for t in theta) for row in f.table]
    return Map(f.alphabet, f.arity, len(theta), rows, validate=False)


def select_multi(theta: Sequence[int], f: Map) -> Map:
    """Like select but repetitions are permitted, so components can be
    duplicated: select_multi((1, 1), i_1) is the fan-out."""
    theta = _check_selection(theta, f.coarity, distinct=False)
    rows = [tuple(row[t - 1] for t in theta) for row in f.table]
    return Map(f.alphabet, f.arity, len(theta), rows, validate=False)


def insert(positions: Iterable[int], constants: Sequence[int], f: Map) -> Map:
    """Fix the inputs at the given positions to the given constants.

    Positions must be strictly increasing; constants[j] lands at
    positions[j] and the remaining inputs keep their relative order.
    """
    positions = tuple(positions)
    constants = tuple(constants)
    if len(positions) != len(constants):
        raise ShapeError("positions and constants must pair up",
                         expected=len(positions), actual=len(constants))
    if any(b <= a for a, b in zip(positions, positions[1:])):
        raise ShapeError("positions must be strictly increasing",
                         actual=positions)
    for p in positions:
        if not 1 <= p <= f.arity:
            raise ShapeError("insert position out of range",
                             expected=f"1..{f.arity}", actual=p)
    for a in constants:
        f.alphabet.check_letter(a)
    fixed = dict(zip(positions, constants))
    slots = [fixed.get(p) for p in range(1, f.arity + 1)]
    free = [i for i, v in enumerate(slots) if v is None]
    alphabet = f.alphabet
    rows = []
    for x in alphabet.tuples(f.arity - len(positions)):
        y = list(slots)
        for i, letter in zip(free, x):
            y[i] = letter
        rows.append(f.table[encode(tuple(y), alphabet, f.arity)])
    return Map(alphabet, f.arity - len(positions), f.coarity, rows,
               validate=False)


def reduct(f: Map, theta_prime: Iterable[int], theta: Sequence[int],
           o: int) -> Map:
    """Insert the constant o at every position in theta_prime, then select
    the output components theta."""
    theta_prime = tuple(theta_prime)
    return select(theta, insert(theta_prime, (o,) * len(theta_prime), f))
