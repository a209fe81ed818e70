"""Independent oracles for the test suite.

These deliberately avoid the code paths they are used to check:
brute-force group enumeration by breadth-first products, sequential
application of map lists, and plain random-table generation.
"""

import random

from revclone.core import Alphabet, Map, evaluate


def bfs_group_elements(gens, degree: int) -> set[tuple[int, ...]]:
    """Every element of the generated permutation group, as image tuples,
    found by breadth-first closure under right multiplication."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gen_images = [g.images for g in gens]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gen_images:
                q = tuple(g[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def apply_in_order(maps, x):
    """Feed x through the balanced maps first to last."""
    for m in maps:
        x = evaluate(m, x)
    return x


def random_table_map(rng: random.Random, alphabet: Alphabet, arity: int,
                     coarity: int) -> Map:
    rows = [tuple(rng.randint(1, alphabet.size) for _ in range(coarity))
            for _ in range(alphabet.count(arity))]
    return Map(alphabet, arity, coarity, rows)


def random_bijection(rng: random.Random, alphabet: Alphabet, n: int) -> Map:
    rows = list(alphabet.tuples(n))
    rng.shuffle(rows)
    return Map(alphabet, n, n, rows)


def residue_map(alphabet: Alphabet, arity: int, coarity: int, fn) -> Map:
    """Build a map from a residue-arithmetic function: letters 1..k stand
    for residues 0..k-1."""
    k = alphabet.size

    def wrapped(x):
        residues = fn(tuple(v - 1 for v in x))
        return tuple(r % k + 1 for r in residues)

    return Map.from_function(alphabet, arity, coarity, wrapped)
