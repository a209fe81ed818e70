"""Term DSL for building maps, plus gate netlists.

Terms are S-expressions over generator names and the operation set:

    (oplus T T ...)        parallel juxtaposition (folds left)
    (comp K T T)           feed the first K outputs of the right term
                           into the first K inputs of the left term
    (bullet T T ...)       greedy composition (folds left)
    (tau T) (zeta T)       input swap / rotation
    (btau T) (bzeta T)     output swap / rotation
    (delta T) (nabla T)    identify first two inputs / dummy first input
    (sel (I ...) T)        keep output components I, in order
    (ins ((POS A) ...) T)  fix input POS to letter A
    (pi CYCLES)            wire permutation
    (tg N CYCLES O)        controlled gate on N wires, control letter O
    (id N)                 identity on N wires
    NAME                   bound generator

Permutation literals are cycle groups ``(p a b ...)``; juxtaposed groups
multiply left to right, and a singleton ``(p n)`` pins the degree of a
``pi`` literal.  A file may open with ``(alphabet K)`` and ``(let NAME T)``
forms before the final result term; ``#`` starts a comment.

A Netlist is an ordered list of gate stages on numbered wires; stages
apply first to last, so the induced map is the bullet-chain of the stages
taken last to first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from . import gates, ops
from .core import Alphabet, Map, Perm, ShapeError, identity_map

PermSpec = tuple[tuple[int, ...], ...]


class CircuitParseError(ValueError):
    """Syntax error in .circ text, with 1-based position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class Term:
    """Base class for term nodes."""
    __slots__ = ()


@dataclass(frozen=True)
class Ref(Term):
    name: str


@dataclass(frozen=True)
class IdLit(Term):
    n: int


@dataclass(frozen=True)
class TgLit(Term):
    n: int
    perm: PermSpec
    o: int


@dataclass(frozen=True)
class PiLit(Term):
    perm: PermSpec


@dataclass(frozen=True)
class Oplus(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Comp(Term):
    k: int
    left: Term
    right: Term


@dataclass(frozen=True)
class Bullet(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Tau(Term):
    child: Term


@dataclass(frozen=True)
class Zeta(Term):
    child: Term


@dataclass(frozen=True)
class BarTau(Term):
    child: Term


@dataclass(frozen=True)
class BarZeta(Term):
    child: Term


@dataclass(frozen=True)
class Delta(Term):
    child: Term


@dataclass(frozen=True)
class Nabla(Term):
    child: Term


@dataclass(frozen=True)
class Sel(Term):
    indices: tuple[int, ...]
    child: Term


@dataclass(frozen=True)
class Ins(Term):
    items: tuple[tuple[int, int], ...]
    child: Term


@dataclass(frozen=True)
class Program:
    alphabet: int | None
    lets: tuple[tuple[str, Term], ...]
    result: Term


# -- permutation literal helpers -------------------------------------------

def spec_degree(spec: PermSpec) -> int:
    points = [p for cycle in spec for p in cycle]
    if not points:
        raise ShapeError("permutation literal mentions no points")
    return max(points)


def perm_from_spec(spec: PermSpec, degree: int) -> Perm:
    return Perm.from_cycles(spec, degree=degree)


def pi_spec(perm: Perm) -> PermSpec:
    """Cycle spec for a wire permutation, padded with a singleton so the
    degree survives printing."""
    cycles = perm.cycles()
    top = max((max(c) for c in cycles), default=0)
    if top < perm.degree:
        cycles = cycles + ((perm.degree,),)
    return cycles


def letter_spec(perm: Perm) -> PermSpec:
    """Cycle spec for a letter permutation inside a tg literal; the degree
    comes from the alphabet at evaluation time."""
    cycles = perm.cycles()
    if not cycles:
        cycles = ((1,),)
    return cycles


# -- parsing ----------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*\Z")


def _tokenize(text: str):
    tokens = []
    line, col, i = 1, 1, 0
    while i < len(text):
        c = text[i]
        if c == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif c == "\n":
            line += 1
            col = 1
            i += 1
        elif c.isspace():
            col += 1
            i += 1
        elif c in "()":
            tokens.append((c, c, line, col))
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < len(text) and not text[i].isspace() and text[i] not in "()#":
                i += 1
                col += 1
            tokens.append(("atom", text[start:i], line, start_col))
    return tokens


def _read_sexps(text: str):
    tokens = _tokenize(text)
    pos = 0

    def read_one():
        nonlocal pos
        if pos >= len(tokens):
            raise CircuitParseError("unexpected end of input", 0, 0)
        kind, value, line, col = tokens[pos]
        pos += 1
        if kind == "(":
            items = []
            while True:
                if pos >= len(tokens):
                    raise CircuitParseError("unclosed '('", line, col)
                if tokens[pos][0] == ")":
                    pos += 1
                    return ("list", items, line, col)
                items.append(read_one())
        if kind == ")":
            raise CircuitParseError("unmatched ')'", line, col)
        return ("atom", value, line, col)

    forms = []
    while pos < len(tokens):
        forms.append(read_one())
    return forms


def _err(node, message: str) -> CircuitParseError:
    return CircuitParseError(message, node[2], node[3])


def _as_int(node, what: str) -> int:
    if node[0] != "atom":
        raise _err(node, f"expected {what} (an integer)")
    try:
        return int(node[1])
    except ValueError:
        raise _err(node, f"expected {what} (an integer), got {node[1]!r}") from None


def _is_p_list(node) -> bool:
    return (node[0] == "list" and node[1]
            and node[1][0][0] == "atom" and node[1][0][1] == "p")


def _cycles_from(nodes) -> PermSpec:
    cycles = []
    for node in nodes:
        if not _is_p_list(node):
            raise _err(node, "expected a cycle group (p a b ...)")
        cycle = tuple(_as_int(item, "a point") for item in node[1][1:])
        if not cycle:
            raise _err(node, "empty cycle group")
        cycles.append(cycle)
    return tuple(cycles)


def _term_from_sexp(node) -> Term:
    if node[0] == "atom":
        text = node[1]
        if _NAME_RE.match(text):
            return Ref(text)
        raise _err(node, f"expected a term, got {text!r}")
    items = node[1]
    if not items or items[0][0] != "atom":
        raise _err(node, "expected an operator")
    head = items[0][1]
    args = items[1:]
    if head == "id":
        if len(args) != 1:
            raise _err(node, "id takes one argument")
        return IdLit(_as_int(args[0], "a width"))
    if head == "pi":
        if not args:
            raise _err(node, "pi needs at least one cycle group")
        return PiLit(_cycles_from(args))
    if head == "tg":
        if len(args) < 3:
            raise _err(node, "tg takes a width, cycle groups, and a control letter")
        n = _as_int(args[0], "a width")
        o = _as_int(args[-1], "a control letter")
        return TgLit(n, _cycles_from(args[1:-1]), o)
    if head in ("oplus", "bullet"):
        if len(args) < 2:
            raise _err(node, f"{head} takes at least two arguments")
        terms = [_term_from_sexp(a) for a in args]
        ctor = Oplus if head == "oplus" else Bullet
        out = terms[0]
        for nxt in terms[1:]:
            out = ctor(out, nxt)
        return out
    if head == "comp":
        if len(args) != 3:
            raise _err(node, "comp takes k and two terms")
        return Comp(_as_int(args[0], "k"),
                    _term_from_sexp(args[1]), _term_from_sexp(args[2]))
    if head in ("tau", "zeta", "btau", "bzeta", "delta", "nabla"):
        if len(args) != 1:
            raise _err(node, f"{head} takes one argument")
        ctor = {"tau": Tau, "zeta": Zeta, "btau": BarTau,
                "bzeta": BarZeta, "delta": Delta, "nabla": Nabla}[head]
        return ctor(_term_from_sexp(args[0]))
    if head == "sel":
        if len(args) != 2 or args[0][0] != "list":
            raise _err(node, "sel takes an index list and a term")
        indices = tuple(_as_int(i, "an index") for i in args[0][1])
        return Sel(indices, _term_from_sexp(args[1]))
    if head == "ins":
        if len(args) != 2 or args[0][0] != "list":
            raise _err(node, "ins takes a ((pos letter) ...) list and a term")
        items_out = []
        for pair in args[0][1]:
            if pair[0] != "list" or len(pair[1]) != 2:
                raise _err(pair, "expected a (pos letter) pair")
            items_out.append((_as_int(pair[1][0], "a position"),
                              _as_int(pair[1][1], "a letter")))
        return Ins(tuple(items_out), _term_from_sexp(args[1]))
    raise _err(node, f"unknown operator {head!r}")


def parse(text: str) -> Term:
    """Parse a single term."""
    forms = _read_sexps(text)
    if len(forms) != 1:
        raise CircuitParseError("expected exactly one term", 1, 1)
    return _term_from_sexp(forms[0])


def parse_program(text: str) -> Program:
    """Parse a .circ file: optional (alphabet K), (let NAME T) forms, and
    one result term."""
    forms = _read_sexps(text)
    alphabet = None
    lets: list[tuple[str, Term]] = []
    result = None
    for node in forms:
        if (node[0] == "list" and node[1] and node[1][0][0] == "atom"
                and node[1][0][1] == "alphabet"):
            if alphabet is not None:
                raise _err(node, "duplicate alphabet declaration")
            if len(node[1]) != 2:
                raise _err(node, "alphabet takes one integer")
            alphabet = _as_int(node[1][1], "an alphabet size")
            continue
        if (node[0] == "list" and node[1] and node[1][0][0] == "atom"
                and node[1][0][1] == "let"):
            if len(node[1]) != 3 or node[1][1][0] != "atom":
                raise _err(node, "let takes a name and a term")
            name = node[1][1][1]
            if not _NAME_RE.match(name):
                raise _err(node[1][1], f"bad binding name {name!r}")
            lets.append((name, _term_from_sexp(node[1][2])))
            continue
        if result is not None:
            raise _err(node, "multiple result terms")
        result = _term_from_sexp(node)
    if result is None:
        raise CircuitParseError("no result term", 1, 1)
    return Program(alphabet, tuple(lets), result)


# -- printing ---------------------------------------------------------------

def _spec_text(spec: PermSpec) -> str:
    return " ".join("(p " + " ".join(map(str, cycle)) + ")" for cycle in spec)


def print_term(t: Term) -> str:
    """Render a term; parse(print_term(t)) reproduces t."""
    if isinstance(t, Ref):
        return t.name
    if isinstance(t, IdLit):
        return f"(id {t.n})"
    if isinstance(t, TgLit):
        return f"(tg {t.n} {_spec_text(t.perm)} {t.o})"
    if isinstance(t, PiLit):
        return f"(pi {_spec_text(t.perm)})"
    if isinstance(t, Oplus):
        return f"(oplus {print_term(t.left)} {print_term(t.right)})"
    if isinstance(t, Comp):
        return f"(comp {t.k} {print_term(t.left)} {print_term(t.right)})"
    if isinstance(t, Bullet):
        return f"(bullet {print_term(t.left)} {print_term(t.right)})"
    for cls, name in ((Tau, "tau"), (Zeta, "zeta"), (BarTau, "btau"),
                      (BarZeta, "bzeta"), (Delta, "delta"), (Nabla, "nabla")):
        if isinstance(t, cls):
            return f"({name} {print_term(t.child)})"
    if isinstance(t, Sel):
        return f"(sel ({' '.join(map(str, t.indices))}) {print_term(t.child)})"
    if isinstance(t, Ins):
        pairs = " ".join(f"({p} {a})" for p, a in t.items)
        return f"(ins ({pairs}) {print_term(t.child)})"
    raise TypeError(f"not a term: {t!r}")


# -- shape checking ---------------------------------------------------------

def shape_of(t: Term, shapes: Mapping[str, tuple[int, int]] | None = None
             ) -> tuple[int, int]:
    """(arity, coarity) of a term, computed without building tables.
    Shape failures name the offending node by its path from the root."""
    return _shape(t, shapes or {}, "")


def _fail(path: str, message: str, **kw) -> ShapeError:
    where = path or "root"
    return ShapeError(f"at {where}: {message}", **kw)


def _shape(t: Term, shapes, path: str) -> tuple[int, int]:
    if isinstance(t, Ref):
        if t.name not in shapes:
            raise _fail(path, f"unbound name {t.name!r}")
        return shapes[t.name]
    if isinstance(t, IdLit):
        if t.n < 0:
            raise _fail(path, "id width must be non-negative", actual=t.n)
        return (t.n, t.n)
    if isinstance(t, TgLit):
        if t.n < 1:
            raise _fail(path, "tg width must be positive", actual=t.n)
        return (t.n, t.n)
    if isinstance(t, PiLit):
        d = spec_degree(t.perm)
        return (d, d)
    if isinstance(t, Oplus):
        ln, lm = _shape(t.left, shapes, path + ".oplus[0]")
        rn, rm = _shape(t.right, shapes, path + ".oplus[1]")
        return (ln + rn, lm + rm)
    if isinstance(t, (Comp, Bullet)):
        tag = "comp" if isinstance(t, Comp) else "bullet"
        ln, lm = _shape(t.left, shapes, path + f".{tag}[0]")
        rn, rm = _shape(t.right, shapes, path + f".{tag}[1]")
        k = t.k if isinstance(t, Comp) else min(ln, rm)
        if not 0 <= k <= min(ln, rm):
            raise _fail(path, "composition out of range",
                        expected=f"0 <= k <= min({ln}, {rm})", actual=k)
        return (ln + rn - k, lm + rm - k)
    if isinstance(t, (Tau, Zeta)):
        return _shape(t.child, shapes, path + ".in-perm")
    if isinstance(t, (BarTau, BarZeta)):
        return _shape(t.child, shapes, path + ".out-perm")
    if isinstance(t, Delta):
        n, m = _shape(t.child, shapes, path + ".delta")
        return (n - 1, m) if n >= 2 else (n, m)
    if isinstance(t, Nabla):
        n, m = _shape(t.child, shapes, path + ".nabla")
        return (n + 1, m)
    if isinstance(t, Sel):
        n, m = _shape(t.child, shapes, path + ".sel")
        if len(set(t.indices)) != len(t.indices):
            raise _fail(path, "sel indices must be distinct", actual=t.indices)
        for i in t.indices:
            if not 1 <= i <= m:
                raise _fail(path, "sel index out of range",
                            expected=f"1..{m}", actual=i)
        return (n, len(t.indices))
    if isinstance(t, Ins):
        n, m = _shape(t.child, shapes, path + ".ins")
        positions = [p for p, _ in t.items]
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise _fail(path, "ins positions must be strictly increasing",
                        actual=tuple(positions))
        for p in positions:
            if not 1 <= p <= n:
                raise _fail(path, "ins position out of range",
                            expected=f"1..{n}", actual=p)
        return (n - len(t.items), m)
    raise TypeError(f"not a term: {t!r}")


# -- evaluation ---------------------------------------------------------------

def evaluate_term(t: Term, bindings: Mapping[str, Map] | None = None,
                  alphabet: Alphabet | None = None) -> Map:
    """The map a term denotes.  The alphabet comes from the bindings when
    any exist; literal-only terms need it passed explicitly."""
    bindings = bindings or {}
    for name, bound in bindings.items():
        if alphabet is None:
            alphabet = bound.alphabet
        elif bound.alphabet != alphabet:
            raise ShapeError(f"binding {name!r} uses a different alphabet",
                             expected=alphabet.size, actual=bound.alphabet.size)
    shape_of(t, {name: (m.arity, m.coarity) for name, m in bindings.items()})
    return _eval(t, bindings, alphabet)


def _need_alphabet(alphabet: Alphabet | None) -> Alphabet:
    if alphabet is None:
        raise ShapeError("alphabet required to evaluate literals")
    return alphabet


def _eval(t: Term, bindings, alphabet: Alphabet | None) -> Map:
    if isinstance(t, Ref):
        return bindings[t.name]
    if isinstance(t, IdLit):
        return identity_map(_need_alphabet(alphabet), t.n)
    if isinstance(t, TgLit):
        k = _need_alphabet(alphabet).size
        return gates.tg(t.n, perm_from_spec(t.perm, k), t.o)
    if isinstance(t, PiLit):
        d = spec_degree(t.perm)
        return ops.pi(_need_alphabet(alphabet), perm_from_spec(t.perm, d))
    if isinstance(t, Oplus):
        return ops.oplus(_eval(t.left, bindings, alphabet),
                         _eval(t.right, bindings, alphabet))
    if isinstance(t, Comp):
        return ops.compose_k(_eval(t.left, bindings, alphabet),
                             _eval(t.right, bindings, alphabet), t.k)
    if isinstance(t, Bullet):
        return ops.bullet(_eval(t.left, bindings, alphabet),
                          _eval(t.right, bindings, alphabet))
    if isinstance(t, Tau):
        return ops.tau(_eval(t.child, bindings, alphabet))
    if isinstance(t, Zeta):
        return ops.zeta(_eval(t.child, bindings, alphabet))
    if isinstance(t, BarTau):
        return ops.bar_tau(_eval(t.child, bindings, alphabet))
    if isinstance(t, BarZeta):
        return ops.bar_zeta(_eval(t.child, bindings, alphabet))
    if isinstance(t, Delta):
        return ops.delta(_eval(t.child, bindings, alphabet))
    if isinstance(t, Nabla):
        return ops.nabla(_eval(t.child, bindings, alphabet))
    if isinstance(t, Sel):
        return ops.select(t.indices, _eval(t.child, bindings, alphabet))
    if isinstance(t, Ins):
        positions = tuple(p for p, _ in t.items)
        constants = tuple(a for _, a in t.items)
        return ops.insert(positions, constants,
                          _eval(t.child, bindings, alphabet))
    raise TypeError(f"not a term: {t!r}")


def evaluate_program(prog: Program, bindings: Mapping[str, Map] | None = None,
                     alphabet: Alphabet | None = None) -> Map:
    if prog.alphabet is not None:
        declared = Alphabet(prog.alphabet)
        if alphabet is not None and alphabet != declared:
            raise ShapeError("alphabet declaration conflicts with caller",
                             expected=alphabet.size, actual=prog.alphabet)
        alphabet = declared
    env = dict(bindings or {})
    for name, term in prog.lets:
        env[name] = evaluate_term(term, env, alphabet)
    return evaluate_term(prog.result, env, alphabet)


# -- netlists -----------------------------------------------------------------

@dataclass(frozen=True)
class Stage:
    """One gate application: kind "tg" (controlled gate, the last listed
    wire is the target), "pi" (wire permutation of the listed wires), or
    "u" (unary letter permutation)."""

    kind: str
    perm: Perm
    o: int | None
    wires: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(self.wires))
        if self.kind not in ("tg", "pi", "u"):
            raise ShapeError("unknown stage kind", actual=self.kind)
        if len(set(self.wires)) != len(self.wires):
            raise ShapeError("stage wires must be distinct", actual=self.wires)
        if self.kind == "u" and len(self.wires) != 1:
            raise ShapeError("unary stage takes exactly one wire",
                             actual=self.wires)
        if self.kind == "tg" and (len(self.wires) < 1 or self.o is None):
            raise ShapeError("tg stage needs wires and a control letter")
        if self.kind == "pi" and self.perm.degree != len(self.wires):
            raise ShapeError("pi stage degree must match its wire count",
                             expected=len(self.wires), actual=self.perm.degree)


@dataclass(frozen=True)
class Netlist:
    wires: int
    stages: tuple[Stage, ...]

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        if self.wires < 0:
            raise ShapeError("wire count must be non-negative",
                             actual=self.wires)
        for stage in self.stages:
            for w in stage.wires:
                if not 1 <= w <= self.wires:
                    raise ShapeError("stage wire out of range",
                                     expected=f"1..{self.wires}", actual=w)


def _apply_stage(stage: Stage, state: list[int]) -> None:
    if stage.kind == "pi":
        values = [state[w - 1] for w in stage.wires]
        inv = stage.perm.inverse()
        moved = [values[inv(j) - 1] for j in range(1, len(values) + 1)]
        for w, v in zip(stage.wires, moved):
            state[w - 1] = v
        return
    if stage.kind == "u" or len(stage.wires) == 1:
        w = stage.wires[0]
        state[w - 1] = stage.perm(state[w - 1])
        return
    *controls, target = stage.wires
    if all(state[c - 1] == stage.o for c in controls):
        state[target - 1] = stage.perm(state[target - 1])


def simulate(nl: Netlist, alphabet: Alphabet) -> Map:
    """Apply the stages first to last on every input tuple."""
    for stage in nl.stages:
        if stage.kind in ("tg", "u") and stage.perm.degree != alphabet.size:
            raise ShapeError("gate letter permutation has the wrong degree",
                             expected=alphabet.size, actual=stage.perm.degree)
    rows = []
    for x in alphabet.tuples(nl.wires):
        state = list(x)
        for stage in nl.stages:
            _apply_stage(stage, state)
        rows.append(tuple(state))
    return Map(alphabet, nl.wires, nl.wires, rows, validate=False)


def _routing(stage_wires: tuple[int, ...], width: int) -> Perm:
    """The wire permutation moving stage wire j to position j, remaining
    wires packed behind in ascending order."""
    images = [0] * width
    for j, w in enumerate(stage_wires, start=1):
        images[w - 1] = j
    rest = sorted(set(range(1, width + 1)) - set(stage_wires))
    for j, w in enumerate(rest, start=len(stage_wires) + 1):
        images[w - 1] = j
    return Perm(tuple(images))


def stage_term(stage: Stage, width: int) -> Term:
    """The stage as a term: the gate, identity-padded to full width,
    conjugated by routing wire permutations."""
    r = len(stage.wires)
    if stage.kind == "pi":
        gate: Term = PiLit(pi_spec(stage.perm))
    elif stage.kind == "u":
        gate = TgLit(1, letter_spec(stage.perm), 1)
    else:
        gate = TgLit(r, letter_spec(stage.perm), stage.o)
    padded = gate if r == width else Oplus(gate, IdLit(width - r))
    route = _routing(stage.wires, width)
    if route.is_identity():
        return padded
    return Bullet(Bullet(PiLit(pi_spec(route.inverse())), padded),
                  PiLit(pi_spec(route)))


def netlist_to_term(nl: Netlist) -> Term:
    """A term denoting the same map as the netlist: the bullet-chain of
    the stage terms, last stage outermost because bullet applies its right
    argument first."""
    term: Term = IdLit(nl.wires)
    for i, stage in enumerate(nl.stages):
        st = stage_term(stage, nl.wires)
        term = st if i == 0 else Bullet(st, term)
    return term


class MapStyleError(ValueError):
    """Malformed netlist text."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def perm_token(perm: Perm) -> str:
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)


def _parse_perm_token(token: str, degree: int, line: int) -> Perm:
    if token == "()":
        return Perm.identity(degree)
    if not re.fullmatch(r"(\(\d+(,\d+)*\))+", token):
        raise MapStyleError(f"bad permutation token {token!r}", line)
    cycles = [tuple(int(x) for x in group.split(","))
              for group in re.findall(r"\(([\d,]+)\)", token)]
    try:
        return Perm.from_cycles(cycles, degree=degree)
    except ShapeError as exc:
        raise MapStyleError(str(exc), line) from None


def format_netlist(nl: Netlist, alphabet: Alphabet | None = None) -> str:
    lines = []
    if alphabet is not None:
        lines.append(f"alphabet {alphabet.size}")
    lines.append(f"wires {nl.wires}")
    for stage in nl.stages:
        wires = " ".join(map(str, stage.wires))
        if stage.kind == "tg":
            lines.append(f"tg {len(stage.wires)} {perm_token(stage.perm)} "
                         f"{stage.o} @ {wires}")
        elif stage.kind == "pi":
            lines.append(f"pi {perm_token(stage.perm)} @ {wires}")
        else:
            lines.append(f"u {perm_token(stage.perm)} @ {wires}")
    return "\n".join(lines) + "\n"


def parse_netlist(text: str, alphabet: Alphabet | None = None
                  ) -> tuple[Netlist, Alphabet | None]:
    """Parse netlist text.  Returns the netlist and the alphabet named in
    the header (or the one passed in)."""
    wires = None
    stages = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "alphabet":
            if len(parts) != 2:
                raise MapStyleError("alphabet takes one integer", lineno)
            declared = Alphabet(int(parts[1]))
            if alphabet is not None and alphabet != declared:
                raise MapStyleError("alphabet header conflicts with caller",
                                    lineno)
            alphabet = declared
            continue
        if parts[0] == "wires":
            if wires is not None:
                raise MapStyleError("duplicate wires header", lineno)
            wires = int(parts[1])
            continue
        if wires is None:
            raise MapStyleError("stage before wires header", lineno)
        if "@" not in parts:
            raise MapStyleError("stage line needs '@ wires'", lineno)
        at = parts.index("@")
        head, wire_toks = parts[:at], parts[at + 1:]
        stage_wires = tuple(int(w) for w in wire_toks)
        if head[0] == "tg":
            if len(head) != 4:
                raise MapStyleError("tg stage is 'tg <n> <perm> <o>'", lineno)
            n = int(head[1])
            if n != len(stage_wires):
                raise MapStyleError("tg width disagrees with wire list", lineno)
            if alphabet is None:
                raise MapStyleError("tg stage needs an alphabet header", lineno)
            perm = _parse_perm_token(head[2], alphabet.size, lineno)
            stages.append(Stage("tg", perm, int(head[3]), stage_wires))
        elif head[0] == "pi":
            if len(head) != 2:
                raise MapStyleError("pi stage is 'pi <perm>'", lineno)
            perm = _parse_perm_token(head[1], len(stage_wires), lineno)
            stages.append(Stage("pi", perm, None, stage_wires))
        elif head[0] == "u":
            if len(head) != 2:
                raise MapStyleError("u stage is 'u <perm>'", lineno)
            if alphabet is None:
                raise MapStyleError("u stage needs an alphabet header", lineno)
            perm = _parse_perm_token(head[1], alphabet.size, lineno)
            stages.append(Stage("u", perm, None, stage_wires))
        else:
            raise MapStyleError(f"unknown stage kind {head[0]!r}", lineno)
    if wires is None:
        raise MapStyleError("missing wires header")
    return Netlist(wires, tuple(stages)), alphabet
