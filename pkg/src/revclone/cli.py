"""Command-line surface.

Subcommands: eval, check, closure-order, member, embed, synth, lift-odd,
lift-ts, identities, scan-conjectures.  Exit codes: 0 success or verdict
true, 1 verdict false, 2 usage or data error, 3 size-cap overflow with a
partial report.  Every subcommand takes --json for a machine-readable
mirror of its report.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import re
import sys
from pathlib import Path

from . import synth
from .circuit import (CircuitParseError, MapStyleError, evaluate_program,
                      format_netlist, parse_program, print_term)
from .closure import check_temp_storage, slice_group
from .core import (Alphabet, Map, MapFormatError, NotBijectiveError, Perm,
                   ShapeError, format_map, is_balanced, is_bijective,
                   parse_map)
from .gates import standard_generators, tg
from .group import from_map
from .identities import run_identity_suite

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_OVERFLOW = 3

MAX_SLICE_DEGREE = 200_000


class DegreeOverflow(RuntimeError):
    """The requested tuple degree exceeds the design envelope."""


def _check_degree(k: int, n: int) -> int:
    degree = k ** n
    if degree > MAX_SLICE_DEGREE:
        raise DegreeOverflow(
            f"degree {degree} = {k}^{n} exceeds the cap {MAX_SLICE_DEGREE}")
    return degree


def _swap_perm(k: int) -> Perm:
    return Perm.from_cycles([(1, 2)], degree=k)


def _cycle_perm(k: int) -> Perm:
    return Perm.from_cycles([tuple(range(1, k + 1))], degree=k)


def _perm_name(perm: Perm) -> str:
    cycles = perm.cycles()
    if not cycles:
        return "id"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)


def _all_letter_perms(k: int) -> list[Perm]:
    return [Perm(images) for images in
            itertools.permutations(range(1, k + 1))]


def builtin_generators(name: str, alphabet: Alphabet) -> list[tuple[str, Map]]:
    """Expand a built-in generator-set name.

    tgN-swap / tgN-cycle: the arity-N gate for the letter swap (1 2) or
    the full letter cycle, control letter 1.  tg-family-ltN: every gate
    TG(i, alpha, 1) with i < N and alpha a non-identity letter
    permutation; with suffix -allo, every control letter too.  std4: the
    four standard generators at arity 2.
    """
    k = alphabet.size
    m = re.fullmatch(r"tg(\d+)-(swap|cycle)", name)
    if m:
        arity = int(m.group(1))
        perm = _swap_perm(k) if m.group(2) == "swap" else _cycle_perm(k)
        return [(name, tg(arity, perm, 1))]
    m = re.fullmatch(r"tg-family-lt(\d+)(-allo)?", name)
    if m:
        bound = int(m.group(1))
        all_o = bool(m.group(2))
        out = []
        for i in range(1, bound):
            for alpha in _all_letter_perms(k):
                if alpha.is_identity():
                    continue
                letters = alphabet.letters() if all_o else (1,)
                for o in letters:
                    label = f"tg{i}-{_perm_name(alpha)}"
                    if all_o:
                        label += f"-o{o}"
                    out.append((label, tg(i, alpha, o)))
        return out
    if name == "std4":
        return standard_generators(k, 2)
    raise ShapeError(f"unknown generator name {name!r}")


def _resolve_generators(names: list[str], alphabet: Alphabet
                        ) -> list[tuple[str, Map]]:
    out: list[tuple[str, Map]] = []
    for name in names:
        path = Path(name)
        if name.endswith(".map") or path.exists():
            loaded = parse_map(path.read_text())
            if loaded.alphabet != alphabet:
                raise ShapeError(f"{name}: alphabet mismatch",
                                 expected=alphabet.size,
                                 actual=loaded.alphabet.size)
            out.append((path.stem, loaded))
        else:
            out.extend(builtin_generators(name, alphabet))
    return out


def _load_map(path: str) -> Map:
    if path == "-":
        return parse_map(sys.stdin.read())
    return parse_map(Path(path).read_text())


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _map_report(f: Map) -> dict:
    return {"alphabet": f.alphabet.size, "arity": f.arity,
            "coarity": f.coarity, "table": [list(row) for row in f.table]}


# -- subcommands -----------------------------------------------------------

def _cmd_eval(args) -> int:
    text = _read_text(args.circ)
    prog = parse_program(text)
    bindings: dict[str, Map] = {}
    if args.maps:
        for path in sorted(Path(args.maps).glob("*.map")):
            bindings[path.stem] = parse_map(path.read_text())
    alphabet = Alphabet(args.alphabet) if args.alphabet else None
    result = evaluate_program(prog, bindings, alphabet)
    if args.json:
        print(json.dumps({"map": _map_report(result)}, sort_keys=True))
    else:
        sys.stdout.write(format_map(result))
    return EXIT_OK


def _cmd_check(args) -> int:
    f = _load_map(args.map)
    balanced = is_balanced(f)
    bijective = is_bijective(f)
    report = {"arity": f.arity, "coarity": f.coarity,
              "balanced": balanced, "bijective": bijective}
    if args.bijective:
        _emit(args, report, [f"bijective: {str(bijective).lower()}"])
        return EXIT_OK if bijective else EXIT_FALSE
    if args.balanced:
        _emit(args, report, [f"balanced: {str(balanced).lower()}"])
        return EXIT_OK if balanced else EXIT_FALSE
    _emit(args, report, [f"arity: {f.arity}", f"coarity: {f.coarity}",
                         f"balanced: {str(balanced).lower()}",
                         f"bijective: {str(bijective).lower()}"])
    return EXIT_OK


def _cmd_closure_order(args) -> int:
    alphabet = Alphabet(args.alphabet)
    _check_degree(alphabet.size, args.arity)
    gens = _resolve_generators(args.gen, alphabet)
    group = slice_group(gens, args.arity, alphabet)
    order = group.order()
    _emit(args, {"order": str(order), "degree": group.degree}, [str(order)])
    return EXIT_OK


def _cmd_member(args) -> int:
    alphabet = Alphabet(args.alphabet)
    target = _load_map(args.target)
    if target.alphabet != alphabet:
        raise ShapeError("target alphabet mismatch", expected=alphabet.size,
                         actual=target.alphabet.size)
    if target.arity != target.coarity or not is_bijective(target):
        raise NotBijectiveError("membership target must be a balanced bijection")
    _check_degree(alphabet.size, target.arity)
    gens = _resolve_generators(args.gen, alphabet)
    group = slice_group(gens, target.arity, alphabet)
    perm = from_map(target)
    word = group.witness(perm) if args.witness else None
    contained = group.contains(perm) if word is None else True
    if args.witness and word is None:
        contained = False
    report = {"member": contained}
    lines = [f"member: {str(contained).lower()}"]
    if args.witness and word is not None:
        names = group.witness_names(word)
        report["witness"] = list(names)
        lines.append("witness: " + (" ".join(names) if names else "(empty)"))
    _emit(args, report, lines)
    return EXIT_OK if contained else EXIT_FALSE


def _cmd_embed(args) -> int:
    g = _load_map(args.map)
    emb = synth.embed(g)
    report = {"r": emb.r, "o": emb.o, "theta1": list(emb.theta1),
              "theta2": list(emb.theta2), "map": _map_report(emb.map)}
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        sys.stdout.write(f"# embedding: r {emb.r} o {emb.o} "
                         f"theta1 {' '.join(map(str, emb.theta1))} "
                         f"theta2 {' '.join(map(str, emb.theta2))}\n")
        sys.stdout.write(format_map(emb.map))
    return EXIT_OK


def _cmd_synth(args) -> int:
    f = _load_map(args.map)
    netlist = synth.synthesize(f, gate_policy=args.policy, o=args.o)
    if args.json:
        print(json.dumps({"wires": netlist.wires,
                          "stages": len(netlist.stages),
                          "netlist": format_netlist(netlist, f.alphabet)},
                         sort_keys=True))
    else:
        sys.stdout.write(format_netlist(netlist, f.alphabet))
    return EXIT_OK


def _cmd_lift_odd(args) -> int:
    alphabet = Alphabet(args.alphabet)
    perm = _swap_perm(alphabet.size) if args.swap else _cycle_perm(alphabet.size)
    term = synth.lift_odd(args.n, perm)
    text = f"(alphabet {alphabet.size})\n{print_term(term)}\n"
    if args.json:
        print(json.dumps({"circ": text}, sort_keys=True))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_cycle_token(token: str, degree: int) -> Perm:
    if token in ("()", "id"):
        return Perm.identity(degree)
    if not re.fullmatch(r"(\(\d+(,\d+)*\))+", token):
        raise ShapeError(f"bad permutation token {token!r}; "
                         "write cycles like (1,2)(3,4)")
    cycles = [tuple(int(x) for x in group.split(","))
              for group in re.findall(r"\(([\d,]+)\)", token)]
    return Perm.from_cycles(cycles, degree=degree)


def _cmd_lift_ts(args) -> int:
    alphabet = Alphabet(args.alphabet)
    perm = _parse_cycle_token(args.perm, alphabet.size)
    lift = synth.lift_temp_storage(args.n, perm, args.o, args.p)
    verdict = check_temp_storage(lift.realiser, lift.constants, lift.reduct)
    netlist_text = format_netlist(lift.netlist, alphabet)
    report = {"wires": lift.netlist.wires,
              "ancillas": len(lift.constants),
              "constants": list(lift.constants),
              "verdict": verdict,
              "netlist": netlist_text}
    lines = [f"wires: {lift.netlist.wires}",
             f"ancilla constants: {' '.join(map(str, lift.constants))}",
             f"temporary storage: {verdict}",
             netlist_text.rstrip("\n")]
    _emit(args, report, lines)
    return EXIT_OK if verdict == "strong" else EXIT_FALSE


def _cmd_identities(args) -> int:
    reports = run_identity_suite(args.alphabet, args.trials, args.seed)
    total_failures = sum(r.failures for r in reports)
    lines = [f"{r.name}: trials={r.trials} failures={r.failures}"
             for r in reports]
    lines.append(f"total failures: {total_failures}")
    _emit(args, {"identities": [{"name": r.name, "trials": r.trials,
                                 "failures": r.failures} for r in reports],
                 "total_failures": total_failures}, lines)
    return EXIT_OK if total_failures == 0 else EXIT_FALSE


def _cmd_scan_conjectures(args) -> int:
    k = args.alphabet
    n = args.n
    alphabet = Alphabet(k)
    degree = _check_degree(k, n)
    full = math.factorial(degree)
    lines = []
    report: dict = {"degree": degree}

    cycle_gens = [("cycle", tg(1, _cycle_perm(k), 1)),
                  (f"tg{n}-cycle", tg(n, _cycle_perm(k), 1))]
    order1 = slice_group(cycle_gens, n, alphabet).order()
    full_match = order1 == full
    lines.append(f"cycle-only generators at arity {n}: order {order1} "
                 f"of {full} ({'equals' if full_match else 'strictly less than'} "
                 f"the full symmetric order at this size)")
    report["cycle_only"] = {"order": str(order1), "full": str(full),
                            "matches_full": full_match}

    family = builtin_generators(f"tg-family-lt{n}-allo", alphabet)
    order2 = slice_group(family, n, alphabet).order()
    alt = full // 2
    alt_match = order2 == alt
    lines.append(f"all gates below arity {n}, every control letter: order "
                 f"{order2}; alternating-group order is {alt} "
                 f"({'matches' if alt_match else 'differs'} at this size)")
    report["below_family"] = {"order": str(order2), "alternating": str(alt),
                              "matches_alternating": alt_match}
    _emit(args, report, lines)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revclone",
        description="Finite multi-valued and reversible mappings: evaluate "
                    "circuits, check properties, compute closure orders, "
                    "test membership, embed, synthesize, and scan.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true",
                       help="emit a machine-readable report")
        p.set_defaults(func=fn)
        return p

    p = add("eval", _cmd_eval, "evaluate a .circ file to a .map table")
    p.add_argument("circ", help=".circ file, or - for stdin")
    p.add_argument("--maps", help="directory of NAME.map generator bindings")
    p.add_argument("--alphabet", type=int, help="alphabet size override")

    p = add("check", _cmd_check, "report or test map properties")
    p.add_argument("map", help=".map file, or - for stdin")
    flags = p.add_mutually_exclusive_group()
    flags.add_argument("--bijective", action="store_true")
    flags.add_argument("--balanced", action="store_true")

    p = add("closure-order", _cmd_closure_order,
            "order of the arity-n slice of the generated closure")
    p.add_argument("--alphabet", type=int, required=True)
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--gen", nargs="+", required=True,
                   help="built-in generator names or .map files")

    p = add("member", _cmd_member,
            "is the target in the closure slice at its arity?")
    p.add_argument("target", help="target .map file")
    p.add_argument("--alphabet", type=int, required=True)
    p.add_argument("--gen", nargs="+", required=True)
    p.add_argument("--witness", action="store_true",
                   help="also print a generator word")

    p = add("embed", _cmd_embed, "complete a map to a bijection")
    p.add_argument("map", help=".map file, or - for stdin")

    p = add("synth", _cmd_synth, "synthesize a gate netlist")
    p.add_argument("map", help=".map file, or - for stdin")
    p.add_argument("--policy", choices=("tg-n", "odd-small"), default="tg-n")
    p.add_argument("--o", type=int, default=1, help="control letter")

    p = add("lift-odd", _cmd_lift_odd,
            "odd-alphabet lift of a wide gate to one- and two-wire gates")
    p.add_argument("--alphabet", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--swap", action="store_true")
    which.add_argument("--cycle", action="store_true")

    p = add("lift-ts", _cmd_lift_ts,
            "strong-temporary-storage lift to three-wire gates")
    p.add_argument("--alphabet", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--perm", required=True, help="letter cycles, e.g. (1,2)")
    p.add_argument("--o", type=int, required=True, help="control letter")
    p.add_argument("--p", type=int, help="ancilla letter (default: smallest != o)")

    p = add("identities", _cmd_identities,
            "run the exchange-law suite on seeded random maps")
    p.add_argument("--alphabet", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)

    p = add("scan-conjectures", _cmd_scan_conjectures,
            "report closure orders against symmetric/alternating sizes")
    p.add_argument("--alphabet", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except DegreeOverflow as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (MapFormatError, CircuitParseError, MapStyleError, ShapeError,
            NotBijectiveError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
