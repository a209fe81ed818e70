import json

from revclone.cli import main
from revclone.core import Alphabet, Perm, format_map, parse_map
from revclone.circuit import parse_netlist, simulate
from revclone.gates import tg

A2 = Alphabet(2)
A3 = Alphabet(3)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_map(tmp_path, name, mapping):
    path = tmp_path / name
    path.write_text(format_map(mapping))
    return str(path)


def test_closure_order_prints_eight(capsys):
    code, out, _ = run(capsys, "closure-order", "--alphabet", "2",
                       "--arity", "2", "--gen", "tg1-swap")
    assert code == 0
    assert out.strip() == "8"


def test_closure_order_json(capsys):
    code, out, _ = run(capsys, "closure-order", "--alphabet", "2",
                       "--arity", "2", "--gen", "tg1-swap", "--json")
    assert code == 0
    assert json.loads(out) == {"degree": 4, "order": "8"}


def test_member_excluded_by_parity(tmp_path, capsys):
    target = write_map(tmp_path, "tg3-swap.map",
                       tg(3, Perm.from_cycles([(1, 2)], degree=2), 1))
    code, out, _ = run(capsys, "member", target, "--alphabet", "2",
                       "--gen", "tg-family-lt3")
    assert code == 1
    assert "member: false" in out


def test_member_with_witness(tmp_path, capsys):
    target = write_map(tmp_path, "t.map",
                       tg(2, Perm.from_cycles([(1, 2)], degree=2), 1))
    code, out, _ = run(capsys, "member", target, "--alphabet", "2",
                       "--gen", "tg2-swap", "--witness")
    assert code == 0
    assert "member: true" in out
    assert "witness:" in out


def test_check_flags_and_exit_codes(tmp_path, capsys):
    from revclone.gates import fanout

    biject = write_map(tmp_path, "a.map", tg(1, Perm.from_cycles([(1, 2)]), 1))
    code, out, _ = run(capsys, "check", biject, "--bijective")
    assert code == 0 and "true" in out
    fan = write_map(tmp_path, "fan.map", fanout(A2, 2))
    code, out, _ = run(capsys, "check", fan, "--bijective")
    assert code == 1 and "false" in out
    code, out, _ = run(capsys, "check", fan)
    assert code == 0
    assert "arity: 1" in out and "coarity: 2" in out


def test_eval_with_bindings(tmp_path, capsys):
    write_map(tmp_path, "G.map", tg(2, Perm.from_cycles([(1, 2)]), 1))
    circ = tmp_path / "double.circ"
    circ.write_text("(bullet G G)\n")
    code, out, _ = run(capsys, "eval", str(circ), "--maps", str(tmp_path))
    assert code == 0
    result = parse_map(out)
    from revclone.core import identity_map
    assert result == identity_map(A2, 2)


def test_lift_odd_eval_pipe_is_byte_exact(tmp_path, capsys):
    code, out, _ = run(capsys, "lift-odd", "--alphabet", "3", "--n", "3",
                       "--swap")
    assert code == 0
    circ = tmp_path / "lift.circ"
    circ.write_text(out)
    code, evaluated, _ = run(capsys, "eval", str(circ))
    assert code == 0
    expected = format_map(tg(3, Perm.from_cycles([(1, 2)], degree=3), 1))
    assert evaluated == expected


def test_synth_output_simulates_back(tmp_path, capsys):
    import random

    from oracles import random_bijection

    f = random_bijection(random.Random(3), A3, 2)
    path = write_map(tmp_path, "f.map", f)
    code, out, _ = run(capsys, "synth", path, "--policy", "odd-small")
    assert code == 0
    netlist, alphabet = parse_netlist(out)
    assert simulate(netlist, alphabet) == f


def test_synth_odd_small_rejected_on_even_alphabets(tmp_path, capsys):
    f = tg(2, Perm.from_cycles([(1, 2)], degree=2), 1)
    path = write_map(tmp_path, "f.map", f)
    code, _, err = run(capsys, "synth", path, "--policy", "odd-small")
    assert code == 2
    assert "even" in err


def test_embed_output_is_a_map_file(tmp_path, capsys):
    from revclone.core import Map

    g = Map.from_function(A2, 2, 1, lambda x: (2,) if x == (2, 2) else (1,))
    path = write_map(tmp_path, "g.map", g)
    code, out, _ = run(capsys, "embed", path)
    assert code == 0
    assert out.startswith("# embedding: r 3 o 1")
    f = parse_map(out)
    assert f.arity == f.coarity == 3


def test_lift_ts_reports_strong(capsys):
    code, out, _ = run(capsys, "lift-ts", "--alphabet", "2", "--n", "4",
                       "--perm", "(1,2)", "--o", "1")
    assert code == 0
    assert "temporary storage: strong" in out
    assert "wires: 5" in out


def test_identities_deterministic_and_green(capsys):
    code1, out1, _ = run(capsys, "identities", "--alphabet", "3",
                         "--trials", "40", "--seed", "9")
    code2, out2, _ = run(capsys, "identities", "--alphabet", "3",
                         "--trials", "40", "--seed", "9")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "total failures: 0" in out1


def test_scan_conjectures_observational_wording(capsys):
    code, out, _ = run(capsys, "scan-conjectures", "--alphabet", "2",
                       "--n", "3")
    assert code == 0
    assert "at this size" in out
    assert "order" in out


def test_scan_degree_guard(capsys):
    code, _, err = run(capsys, "scan-conjectures", "--alphabet", "5",
                       "--n", "9")
    assert code == 3
    assert "exceeds" in err


def test_usage_and_data_errors(tmp_path, capsys):
    assert main([]) == 2
    assert main(["no-such-command"]) == 2
    bad = tmp_path / "bad.map"
    bad.write_text("alphabet 2\narity 1\ncoarity 1\n1 -> 3\n2 -> 1\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2
    assert "line" in err
    code, _, err = run(capsys, "closure-order", "--alphabet", "2",
                       "--arity", "2", "--gen", "no-such-gen")
    assert code == 2
