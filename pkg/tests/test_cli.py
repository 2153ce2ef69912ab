import itertools
import json

import pytest

from feynmandd.cli import main
from feynmandd.families import gen_lrw_family, gen_random_circuit
from feynmandd.circuit import serialize_circuit
from feynmandd.sop import format_polynomial

from helpers import seven_var_polynomial


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_simulate_single_h(tmp_path, capsys):
    f = write(tmp_path, "h.txt", "gateset T\nqubits 1\nh 0\n")
    code, out, _ = run(capsys, "simulate", f)
    assert code == 0
    assert out.splitlines()[0] == "amplitude 0.7071067811865476 + 0i"


def test_simulate_hth(tmp_path, capsys):
    f = write(tmp_path, "hth.txt", "gateset T\nqubits 1\nh 0\nt 0\nh 0\n")
    code, out, _ = run(capsys, "simulate", f)
    assert out.splitlines()[0] == "amplitude 0.8535533905932737 + 0.35355339059327373i"


def test_simulate_json_schema(tmp_path, capsys):
    f = write(tmp_path, "c.txt", serialize_circuit(gen_lrw_family(30, 5, 0)))
    code, out, _ = run(capsys, "simulate", f, "--order", "greedy", "--json")
    rep = json.loads(out)
    assert code == 0
    assert set(rep) >= {"amplitude", "counts", "modulus", "e", "dd", "ordering", "timing"}
    assert set(rep["timing"]) == {"extract_ms", "order_ms", "build_ms", "count_ms"}
    assert rep["ordering"]["width"] <= 8
    assert sum(int(c) for c in rep["counts"]) == 2 ** rep["n_internal"]
    assert all(isinstance(c, str) for c in rep["counts"])


def test_simulate_in_out_bits(tmp_path, capsys):
    f = write(tmp_path, "h.txt", "gateset T\nqubits 1\nh 0\n")
    _, out, _ = run(capsys, "simulate", f, "--in", "1", "--out", "1")
    assert out.splitlines()[0] == "amplitude -0.7071067811865476 + 0i"
    code, _, err = run(capsys, "simulate", f, "--in", "10")
    assert code == 1 and "length" in err


def test_explicit_order(tmp_path, capsys):
    f = write(tmp_path, "p.txt", format_polynomial(seven_var_polynomial()))
    order = write(tmp_path, "perm.txt", "6 5 4 3 2 1 0\n")
    code, out, _ = run(capsys, "simulate", f, "--order", f"explicit:{order}", "--json")
    rep = json.loads(out)
    assert rep["ordering"]["perm"] == [6, 5, 4, 3, 2, 1, 0]
    assert rep["counts"] == ["24", "16", "16", "16", "8", "16", "16", "16"]
    bad = write(tmp_path, "bad.txt", "0 1\n")
    assert run(capsys, "simulate", f, "--order", f"explicit:{bad}")[0] == 1


def test_stats_seven_var_within_bound(tmp_path, capsys):
    f = write(tmp_path, "seven.txt", format_polynomial(seven_var_polynomial()))
    code, out, _ = run(capsys, "stats", f, "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["within_bounds"]
    assert all(lv["holds"] for lv in rep["levels"])
    assert all(lv["bound"] == 2 ** (lv["rank"] + 3) for lv in rep["levels"])
    _, human, _ = run(capsys, "stats", f)
    assert "all levels within bound" in human


def test_order_exhaustive_complete_graph(tmp_path, capsys):
    edges = "\n".join(f"{i} {j}" for i, j in itertools.combinations(range(6), 2))
    f = write(tmp_path, "k6.txt", f"graph 6\n{edges}\n")
    save = tmp_path / "perm.txt"
    code, out, _ = run(capsys, "order", f, "--method", "exhaustive", "--json", "--save", save)
    assert code == 0
    assert json.loads(out)["width"] == 1
    assert save.read_text().split() == ["0", "1", "2", "3", "4", "5"]


def test_order_cap(tmp_path, capsys):
    f = write(tmp_path, "p.txt", "graph 14\n0 1\n")
    code, _, err = run(capsys, "order", f, "--method", "exhaustive")
    assert code == 2 and "capped" in err


def test_gen_round_trip(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert run(capsys, "gen", "lrw", "--n", 10, "--k", 3, "--seed", 4, "-o", out)[0] == 0
    assert out.read_text() == serialize_circuit(gen_lrw_family(10, 3, 4))
    code, stdout, _ = run(capsys, "gen", "random", "--n", 4, "--m", 5, "--gateset", "G")
    assert stdout == serialize_circuit(gen_random_circuit("G", 4, 5, 0))
    assert run(capsys, "gen", "lrw", "--n", 3, "--k", 5)[0] == 2


def test_verify_random_t_circuits(tmp_path, capsys):
    for seed in range(100):
        f = write(tmp_path, f"r{seed}.txt", serialize_circuit(gen_random_circuit("T", 8, 30, seed)))
        code, out, _ = run(capsys, "verify", f, "--json")
        rep = json.loads(out)
        assert code == 0, rep
        assert rep["ok"] and rep["delta"] <= 1e-9


def test_verify_mismatch_exit_code(tmp_path, capsys, monkeypatch):
    import feynmandd.cli as cli
    f = write(tmp_path, "h.txt", "gateset T\nqubits 1\nh 0\n")
    monkeypatch.setattr(cli, "statevector_amplitude", lambda *a: 0.0)
    assert run(capsys, "verify", f)[0] == 3


def test_parse_error_exit_code(tmp_path, capsys):
    f = write(tmp_path, "bad.txt", "gateset T\nqubits 2\ncz 0 0\n")
    code, _, err = run(capsys, "simulate", f)
    assert code == 1
    assert err.startswith("error:") and "line 3" in err
    assert run(capsys, "simulate", tmp_path / "missing.txt")[0] == 1


def test_capability_errors(tmp_path, capsys):
    f = write(tmp_path, "ccz.txt", "gateset Z\nqubits 3\nh 0\nh 1\nh 2\nccz 0 1 2\nh 0\nh 1\nh 2\n")
    assert run(capsys, "simulate", f, "--builder", "level")[0] == 2
    code, _, err = run(capsys, "simulate", f, "--order", "greedy")
    assert code == 0 and "natural order" in err
    g = write(tmp_path, "g.txt", "graph 2\n0 1\n")
    assert run(capsys, "simulate", g)[0] == 2


def test_node_cap_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("FEYNMANDD_MAX_NODES", "4")
    f = write(tmp_path, "c.txt", serialize_circuit(gen_lrw_family(12, 3, 0)))
    code, _, err = run(capsys, "simulate", f)
    assert code == 2 and "error" in err


def test_json_deterministic_across_threads(tmp_path, capsys):
    f = write(tmp_path, "c.txt", serialize_circuit(gen_random_circuit("Z", 6, 30, 9)))
    outs = []
    for threads in (1, 8, 1):
        _, out, _ = run(capsys, "--threads", threads, "verify", f, "--json")
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]
