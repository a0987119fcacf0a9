import subprocess
import sys

import pytest

from dvpower.cli import EXIT_FAIL, EXIT_PARSE, EXIT_PASS, EXIT_SCALE, evaluate, run
from dvpower.domain import INTEGERS
from dvpower.intervals import INTERVAL
from dvpower.specker import SpeckerAlgebra


@pytest.fixture
def files(tmp_path):
    (tmp_path / "ba2.txt").write_text("atoms: 2\n")
    (tmp_path / "ba3.txt").write_text("atoms: 3\n")
    (tmp_path / "bad.txt").write_text("atoms: 2\nprox: explicit\n10 < 11\n")
    (tmp_path / "proj.txt").write_text("source: atoms:2\ntarget: atoms:1\nmap:\n00 -> 0\n10 -> 1\n01 -> 0\n11 -> 1\n")
    (tmp_path / "half.txt").write_text("source: interval\ntarget: interval\npl: 0:0, 1:1/2\n")
    (tmp_path / "const.txt").write_text("source: interval\ntarget: interval\npl: 0:1/2, 1:1/2\n")
    (tmp_path / "broken.txt").write_text("source: atoms:2\ntarget: atoms:1\nmap:\n00 -> 0\n")
    return tmp_path


def value(lines, key):
    return next(line.split("=", 1)[1] for line in lines if line.startswith(key + "="))


def test_dv_axioms_interval():
    code, lines = run(["check", "dv-axioms", "--carrier", "interval", "--seed", "7", "-n", "500"])
    assert code == EXIT_PASS
    assert value(lines, "DV6.samples") == "500"
    assert lines[-1] == "result=pass"


def test_mutations_fail_with_counterexamples():
    code, lines = run(["check", "dv-axioms", "--mutation", "witness-free", "-n", "100"])
    assert code == EXIT_FAIL
    assert value(lines, "DV6") == "fail" and value(lines, "DV6.counterexample")
    code, lines = run(["check", "dv-axioms", "--mutation", "reflexive", "-n", "1000"])
    assert code == EXIT_FAIL and value(lines, "DV3") == "fail"


def test_prox_axioms_on_finite_file(files):
    code, lines = run(["check", "prox-axioms", "--carrier", f"finite:{files / 'ba2.txt'}", "-n", "50"])
    assert code == EXIT_PASS
    assert "note=proximity equals ≤" in lines


def test_finite_dv_check_is_exhaustive_and_reports_failures(files):
    code, lines = run(["check", "dv-axioms", "--carrier", f"finite:{files / 'bad.txt'}"])
    assert code == EXIT_FAIL
    code, lines = run(["check", "dv-axioms", "--carrier", "atoms:3"])
    assert code == EXIT_PASS and value(lines, "DV3.note") == "exhaustive"


def test_fring_check():
    code, lines = run(["check", "fring", "--carrier", "atoms:2", "-n", "50"])
    assert code == EXIT_PASS


def test_morphism_checks(files):
    code, lines = run(["check", "morphism", str(files / "proj.txt"), "-n", "50"])
    assert code == EXIT_PASS
    code, _ = run(["check", "morphism", str(files / "half.txt"), "-n", "50"])
    assert code == EXIT_PASS
    # termwise pushforward is only wrong when the idempotent map is not a Boolean homomorphism
    code, _ = run(["check", "morphism", str(files / "const.txt"), "-n", "50"])
    assert code == EXIT_PASS
    code, lines = run(["check", "morphism", str(files / "const.txt"), "-n", "50", "--fault", "termwise"])
    assert code == EXIT_FAIL and value(lines, "D2") == "fail"


def test_ends(files):
    code, lines = run(["ends", "--carrier", f"finite:{files / 'ba3.txt'}"])
    assert code == EXIT_PASS
    assert value(lines, "ends.count") == "3"
    assert sorted(value(lines, f"end.{i}.generator") for i in range(3)) == ["011", "101", "110"]
    assert value(lines, "five_way.agree") == "true"


def test_dual(files):
    code, lines = run(["dual", str(files / "proj.txt")])
    assert code == EXIT_PASS
    assert value(lines, "dual.points") == "1"
    assert value(lines, "dual.0.image") == "01"
    code, lines = run(["dual", str(files / "half.txt")])
    assert code == EXIT_PASS and value(lines, "dual.pl") == "0:0, 1:1/2"


def test_eval():
    code, lines = run(
        ["eval", "x + y", "--bind", "x=1 on [0,1/2) ; 0 on (1/2,1]", "y=1 on (1/4,1] ; 0 on [0,1/4)"]
    )
    assert code == EXIT_PASS
    assert lines[-1] == "1 on [0,1/4) u (1/2,1] ; 2 on (1/4,1/2)"
    code, lines = run(["eval", "abs(1 - 2*x)", "--bind", "x=1 on (1/4,1/2) ; 0 on [0,1/4) u (1/2,1]"])
    assert lines[-1] == "1 on [0,1]"
    code, lines = run(["eval", "prox(x, x)", "--bind", "x=1 on (1/4,1/2) ; 0 on [0,1/4) u (1/2,1]"])
    assert lines[-1] == "false"
    code, lines = run(["eval", "1/2 * x", "--domain", "rational", "--bind", "x=2"])
    assert lines[-1] == "1 on [0,1]"


def test_evaluate_rejects_unsupported_syntax():
    S = SpeckerAlgebra(INTERVAL, INTEGERS)
    for expr in ("x ** 2", "y", "foo(x)", "x / 2"):
        with pytest.raises(ValueError):
            evaluate(expr, S, {"x": S.one})


def test_normalize():
    code, lines = run(["normalize", "1 on (1/4,1/2]; 0 elsewhere"])
    assert code == EXIT_PASS
    assert lines[-1] == "1 on (1/4,1/2); 0 elsewhere"


def test_exit_codes(files):
    bad = files / "bad_interval.txt"
    bad.write_text("atoms: x\n")
    assert run(["check", "dv-axioms", "--carrier", f"finite:{bad}"])[0] == EXIT_PARSE
    assert run(["check", "dv-axioms", "--carrier", f"finite:{files / 'missing.txt'}"])[0] == EXIT_PARSE
    assert run(["normalize", "1 on (1/4,1/2"])[0] == EXIT_PARSE
    assert run(["eval", "x", "--bind", "x=1 on [0,1/2)"])[0] == EXIT_PARSE
    assert run(["check", "morphism", str(files / "broken.txt")])[0] == EXIT_PARSE
    assert run(["check", "dv-axioms", "-n", "0"])[0] == EXIT_PARSE
    assert run(["ends", "--carrier", "atoms:7"])[0] == EXIT_SCALE
    assert run(["ends", "--carrier", "interval"])[0] in (EXIT_PARSE, EXIT_SCALE)


def test_same_seed_same_output():
    argv = ["check", "prox-axioms", "--seed", "3", "-n", "60", "--domain", "rational"]
    assert run(argv) == run(argv)
    assert run(argv)[1] != run(argv[:2] + ["--seed", "4", "-n", "60", "--domain", "rational"])[1]


def test_module_entry_point_streams():
    ok = subprocess.run([sys.executable, "-m", "dvpower.cli", "normalize", "2 on [0,1]"], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stdout.strip().endswith("2 on [0,1]")
    bad = subprocess.run([sys.executable, "-m", "dvpower.cli", "ends", "--carrier", "atoms:9"], capture_output=True, text=True)
    assert bad.returncode == EXIT_SCALE and "error=scale" in bad.stderr and not bad.stdout
