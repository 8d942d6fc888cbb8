import json

import pytest

from reebsynth.cli import main
from helpers import K2_1, THETA


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text.replace("; ", "\n").replace(" ; ", "\n"))
    return str(p)


def test_roundtrip_theta(tmp_path, capsys):
    path = write(tmp_path, "theta.rgl", THETA)
    assert main(["roundtrip", path]) == 0
    assert "euler_characteristic: 0" in capsys.readouterr().out


def test_validate_general_failure(tmp_path, capsys):
    path = write(tmp_path, "g.rgl", "mode general 2\nv 1 0\nv 2 1\ne 1 1 2 3\n")
    assert main(["validate", path]) == 1
    assert "degree-1" in capsys.readouterr().out


def test_input_errors_exit_two(tmp_path):
    assert main(["validate", str(tmp_path / "missing.rgl")]) == 2
    bad = write(tmp_path, "bad.rgl", "v 1 0\nv 2 0\ne 1 1 2 0\n")
    assert main(["plan", bad]) == 2
    assert main(["no-such-command"]) == 2


def test_synthesize_reeb_verify(tmp_path, capsys):
    g = write(tmp_path, "k2.rgl", K2_1)
    mesh = str(tmp_path / "k2.rmesh")
    off = str(tmp_path / "k2.off")
    assert main(["synthesize", g, "-o", mesh, "--off", off]) == 0
    assert (tmp_path / "k2.off").read_text().startswith("OFF")
    out = str(tmp_path / "k2.reeb.rgl")
    assert main(["reeb", mesh, "-o", out, "--dot", str(tmp_path / "r.dot")]) == 0
    assert "# essential" in (tmp_path / "k2.reeb.rgl").read_text()
    capsys.readouterr()
    assert main(["verify", g, mesh, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "pass"


def test_reeb_on_non_manifold_mesh(tmp_path, capsys):
    bad = write(tmp_path, "bad.rmesh",
                "mv 0 0\nmv 1 1\nmv 2 2\nmv 3 1\nmv 4 3\nmt 0 1 2\nmt 0 2 3\nmt 0 2 4\n")
    assert main(["reeb", bad]) == 1
    assert "cross-section" in capsys.readouterr().err


def test_gen_random_is_deterministic(tmp_path):
    a, b = tmp_path / "a.rgl", tmp_path / "b.rgl"
    main(["gen-random", "--budget", "5", "--seed", "1", "-o", str(a)])
    main(["gen-random", "--budget", "5", "--seed", "1", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_plan_general_json(tmp_path, capsys):
    path = write(tmp_path, "g.rgl", "mode general 3\nv 1 0\nv 2 1\ne 1 1 2 2\n")
    assert main(["plan", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dimension"] == 3


def test_batch_roundtrip(capsys):
    assert main(["roundtrip", "--batch", "5", "--seed", "40"]) == 0
    assert "5/5 passed" in capsys.readouterr().out


@pytest.mark.parametrize("seed", ["-1", str(2 ** 64)])
def test_seed_range(seed):
    assert main(["gen-random", "--seed", seed]) == 2
