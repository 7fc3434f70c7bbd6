import json
import subprocess
import sys

from fermatlines.cli import main


def test_invariants(capsys):
    assert main(["invariants", "7"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["rho"] == 91 and d["lambda"] == 96


def test_find_cover(capsys):
    assert main(["find-cover", "7"]) == 0
    assert json.loads(capsys.readouterr().out) == {"m": 7, "r": 2, "q": 13, "p": 13, "n": 1}


def test_find_line(capsys):
    assert main(["find-line", "--degree", "7", "--seed", "2", "--f", "1,3,1"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["q"] == 13 and len(d["beta"]) == 2


def test_disc(capsys):
    assert main(["disc", "5"]) == 0
    assert capsys.readouterr().out.strip() == "5^12"


def test_gram(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["gram", "--degree", "5", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 37


def test_verify_lemma(capsys):
    assert main(["verify-lemma", "--max-m", "12"]) == 0


def test_certify_exit_codes(tmp_path):
    out = tmp_path / "c.json"
    r = subprocess.run([sys.executable, "-m", "fermatlines.cli", "certify", "--degree", "5",
                        "--json", str(out)], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(out.read_text())["verdict"] == "GENERATED"
    r = subprocess.run([sys.executable, "-m", "fermatlines.cli", "certify", "--degree", "7",
                        "--ell", "5"], capture_output=True, text=True)
    assert r.returncode == 1


def test_certify_disc_mode(capsys):
    assert main(["certify", "--degree", "4", "--mode", "disc"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["discs"]["N_p"]["value"] == "-9"
