# test_cli.py
import io
import json

import pytest

import main
from catalog import PSI11_SDL
from data_utils import (
    detect_format,
    format_oa,
    format_plain_state,
    parse_oa,
    parse_plain_state,
    parse_signs,
)
from errors import FileFormatError
from orthogonal_array import OrthogonalArray


def run(capsys, *argv):
    code = main.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def psi11_file(tmp_path):
    path = tmp_path / "psi11.sdl"
    path.write_text(PSI11_SDL)
    return str(path)


def test_verify_eleven_qubit_state(capsys, psi11_file):
    code, out, _ = run(capsys, "verify", psi11_file, "--k", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["mode"] == "exact"
    assert len(data["verdicts"]) == 165
    assert all(v["pass"] and v["purity"] == {"num": 1, "den": 8} for v in data["verdicts"])


def test_verify_product_state(capsys, tmp_path):
    path = tmp_path / "product.state"
    path.write_text("nqubits 2\n00 1 0\n")
    code, out, _ = run(capsys, "verify", str(path), "--k", "1")
    assert code == 2
    assert "1-uniform: no" in out


def test_verify_broken_sdl(capsys, tmp_path):
    path = tmp_path / "broken.sdl"
    path.write_text("state 2\nnorm 1/sqrt(2)\nterm: block(1,2){00 + 11\n")
    code, out, err = run(capsys, "verify", str(path), "--k", "1")
    assert code == 1
    assert out == ""
    assert "line 3" in err


def test_verify_threads_give_identical_json(capsys, psi11_file):
    _, one, _ = run(capsys, "verify", psi11_file, "--k", "3", "--json", "--threads", "1")
    _, many, _ = run(capsys, "verify", psi11_file, "--k", "3", "--json", "--threads", "8")
    assert one == many


def test_verify_float_mode(capsys, psi11_file):
    code, out, _ = run(capsys, "verify", psi11_file, "--k", "2", "--json", "--float", "--all-sizes")
    assert code == 0
    data = json.loads(out)
    assert data["mode"] == "float"
    assert len(data["verdicts"]) == 11 + 55


def test_bad_tolerance_is_an_error(capsys, psi11_file):
    code, _, err = run(capsys, "verify", psi11_file, "--k", "1", "--float", "--tolerance", "0")
    assert code == 1
    assert "tolerance" in err


def test_oa_pipeline(capsys, psi11_file, tmp_path, monkeypatch):
    code, oa_text, _ = run(capsys, "state", "to-oa", psi11_file)
    assert code == 0
    assert oa_text.splitlines()[0].startswith("oa 32 11 2 ")
    oa_path = tmp_path / "psi11_support.oa"
    oa_path.write_text(oa_text)

    code, out, _ = run(capsys, "oa", "check", str(oa_path), "--strength", "3", "--irredundant", "3")
    assert code == 0
    assert "irredundant at k=3: yes" in out

    code, state_text, _ = run(capsys, "oa", "to-state", str(oa_path))
    assert code == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(state_text))
    code, _, _ = run(capsys, "verify", "-", "--k", "3")
    assert code == 0


def test_oa_check_constant_column(capsys, tmp_path):
    path = tmp_path / "constant_column.oa"
    path.write_text("000\n011\n")
    code, out, _ = run(capsys, "oa", "check", str(path), "--strength", "1", "--json")
    assert code == 2
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["strength"] == 0
    assert data["witness"]["columns"] == [1]
    assert data["witness"]["pattern"] == "1"


def test_oa_to_state_with_signs(capsys, tmp_path):
    oa_path = tmp_path / "plus.oa"
    oa_path.write_text("0\n1\n")
    signs_path = tmp_path / "minus.signs"
    signs_path.write_text("+-\n")
    code, out, _ = run(capsys, "oa", "to-state", str(oa_path), "--signs", str(signs_path))
    assert code == 0
    psi = parse_plain_state(out)
    assert psi.numerators == {0: 1, 1: -1}


def test_search(capsys, tmp_path):
    bell = tmp_path / "bell_support.oa"
    bell.write_text("00\n11\n")
    signs = tmp_path / "best.signs"
    code, out, _ = run(capsys, "search", str(bell), "--k", "1", "--json", "--output", str(signs))
    assert code == 0
    assert json.loads(out)["signs"] == "++"
    assert signs.read_text() == "++\n"

    const = tmp_path / "const_col.oa"
    const.write_text("00\n01\n")
    code, out, _ = run(capsys, "search", str(const), "--k", "1")
    assert code == 2
    assert "found: no" in out


def test_invariants(capsys, tmp_path):
    path = tmp_path / "bell.sdl"
    path.write_text("state 2\nnorm 1/sqrt(2)\nterm: block(1,2){00 + 11}\n")
    code, out, _ = run(capsys, "invariants", str(path), "--max-size", "2", "--json")
    assert code == 0
    values = {tuple(e["subset"]): e["exact"] for e in json.loads(out)["invariants"]}
    assert values[(1, 2)] == {"num": 3, "den": 1}
    assert values[(1,)] == {"num": 0, "den": 1}


def test_catalog_verbs(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert "psiM8" in out

    code, out, _ = run(capsys, "catalog", "emit", "psi13")
    assert code == 0
    assert out.startswith("state 13\nnorm 1/sqrt(32)\n")

    code, out, err = run(capsys, "catalog", "emit", "nope")
    assert code == 1
    assert "nope" in err


def test_catalog_verify_all(capsys):
    code, out, _ = run(capsys, "catalog", "verify-all", "--json")
    assert code == 2
    data = json.loads(out)
    assert data["schema_version"] == 1
    reports = {e["id"]: e["report"] for e in data["entries"]}
    assert reports["psi11"]["is_k_uniform"]
    assert len(reports["psi15"]["verdicts"]) == 455
    _, again, _ = run(capsys, "catalog", "verify-all", "--json", "--threads", "8")
    assert again == out


def test_detect_format():
    assert detect_format("# header\nstate 2\n") == "sdl"
    assert detect_format("nqubits 2\n00 1\n") == "plain"
    assert detect_format("", "x.sdl") == "sdl"
    with pytest.raises(FileFormatError):
        detect_format("hello\n")


def test_plain_state_round_trip():
    text = "nqubits 2\n00 0.7071067811865476\n11 0.7071067811865476 0\n"
    psi = parse_plain_state(text)
    assert psi.exact_mode
    assert parse_plain_state(format_plain_state(psi)).amplitudes == psi.amplitudes


def test_plain_state_errors_carry_lines():
    with pytest.raises(FileFormatError) as info:
        parse_plain_state("nqubits 2\n00 1\n0x 0\n")
    assert info.value.line == 3
    with pytest.raises(FileFormatError) as info:
        parse_plain_state("nqubits 2\n00 0.5\n00 0.5\n")
    assert info.value.line == 3
    with pytest.raises(FileFormatError):
        parse_plain_state("qubits 2\n")
    assert parse_plain_state("nqubits 1\n0 3\n1 4\n", normalize=True).norm_squared() == pytest.approx(1.0)


def test_oa_file_format():
    a = parse_oa("oa 4 3 2 2\n0 0 0\n0 1 1\n101\n110\n")
    assert a == OrthogonalArray(3, (0b000, 0b011, 0b101, 0b110))
    assert format_oa(a) == "oa 4 3 2 2\n000\n011\n101\n110\n"
    with pytest.raises(FileFormatError) as info:
        parse_oa("oa 5 3 2 2\n000\n011\n")
    assert info.value.line == 1
    with pytest.raises(FileFormatError) as info:
        parse_oa("000\n01\n")
    assert info.value.line == 2
    with pytest.raises(FileFormatError):
        parse_oa("000\n000\n")


def test_sign_file_format():
    assert parse_signs("+-+\n").signs == (1, -1, 1)
    with pytest.raises(FileFormatError):
        parse_signs("+-\n-+\n")
    with pytest.raises(FileFormatError):
        parse_signs("+x\n")


def test_usage_errors_exit_with_error_code(capsys, psi11_file):
    code, out, err = run(capsys, "verify", psi11_file)
    assert code == 1
    assert out == ""
    assert "--k" in err

    code, _, err = run(capsys, "catalog", "verify-all", "--threads", "x")
    assert code == 1
    assert "invalid int value" in err

    code, _, _ = run(capsys, "frobnicate")
    assert code == 1


def test_help_exits_cleanly(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "verify" in out


def test_catalog_verify_all_text(capsys):
    code, out, _ = run(capsys, "catalog", "verify-all")
    assert code == 2
    assert "size 1: 8 subsets" in out
    assert "psiM8 purity table:" in out
