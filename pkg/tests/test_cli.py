import json
import subprocess
import sys

import pytest

from framecalc import formats
from framecalc.catalog import chain, pentagon_n5, sierpinski_space
from framecalc.cli import main


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture
def three(tmp_path):
    return write(tmp_path, "three.lat", formats.lattice_text(chain(3)))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_on_three_chain(capsys, three):
    code, out, _ = run(capsys, "info", three)
    assert code == 0
    assert "size: 3" in out and "|J|: 2" in out and "predicted |C L|: 4" in out


def test_validate_reports_each_kind(capsys, tmp_path, three):
    assert run(capsys, "validate", three)[1].startswith("ok lattice")
    spc = write(tmp_path, "s.spc", formats.space_text(sierpinski_space()))
    assert run(capsys, "validate", spc)[1].startswith("ok space")
    cng = write(tmp_path, "c.cng", "lat c 3\ncover 0 1\ncover 1 2\nnucleus 1 1 2\n")
    assert run(capsys, "validate", cng)[1].startswith("ok congruence")


def test_pentagon_is_a_validation_error(capsys, tmp_path):
    p = pentagon_n5()
    path = write(tmp_path, "n5.lat", f"lat N5 {p.size}\n" + "".join(f"cover {a} {b}\n" for a, b in p.covers))
    code, _, err = run(capsys, "validate", path)
    assert code == 3
    assert "NotDistributive" in err and "witness" in err


def test_malformed_file_is_a_parse_error(capsys, tmp_path):
    path = write(tmp_path, "bad.lat", "lat x 3\ncover 0 1\ncover 1 q\n")
    code, _, err = run(capsys, "validate", path)
    assert code == 2
    assert "line 3, column 9" in err


def test_assembly_json(capsys, three):
    code, out, _ = run(capsys, "assembly", three, "--json", "-")
    data = json.loads(out)
    assert code == 0
    assert data["size"] == 4 and data["boolean"] is True and len(data["congruences"]) == 4


def test_tower_on_boolean_square(capsys):
    code, out, _ = run(capsys, "assembly", "named:boolean(2)", "--tower", "3")
    assert code == 0
    assert "tower sizes: 4 4 4" in out and "tower stable at: 0" in out


def test_tower_on_three_chain(capsys, three):
    _, out, _ = run(capsys, "assembly", three, "--tower", "3", "--json", "-")
    assert json.loads(out)["tower"] == {"sizes": [3, 4, 4], "stable_at": 1}


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "assembly", "named:chain(8)", "--budget", "64")
    assert code == 4
    assert "128" in err and "64" in err


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FRAMECALC_BUDGET", "64")
    assert run(capsys, "assembly", "named:chain(8)")[0] == 4


def test_dot_export(capsys, tmp_path, three):
    out_path = tmp_path / "c.dot"
    assert run(capsys, "assembly", three, "--dot", str(out_path))[0] == 0
    text = out_path.read_text()
    assert text.startswith("digraph") and "nabla(1)" in text and "delta(1)" in text


def test_congruence_from_pairs(capsys, three):
    code, out, _ = run(capsys, "congruence", three, "--pairs", "0,1")
    assert code == 0
    assert "blocks: {0,1} {2}" in out


@pytest.mark.parametrize("pairs, code", [("0-1", 2), ("0,9", 3), ("0,1,2", 2)])
def test_bad_pairs(capsys, three, pairs, code):
    assert run(capsys, "congruence", three, "--pairs", pairs)[0] == code


def test_quotient_by_nabla(capsys, three):
    code, out, _ = run(capsys, "quotient", three, "--nabla", "1")
    assert code == 0
    doc = formats.parse_text(out)
    assert doc.size == 2 and doc.covers == [(0, 1)]


def test_spectrum_and_sobrify(capsys, three, tmp_path):
    code, out, _ = run(capsys, "spectrum", three)
    assert code == 0
    spc = write(tmp_path, "sigma.spc", out)
    code, out2, _ = run(capsys, "sobrify", spc)
    assert code == 0 and formats.parse_text(out2).points == 2


def test_skula_of_sierpinski_space(capsys, tmp_path):
    spc = write(tmp_path, "s.spc", formats.space_text(sierpinski_space()))
    code, out, _ = run(capsys, "skula", spc)
    assert code == 0
    doc = formats.parse_text(out)
    assert doc.size == 4 and len(doc.covers) == 4
    assert sorted(doc.part1) != sorted(doc.part2)


def test_skula_rejects_non_T0(capsys, tmp_path):
    spc = write(tmp_path, "i.spc", "spc i 2\nopen\nopen 0 1\n")
    assert run(capsys, "skula", spc)[0] == 3
    assert run(capsys, "skula", spc, "--reflect")[0] == 0


def test_corrupted_fixture_fails_with_inflationary_witness(capsys, tmp_path):
    cng = write(tmp_path, "bad.cng", "lat c 3\ncover 0 1\ncover 1 2\nnucleus 1 0 2\n")
    code, out, _ = run(capsys, "check", "--suite", "nuclei", "--fixture", cng)
    assert code == 5
    assert "FAIL" in out and "inflationary" in out


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_small_check_passes(capsys):
    code, out, err = run(capsys, "check", "--suite", "clear-dense", "--max-size", "5")
    assert code == 0
    assert out.splitlines()[0].startswith("# suite=clear-dense max-size=5 seed=0 corpus=")
    assert "FAIL" not in out and "elapsed" in err


def test_formulas_suite_at_size_eight(capsys):
    code, out, _ = run(capsys, "check", "--suite", "formulas", "--max-size", "8")
    assert code == 0 and "FAIL" not in out


def test_export_corpus(capsys, tmp_path):
    code, out, _ = run(capsys, "export-corpus", str(tmp_path / "corpus"))
    assert code == 0
    manifest = (tmp_path / "corpus" / "MANIFEST").read_text().splitlines()
    assert manifest[0].startswith("# corpus ")
    first = manifest[1].split()[0]
    text = (tmp_path / "corpus" / first).read_text()
    assert formats.lattice_text(formats.frame_from_doc(formats.parse_text(text)), formats.parse_text(text).name) == text


def test_console_entry_point(three):
    proc = subprocess.run([sys.executable, "-m", "framecalc.cli", "info", three], capture_output=True, text=True)
    assert proc.returncode == 0 and "size: 3" in proc.stdout


def test_elements_can_be_named_by_label(capsys):
    code, out, _ = run(capsys, "quotient", "named:chain(3)", "--delta", "a")
    assert code == 0 and formats.parse_text(out).size == 2
