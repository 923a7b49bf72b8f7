from pathlib import Path

import pytest

from ssetforge.cli import main
from ssetforge.corpus import gen_corpus, load_corpus
from ssetforge.posets import FinPoset, MonotoneMap
from ssetforge.simplicial import is_isomorphic, standard_simplex
from ssetforge.subdivision import sd
from ssetforge.textio import format_pmap, format_sset, parse_smap, parse_sset

# triangle with two vertices merged: the zipper stalls, the oracle succeeds
STALL = """\
cell 0 0
cell 1 0
cell 2 1 1{} 0{}
cell 3 1 0{} 0{}
cell 4 1 0{} 1{}
cell 5 2 4{} 3{} 2{}
"""

WEDGE_TO_CHAIN = format_pmap(
    MonotoneMap(
        FinPoset("abc", [("a", "b"), ("a", "c")]),
        FinPoset("uvw", [("u", "v"), ("v", "w")]),
        {"a": "u", "b": "v", "c": "w"},
    )
)


def test_corpus_roundtrip(tmp_path):
    out = tmp_path / "corpus"
    assert main(["corpus", "--seed", "1", "-o", str(out)]) == 0
    assert (out / "manifest.txt").exists()
    loaded = load_corpus(out)
    fresh = gen_corpus(1)
    assert [e.name for e in loaded] == [e.name for e in fresh]
    for a, b in zip(loaded, fresh):
        assert a.space.same_presentation(b.space)
        assert a.regular == b.regular and a.provenance == b.provenance


def test_sd_command(tmp_path):
    src = tmp_path / "d2.sset"
    dst = tmp_path / "sd.sset"
    src.write_text(format_sset(standard_simplex(2)))
    assert main(["sd", str(src), "-o", str(dst)]) == 0
    assert is_isomorphic(parse_sset(dst.read_text()), sd(standard_simplex(2)))


def test_barratt_bnat_lastvertex(tmp_path, capsys):
    src = tmp_path / "d2.sset"
    src.write_text(format_sset(standard_simplex(2)))
    assert main(["barratt", str(src)]) == 0
    bx = parse_sset(capsys.readouterr().out)
    assert len(bx.cells) == 25
    assert main(["bnat", str(src)]) == 0
    b = parse_smap(capsys.readouterr().out)
    assert b.is_isomorphism()  # the standard simplex is non-singular
    assert main(["lastvertex", str(src)]) == 0
    lv = parse_smap(capsys.readouterr().out)
    assert lv.target.same_presentation(standard_simplex(2))


def test_desing_exit_codes(tmp_path, capsys, monkeypatch):
    src = tmp_path / "stall.sset"
    src.write_text(STALL)
    out = tmp_path / "out.sset"
    eta = tmp_path / "eta.smap"

    assert main(["desing", str(src), "--method", "zipper"]) == 2
    assert "Uncertified" in capsys.readouterr().out

    code = main(["desing", str(src), "-o", str(out), "--emit-eta", str(eta)])
    assert code == 0
    assert "OracleExact" in capsys.readouterr().out
    proj = parse_smap(eta.read_text())
    assert proj.target.same_presentation(parse_sset(out.read_text()))
    assert proj.target.is_nonsingular()

    monkeypatch.setenv("FORGE_ORACLE_BOUND", "4")
    assert main(["desing", str(src)]) == 2

    assert main(["desing", str(src), "--method", "oracle", "--bound", "4"]) == 1


def test_dcr_table(tmp_path, capsys):
    src = tmp_path / "phi.pmap"
    src.write_text(WEDGE_TO_CHAIN)
    assert main(["dcr", str(src)]) == 0
    out = capsys.readouterr().out
    assert "certificate ZipperCertified" in out
    assert "verdict not-an-isomorphism" in out
    rows = [l.split() for l in out.splitlines() if l.strip()[:1].isdigit()]
    assert rows[0] == ["0", "yes", "yes"]
    assert rows[3][:2] == ["3", "yes"] and rows[3][2] == "no"


def test_cylinder_outputs(tmp_path, capsys):
    src = tmp_path / "phi.pmap"
    src.write_text(WEDGE_TO_CHAIN)
    assert main(["cylinder", str(src)]) == 0
    reduced = parse_sset(capsys.readouterr().out)
    assert reduced.dim == 3
    assert main(["cylinder", str(src), "--topological"]) == 0
    top = parse_sset(capsys.readouterr().out)
    assert top.dim == 2
    assert main(["cylinder", str(src), "--bundle"]) == 0
    cr = parse_smap(capsys.readouterr().out)
    assert cr.source.same_presentation(top)
    assert cr.target.same_presentation(reduced)


def test_verify_cli_tiny_corpus(tmp_path):
    from ssetforge.corpus import save_corpus
    from tests.test_verify import tiny_corpus

    cdir = tmp_path / "corpus"
    save_corpus(tiny_corpus(), cdir)

    report = tmp_path / "main.txt"
    assert main(["verify", "main", "--corpus", str(cdir), "--report", str(report)]) == 0
    text = report.read_text()
    assert "main/delta-2: pass" in text
    assert "corollary/circle: pass" in text

    # the tiny corpus cannot reach 100 cylinder pairs, so the count case fails
    report2 = tmp_path / "cyl.txt"
    code = main(["verify", "cylinders", "--corpus", str(cdir), "--report", str(report2)])
    assert code == 1
    assert "dcr/pair-count: fail" in report2.read_text()


def test_counterexamples_cli(capsys):
    assert main(["counterexamples"]) == 0
    out = capsys.readouterr().out
    assert "summary: 4 pass, 0 fail, 0 skip" in out
