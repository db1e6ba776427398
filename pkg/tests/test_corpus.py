import json

import pytest
from mpmath import mpf

from zetatails.cli import bundled_corpus_text, main
from zetatails.corpus import (
    CorpusSyntaxError,
    parse_corpus,
    parse_record,
    verify_corpus,
    verify_record,
    write_report,
)

SAMPLE = "id q1 : series F2(2,2;1) = 2*z(2,1) + z(3) - z(2)*z(2)"


def test_parse_single_record():
    rec = parse_record(SAMPLE, 1)
    assert rec.identity_id == "q1"
    assert rec.lhs == ((1, "F2", (2, 2, 1)),)
    assert rec.rhs.text() == "-z(2)*z(2) + 2*z(2,1) + z(3)"
    assert rec.text() == SAMPLE


def test_parse_signs_and_fractions():
    rec = parse_record(
        "id a : series -1*LS(-1;3;+) = 7/4*z(3)*ln2 - 5/16*z(4)", 1
    )
    coeff, name, args = rec.lhs[0]
    assert coeff == -1 and name == "LS" and args == (-1, 3, "+")


def test_syntax_errors_carry_position():
    with pytest.raises(CorpusSyntaxError) as e:
        parse_record("id x : series Nope(2) = z(3)", 7)
    assert e.value.line == 7 and e.value.col > 0
    with pytest.raises(CorpusSyntaxError):
        parse_record("id x : series F2(2,2;1) = z(0)", 1)
    with pytest.raises(CorpusSyntaxError):
        parse_record("id x : series F2(2,2;1) 2*z(2,1)", 1)


def test_duplicate_ids_rejected():
    text = SAMPLE + "\n" + SAMPLE
    with pytest.raises(CorpusSyntaxError):
        parse_corpus(text)


def test_comments_and_blanks_skipped():
    text = "# heading\n\n" + SAMPLE + "\n"
    assert len(parse_corpus(text)) == 1


def test_verify_sample_record(ctx):
    out = verify_record(parse_record(SAMPLE, 1), ctx)
    assert out["pass"], out
    assert mpf(out["gap"]) <= mpf(out["err_budget"])
    assert out["source"] == SAMPLE


def test_bundled_corpus_parses():
    records = parse_corpus(bundled_corpus_text())
    assert len(records) == 34
    ids = [r.identity_id for r in records]
    assert len(set(ids)) == 34


def test_parallel_matches_serial(ctx):
    records = parse_corpus(bundled_corpus_text())[:4]
    serial = verify_corpus(records, ctx)
    parallel = verify_corpus(records, ctx, jobs=2)

    def strip(results):
        return [{k: v for k, v in r.items() if k != "ms"} for r in results]

    assert strip(sorted(serial.results, key=lambda r: r["id"])) == strip(
        sorted(parallel.results, key=lambda r: r["id"])
    )


def test_report_deterministic(tmp_path, ctx):
    records = parse_corpus(bundled_corpus_text())[:3]
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    write_report(verify_corpus(records, ctx), str(p1))
    write_report(verify_corpus(records, ctx), str(p2))

    def canonical(path):
        d = json.loads(path.read_text())
        for r in d["results"]:
            r.pop("ms", None)
        return json.dumps(d, sort_keys=True)

    assert canonical(p1) == canonical(p2)


def test_error_row_for_bad_family(ctx):
    rec = parse_record("id bad : series L(1) = z(2)", 1)
    out = verify_record(rec, ctx)
    assert not out["pass"] and "error" in out


def test_cli_verify_exit_codes(tmp_path):
    good = tmp_path / "good.mzv"
    good.write_text(SAMPLE + "\n")
    assert main(["verify", str(good), "--prec", "25", "--tol", "1e-8"]) == 0
    bad = tmp_path / "bad.mzv"
    bad.write_text("id q1 : series F2(2,2;1) = 2*z(2,1) + z(3)\n")
    assert main(["verify", str(bad), "--prec", "25", "--tol", "1e-8"]) == 1


def test_cli_eval_and_tails(capsys):
    assert main(["eval", "z(2,1)", "--prec", "25", "--tol", "1e-8"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("z(2,1) = 1.202056903")
    assert main(["tails", "L", "2", "--prec", "25", "--tol", "1e-8"]) == 0
    assert main(["stuffle", "z(2)", "z(3)"]) == 0
    assert "z(5)" in capsys.readouterr().out
