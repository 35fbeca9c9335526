"""The command line surface, driven in process through main()."""

import json

import pytest

from coxshadows.cli import main, staircase_word
from coxshadows import datum_from_tag, element_from_word, length


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_shadow_bruhat_example(capsys):
    code, out, _ = run(capsys, "shadow", "--type", "A2", "--word", "12",
                       "--orient", "+")
    assert code == 0
    obj = json.loads(out)
    assert obj["count"] == 4
    assert obj["elements"] == [[], [1], [2], [1, 2]]


def test_shadow_L_example(capsys):
    code, out, _ = run(capsys, "shadow", "--type", "A2~", "--word", "1",
                       "--orient", "dir:", "--algorithm", "L")
    assert code == 0
    obj = json.loads(out)
    assert obj["elements"] == [[], [1]]


def test_shadow_R_keys_all_directions(capsys):
    code, out, _ = run(capsys, "shadow", "--type", "A2~", "--element", "012",
                       "--algorithm", "R")
    assert code == 0
    obj = json.loads(out)
    assert sorted(obj["directions"]) == ["1", "12", "121", "2", "21", "e"]


def test_shadow_argument_errors(capsys):
    code, _, err = run(capsys, "shadow", "--type", "A2~", "--word", "1",
                       "--element", "1")
    assert code == 2 and "exactly one" in err
    code, _, err = run(capsys, "shadow", "--type", "A2~", "--element", "01",
                       "--algorithm", "R", "--orient", "+")
    assert code == 2 and "no --orient" in err
    code, _, _ = run(capsys, "shadow", "--type", "Q5", "--word", "1")
    assert code == 2
    code, _, err = run(capsys, "shadow", "--type", "A2", "--word", "12",
                       "--algorithm", "L")
    assert code == 2 and "affine" in err


def test_shadow_refuses_unsound_element_calls(capsys, tmp_path):
    from coxshadows import braid_sensitive_orientation
    from coxshadows.orientations import table_to_json

    table = tmp_path / "t.json"
    table.write_text(json.dumps(table_to_json(
        braid_sensitive_orientation(datum_from_tag("A2")))), encoding="utf-8")
    code, _, err = run(capsys, "shadow", "--type", "A2", "--element", "121",
                       "--orient", f"table:{table}")
    assert code == 2 and "--word" in err
    # the same orientation is fine at word level
    code, out, _ = run(capsys, "shadow", "--type", "A2", "--word", "121",
                       "--orient", f"table:{table}")
    assert code == 0 and json.loads(out)["count"] == 5


def test_shadow_partial(capsys):
    code, out, _ = run(capsys, "shadow", "--type", "A2~", "--element", "0120",
                       "--algorithm", "partial", "--orient", "dir:12",
                       "--local-dir", "1")
    assert code == 0
    obj = json.loads(out)
    assert obj["request"]["algorithm"] == "partial"
    assert obj["request"]["chamber"] == "1"


def test_shadow_bounded_naive(capsys):
    code, out, _ = run(capsys, "shadow", "--type", "A2~", "--word", "012",
                       "--orient", "dir:", "--max-folds", "1")
    assert code == 0
    obj = json.loads(out)
    assert obj["request"]["algorithm"] == "naive_bounded"
    assert obj["request"]["max_folds"] == 1


def test_determinism_modulo_timing(capsys):
    args = ("shadow", "--type", "B2~", "--element", "0121", "--algorithm", "R")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)

    def strip(text):
        obj = json.loads(text)
        for sh in obj["directions"].values():
            sh.pop("timing_ms")
        return obj

    assert strip(first) == strip(second)


def test_verify_exit_zero(capsys):
    code, out, err = run(capsys, "verify", "--suite", "bruhat",
                         "--types", "A2,A2~", "--max-length", "3")
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 2
    assert all(line["passed"] for line in lines)
    assert "0 failures" in err


def test_verify_rejects_unknown_suite(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "everything"])


def test_bench_csv_shape(capsys):
    code, out, err = run(capsys, "bench", "--type", "A2~",
                         "--lengths", "2,4", "--algorithms", "L,naive",
                         "--kernels", "numpy", "--repeats", "1")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["algorithm", "kernel", "length", "median_ms",
                       "size", "ops"]
    assert len(rows) == 1 + 4
    assert {r[0] for r in rows[1:]} == {"L", "naive"}
    assert all(r[1] == "numpy" for r in rows[1:])


def test_bench_skips_over_cap(capsys):
    code, out, err = run(capsys, "bench", "--type", "A2~",
                         "--lengths", "23", "--algorithms", "naive",
                         "--kernels", "numpy", "--repeats", "1")
    assert code == 0
    assert len(out.strip().splitlines()) == 1  # header only
    assert "skip" in err


def test_staircase_words_are_reduced():
    d = datum_from_tag("A2~")
    for n in (0, 1, 5, 12, 40):
        w = staircase_word(d, n)
        assert len(w) == n
        assert length(element_from_word(d, w)) == n


def test_staircase_stops_in_finite_groups():
    from coxshadows.errors import CoxshadowsError

    d = datum_from_tag("A2")
    assert len(staircase_word(d, 3)) == 3
    with pytest.raises(CoxshadowsError):
        staircase_word(d, 4)  # nothing above the longest element


def test_render_writes_svg(capsys, tmp_path):
    out_path = tmp_path / "scene.svg"
    code, out, _ = run(capsys, "render", "--type", "A2~", "--element", "0121",
                       "--dir", "12", "--out", str(out_path))
    assert code == 0
    summary = json.loads(out)
    assert summary["regular"] == 6
    assert out_path.exists()
    code, _, _ = run(capsys, "render", "--type", "B3~", "--element", "0",
                     "--out", str(tmp_path / "no.svg"))
    assert code == 2
