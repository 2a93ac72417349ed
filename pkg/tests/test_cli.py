"""Command-line interface: input validation, reports, exit codes."""

import io
import json

import pytest

from wcilinks.cli import CliError, build_report, emit, load_input, main

MAIN_F1 = ("w*x + y^6 + y^4*t + y^2*t^2 + t^3 + y*z*v + z^4"
           " + z^2*y*(y^2 + t) + x^12")
MAIN_F2 = "w*z + v^2 + y*(y^6 + 2*t^3) + x^14 + x^2*z^4"

MEMBER_DOC = {
    "ambient": {"weights": [1, 2, 3, 4, 7, 11],
                "vars": ["x", "y", "z", "t", "v", "w"]},
    "degrees": [12, 14],
    "member": "explicit",
    "equations": [MAIN_F1, MAIN_F2],
    "field": {"Fp": 2147483647},
    "seed": 0,
}

# the degree-7 model of the member above, in its own coordinates and in
# the coordinates used for the exclusion blowups (z and x swapped in for
# u and z, w for v)
HAT_F = ("u^7 + y^7 + u^6*z + y^6*z + u*y^3*z^3 + u^3*z^4 + u^2*z^5"
         " + y^4*z*t + u*y*z^3*t + y^2*z*t^2 + u*y*z^2*v + 2*y*t^3"
         " + z*t^3 + u*v^2")
COND_F = ("y^7 + z^7 + y^6*x + z^6*x + y*z^3*x^3 + y^3*x^4 + y^2*x^5"
          " + z^4*x*t + y*z*x^3*t + z^2*x*t^2 + y*z*x^2*w + 2*z*t^3"
          " + x*t^3 + y*w^2")

HAT_DOC = {
    "ambient": {"weights": [1, 1, 1, 2, 3],
                "vars": ["u", "y", "z", "t", "v"]},
    "degrees": [7],
    "member": "explicit",
    "equations": [HAT_F],
}

COND_DOC = {
    "ambient": {"weights": [1, 1, 1, 2, 3],
                "vars": ["y", "z", "x", "t", "w"]},
    "degrees": [7],
    "member": "explicit",
    "equations": [COND_F],
}

# a member without the w*x monomial, rejected by the normal form
SPECIAL_DOC = {
    "ambient": {"weights": [1, 2, 3, 4, 7, 11],
                "vars": ["x", "y", "z", "t", "v", "w"]},
    "member": "explicit",
    "equations": ["y^6 + y^4*t + t^3 + y*z*v + z^4 + x^12",
                  "w*z + v^2 + y^7 + x^14"],
}


def _write(tmp_path_factory, name, doc):
    path = tmp_path_factory.mktemp("cli") / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


@pytest.fixture(scope="module")
def member_path(tmp_path_factory):
    return _write(tmp_path_factory, "member.json", MEMBER_DOC)


@pytest.fixture(scope="module")
def hat_path(tmp_path_factory):
    return _write(tmp_path_factory, "hat.json", HAT_DOC)


@pytest.fixture(scope="module")
def cond_path(tmp_path_factory):
    return _write(tmp_path_factory, "cond.json", COND_DOC)


@pytest.fixture(scope="module")
def special_path(tmp_path_factory):
    return _write(tmp_path_factory, "special.json", SPECIAL_DOC)


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(argv, capsys):
    code, out, err = run_cli(argv, capsys)
    assert code == 0, err
    return json.loads(out)


def step(report, name):
    found = [s for s in report["steps"] if s.get("name") == name]
    assert found, f"no step named {name}"
    return found[0]


class TestInputValidation:
    def test_full_document(self):
        spec = load_input(MEMBER_DOC)
        assert spec.wps.weights == (1, 2, 3, 4, 7, 11)
        assert len(spec.equations) == 2
        assert spec.degrees == (12, 14)
        assert spec.field.p == 2147483647
        assert spec.member == "explicit"

    def test_random_member_document(self):
        doc = {"ambient": MEMBER_DOC["ambient"], "member": "random",
               "seed": 5}
        spec = load_input(doc)
        assert spec.equations is not None
        assert spec.degrees == (12, 14)

    def test_rational_field_document(self):
        doc = dict(MEMBER_DOC, field="Q")
        spec = load_input(doc)
        assert not hasattr(spec.field, "p")

    @pytest.mark.parametrize("mangle", [
        lambda d: "not an object",
        lambda d: {k: v for k, v in d.items() if k != "ambient"},
        lambda d: dict(d, ambient={"weights": [1, 2], "vars": ["x", "x"]}),
        lambda d: dict(d, ambient={"weights": [1, -2],
                                   "vars": ["x", "y"]}),
        lambda d: dict(d, field="R"),
        lambda d: dict(d, field={"Fp": 7, "extra": 1}),
        lambda d: dict(d, seed="zero"),
        lambda d: dict(d, degrees=[12]),
        lambda d: dict(d, degrees=[12, 15]),
        lambda d: dict(d, equations=["w*x +"]),
        lambda d: dict(d, member="fancy"),
        lambda d: dict(d, member="random",
                       ambient={"weights": [1, 1], "vars": ["x", "y"]}),
    ])
    def test_rejected_documents(self, mangle):
        with pytest.raises(CliError):
            load_input(mangle(dict(MEMBER_DOC)))


class TestEmit:
    def test_empty_report_shape(self):
        text = emit(build_report("noop", []))
        assert '"steps": []' in text
        assert json.loads(text)["schema"] == 1

    def test_round_trip_lossless(self):
        report = build_report("demo", [{"name": "s", "value": "1/11"}],
                              assumptions=["[A]"])
        assert json.loads(emit(report)) == report

    def test_text_format(self):
        report = build_report("demo", [{"name": "s", "value": 3,
                                        "inner": {"k": [1, 2]}}])
        text = emit(report, "text")
        assert text.startswith("demo: ok")
        assert "== s ==" in text
        assert "value: 3" in text


class TestAnalyze:
    def test_census_contains_eleventh_point(self, member_path, capsys):
        report = run_json(["analyze", member_path], capsys)
        amb = step(report, "ambient")
        assert amb["fano_index"] == 2
        assert amb["amplitude"] == "1/11"
        points = {p["point"]: p for p in step(report, "census")["points"]}
        assert points["w"]["type"] == "1/11(1,2,9)"
        assert points["w"]["terminal"] is True
        assert not points["x"]["on_variety"]

    def test_random_flag(self, capsys):
        report = run_json(["analyze", "--random", "11"], capsys)
        points = {p["point"]: p for p in step(report, "census")["points"]}
        assert points["w"]["type"] == "1/11(1,2,9)"


class TestQsmooth:
    def test_model_verdicts(self, hat_path, capsys):
        report = run_json(["qsmooth", hat_path, "--samples", "10"], capsys)
        assert step(report, "coordinate-points")["non_quasismooth"] == ["z"]
        sampled = step(report, "sampled")
        assert sampled["samples"] == 10
        assert sampled["all_quasismooth"] is True

    def test_stdin_input(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(HAT_DOC)))
        report = run_json(["qsmooth", "-", "--samples", "2"], capsys)
        assert step(report, "sampled")["all_quasismooth"] is True


class TestBlowup:
    def test_smooth_point_weights_4121(self, cond_path, capsys):
        report = run_json(
            ["blowup", cond_path, "--center", "x",
             "--weights", "y=4,z=1,t=2,w=1"], capsys)
        rec = step(report, "blowup")
        assert rec["discrepancy"] == "1"
        assert rec["orders"] == ["6"]
        assert rec["chart_agreement"] is True

    def test_eleventh_point_kawamata(self, member_path, capsys):
        report = run_json(
            ["blowup", member_path, "--center", "w",
             "--weights", "x=6,y=1,z=7,t=2,v=9", "--den", "11"], capsys)
        rec = step(report, "blowup")
        assert rec["discrepancy"] == "1/11"
        assert rec["orders"] == ["6/11", "7/11"]
        assert rec["chart_agreement"] is True


class TestTwoRay:
    def test_exclusion_game_cones(self, cond_path, capsys):
        report = run_json(
            ["two-ray", cond_path, "--center", "x",
             "--weights", "y=4,z=1,t=2,w=1"], capsys)
        assert step(report, "game")["end"]["kind"] == "divisorial"
        cones = step(report, "cones")
        assert cones["movable_cone"] == [[1, 0], [1, 1]]
        assert cones["anticanonical"] == [1, 1]
        assert cones["anticanonical_position"] == "boundary"


class TestLink:
    def test_degree_seven_model(self, member_path, capsys):
        report = run_json(["link", member_path], capsys)
        model = step(report, "model")
        assert model["target"] == "X_7 in P(1,1,1,2,3)"
        assert model["verdict"] == "ElementaryLink"
        assert "u*v^2" in model["equation"]
        assert model["lambda"] == "1"
        assert step(report, "extraction")["discrepancy"] == "1/11"
        assert step(report, "census")["singular_points"] == {
            "w": "1/11(1,2,9)"}


class TestClassify:
    def test_full_classification(self, member_path, capsys):
        report = run_json(["classify", member_path, "--samples", "10"],
                          capsys)
        assert report["assumptions"] == [
            "[DG23 Cor 7.2, 7.11]",
            "[OkSolid Lem 4.5, 4.9]",
            "[OkII Lem 2.9]",
            "[OkSolid Prop 3.16]",
        ]
        summary = step(report, "summary")
        assert summary["solid"] is True
        assert summary["elementary_links_from_model"] == 2
        germ = step(report, "germ-table")
        assert germ["low_discrepancy_count"] == 4
        assert len(germ["divisor_links"]) == 4


class TestVerify:
    def test_seeded_battery_passes(self, capsys):
        code, out, err = run_cli(
            ["verify-paper", "--seed", "7", "--samples", "10"], capsys)
        assert code == 0, err
        report = json.loads(out)
        assert report["result"] == "all checks passed"
        assert report["status"] == "ok"
        assert all(s["passed"] for s in report["steps"])

    def test_text_format_ends_with_verdict(self, capsys):
        code, out, err = run_cli(
            ["verify-paper", "--seed", "7", "--samples", "5",
             "--format", "text"], capsys)
        assert code == 0
        assert out.rstrip().endswith("all checks passed")
        assert "[PASS] census" in out

    def test_special_member_rejected(self, special_path, capsys):
        code, out, err = run_cli(["verify-paper", special_path], capsys)
        assert code == 2
        report = json.loads(out)
        assert report["status"] == "rejected"
        assert report["result"] == "checks failed"


class TestDeterminism:
    def test_classify_byte_identical(self, member_path, capsys):
        first = run_cli(["classify", member_path, "--samples", "5"],
                        capsys)
        second = run_cli(["classify", member_path, "--samples", "5"],
                         capsys)
        assert first == second

    def test_parallel_matches_serial(self, capsys):
        serial = run_cli(
            ["verify-paper", "--seed", "2", "--samples", "20"], capsys)
        fanned = run_cli(
            ["verify-paper", "--seed", "2", "--samples", "20",
             "--parallel", "2"], capsys)
        assert serial == fanned


class TestExitCodes:
    def test_missing_file(self, capsys):
        code, out, err = run_cli(["analyze", "/no/such/file.json"], capsys)
        assert code == 1
        assert "error" in err

    def test_invalid_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        code, _, err = run_cli(["analyze", str(bad)], capsys)
        assert code == 1

    def test_missing_center_flag(self, cond_path, capsys):
        code, _, err = run_cli(["blowup", cond_path], capsys)
        assert code == 1
        assert "--center" in err

    def test_bad_weights_flag(self, cond_path, capsys):
        code, _, err = run_cli(
            ["blowup", cond_path, "--center", "x", "--weights", "y=4"],
            capsys)
        assert code == 1

    def test_certificate_failure(self, special_path, capsys):
        code, _, err = run_cli(["link", special_path], capsys)
        assert code == 2
        assert "member rejected" in err

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 1

    def test_invalid_flag_value(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["analyze", "--format", "yaml"])
        assert info.value.code == 1
