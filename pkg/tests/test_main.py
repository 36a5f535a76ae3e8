"""Tests for the command-line entry point."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, List

import pytest

from fusionforge.catalog import named_group
from fusionforge.config import CONFIG_ENV
from fusionforge.main import build_parser, main
from fusionforge.permgroup import sylow


# ── Helpers ────────────────────────────────────────────────────────

FOUR_GROUP = "gens:(0 1)(2 3),(0 2)(1 3)"


@pytest.fixture(autouse=True)
def _no_env_config(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(CONFIG_ENV, raising=False)


def _run(capsys: pytest.CaptureFixture, argv: List[str]) -> tuple[int, Any]:
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


# ── Tests ──────────────────────────────────────────────────────────


class TestGroup:
    def test_info(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["group", "info", "--group", "S4"])
        assert code == 0
        assert data["subgroups"] == 30
        assert data["normal_subgroups"] == 4
        assert data["center_order"] == 1
        assert data["abelian"] is False

    def test_sylow(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["group", "sylow", "--group", "S4", "--p", "2"])
        assert code == 0
        assert data["order"] == 8

    def test_sylow_needs_prime(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["group", "sylow", "--group", "S4"]) == 2
        assert "--p" in capsys.readouterr().err

    def test_unknown_group(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["group", "info", "--group", "X9"]) == 2
        assert capsys.readouterr().err.startswith("fusionforge:")

    def test_automorphisms(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["group", "automorphisms", "--group", "Q8"])
        assert code == 0
        assert (data["order"], data["inner_order"]) == (24, 4)

    def test_human_output(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["--human", "group", "info", "--group", "C2"]) == 0
        assert "abelian: true" in capsys.readouterr().out.splitlines()


class TestGoursat:
    def test_decompose_diagonal(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["goursat", "decompose", "--group", "C2 x C2", "--subgroup", "diag"])
        assert code == 0
        assert data["X1"] == data["X2"] == [[0, 1]]

    def test_reconstruct(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["goursat", "reconstruct", "--group", "S3 x C2", "--subgroup", "index:5"])
        assert code == 0
        assert data["round_trip"] is True

    def test_structure_not_surjective(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["goursat", "structure", "--group", "C2 x C2", "--subgroup", "trivial"])
        assert code == 1
        assert data["surjective"] == [False, False]


class TestBouc:
    def test_exhaustive(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["bouc", "verify", "--G", "C2", "--H", "C2", "--K", "C2", "--exhaustive"])
        assert code == 0
        assert data == {"checked": 25, "subgroup_pairs_covered": 25, "failures": []}

    def test_single_pair(self, capsys: pytest.CaptureFixture) -> None:
        argv = ["bouc", "verify", "--G", "C2", "--H", "C2", "--K", "C2", "--X", "diag", "--Y", "full"]
        code, data = _run(capsys, argv)
        assert code == 0
        assert data["check"] == "bouc"
        assert len(data["decomposition"]["terms"]) == 1

    def test_needs_pair(self) -> None:
        assert main(["bouc", "verify", "--G", "C2", "--H", "C2", "--K", "C2"]) == 2


class TestFusion:
    def test_saturate(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["fusion", "saturate", "--group", "S4", "--p", "2"])
        assert code == 0
        assert data == {"saturated": True, "certificate": None}

    def test_closed(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["fusion", "closed", "--group", "S4", "--p", "2", "--subgroup", "center"])
        assert (code, data) == (0, False)
        code, data = _run(capsys, ["fusion", "closed", "--group", "S4", "--p", "2", "--subgroup", FOUR_GROUP, "--weak"])
        assert (code, data) == (0, True)

    def test_homs(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["fusion", "homs", "--group", "S4", "--p", "2", "--subgroup", "center"])
        assert code == 0
        assert len(data) == 3
        assert all(m["witness"] is not None for m in data)

    def test_quotient_summary(self, capsys: pytest.CaptureFixture) -> None:
        argv = ["fusion", "quotient", "--group", "S4", "--p", "2", "--subgroup", FOUR_GROUP, "--flavor", "generated"]
        code, data = _run(capsys, argv)
        assert code == 0
        assert data["flavor"] == "generated"
        assert data["P"]["order"] == 2

    def test_quotient_check(self, capsys: pytest.CaptureFixture) -> None:
        argv = ["fusion", "quotient", "--group", "S4", "--p", "2", "--subgroup", FOUR_GROUP, "--check", "coincidence"]
        code, data = _run(capsys, argv)
        assert code == 0
        assert data["holds"] is True
        assert data["details"]["mod_eq_bar"] is True

    def test_domain_error_is_json(self, capsys: pytest.CaptureFixture) -> None:
        argv = ["fusion", "quotient", "--group", "S4", "--p", "2", "--subgroup", "center", "--flavor", "Fbar_R"]
        code, data = _run(capsys, argv)
        assert code == 2
        assert data["error"] == "NotStronglyClosed"

    def test_alperin(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["fusion", "alperin", "--group", "A4", "--p", "2"])
        assert code == 0
        assert data["mismatches"] == []

    def test_iso_identity(self, capsys: pytest.CaptureFixture) -> None:
        P = sylow(named_group("S4"), 2)
        gens = [[list(g.images), list(g.images)] for g in P.generating_set]
        argv = ["fusion", "iso", "--group", "S4", "--p", "2", "--other", "S4", "--theta", json.dumps({"generators": gens})]
        code, data = _run(capsys, argv)
        assert code == 0
        assert data["holds"] is True

    def test_bad_theta(self, capsys: pytest.CaptureFixture) -> None:
        argv = ["fusion", "iso", "--group", "S4", "--p", "2", "--other", "S4", "--theta", "{not json"]
        assert main(argv) == 2
        assert "invalid JSON" in capsys.readouterr().err

    def test_inner_summary(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["fusion", "inner", "--group", "D8"])
        assert code == 0
        assert data == {"automorphisms": 8, "inner": 4, "agree": True}


class TestExplore:
    def test_writes_reports(self, capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
        out = tmp_path / "reports.json"
        code, data = _run(capsys, ["explore", "--left", "S3:3", "--right", "S3:3", "--json", str(out)])
        assert code == 0
        assert data["summary"]["candidates"] == 3
        assert len(data["theorem_consistent"]) == 3
        reports = json.loads(out.read_text(encoding="utf-8"))
        assert len(reports) == 3
        assert all(r["theorem_consistent"] for r in reports)

    def test_unequal_orders(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["explore", "--left", "S3:3", "--right", "D8:2"])
        assert code == 2
        assert data["error"] == "UnequalOrders"


class TestSuite:
    def test_inner_suite(self, capsys: pytest.CaptureFixture) -> None:
        code, data = _run(capsys, ["suite", "inner", "--max-order", "4"])
        assert code == 0
        assert data == {"suite": "inner", "passed": True, "checked": 9, "failures": []}


class TestConfig:
    def test_invalid_config(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.yaml"
        path.write_text("caps:\n  bogus: 1\n", encoding="utf-8")
        assert main(["-c", str(path), "group", "info", "--group", "C2"]) == 2

    def test_invalid_parallelism(self) -> None:
        assert main(["--parallelism", "0", "suite", "inner"]) == 2

    def test_unknown_command(self) -> None:
        with pytest.raises(SystemExit):
            build_parser().parse_args(["bogus"])
