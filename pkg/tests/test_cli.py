"""Command-line interface: exit codes, JSON payloads, file round-trips.

Every invocation goes through ``main(argv)`` in-process; stdout is captured
with capsys and parsed back, so these double as serialization tests.
"""

from __future__ import annotations

import json

import numpy as np
import pytest

from causalkit.cli import MANIFEST_SEED, build_manifest, main
from causalkit.games import CYRIL_GYNI_VALUE
from causalkit.processes import dump_process, load_process, build_cyril


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv: str) -> tuple[int, dict]:
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


class TestValidate:
    def test_builtin_valid_process(self, capsys):
        code, payload = run_json(capsys, "validate", "--process", "cyril")
        assert code == 0
        assert payload["valid"] is True
        assert payload["psd_ok"] is True
        assert set(payload["residuals"]) == {
            "normalization",
            "uniform blanket",
            "no signaling to B's past",
            "no signaling to A's past",
            "affine closure",
        }
        assert all(v <= 1e-9 for v in payload["residuals"].values())

    def test_builtin_invalid_process(self, capsys):
        code, payload = run_json(capsys, "validate", "--process", "bell-pair-outputs")
        assert code == 1
        assert payload["valid"] is False
        assert payload["residuals"]["affine closure"] > 0.5

    def test_file_argument(self, capsys, tmp_path):
        path = tmp_path / "proc.txt"
        path.write_text(dump_process(build_cyril()), encoding="utf-8")
        code, payload = run_json(capsys, "validate", str(path))
        assert code == 0
        assert payload["valid"] is True

    def test_unknown_builtin(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["validate", "--process", "nonesuch"])
        assert exc.value.code == 2


class TestPpt:
    def test_cyril_is_ppt_on_both_cuts(self, capsys):
        for cut in ("A", "B"):
            code, payload = run_json(capsys, "ppt", "--process", "cyril", "--cut", cut)
            assert code == 0
            assert payload["ppt"] is True
            assert abs(payload["min_eigenvalue"]) <= 1e-9

    def test_shared_bell_is_npt(self, capsys):
        code, payload = run_json(capsys, "ppt", "--process", "shared-bell")
        assert code == 1
        assert payload["ppt"] is False
        assert payload["min_eigenvalue"] == pytest.approx(-0.5, abs=1e-9)


class TestGameCommands:
    def test_gyni_cyril_payload(self, capsys):
        code, payload = run_json(capsys, "gyni", "--process", "cyril")
        assert code == 0
        assert payload["game"] == "gyni"
        assert payload["value"] == pytest.approx(CYRIL_GYNI_VALUE, abs=1e-12)
        assert set(payload["terms"]) == {
            "i1=0,i2=0",
            "i1=0,i2=1",
            "i1=1,i2=0",
            "i1=1,i2=1",
        }

    def test_gyni_relay_value(self, capsys):
        code, payload = run_json(capsys, "gyni", "--process", "relay")
        assert code == 0
        assert payload["value"] == pytest.approx(0.5, abs=1e-12)

    def test_drb_pauli_y(self, capsys):
        code, payload = run_json(capsys, "drb", "--strategy", "pauli-y")
        assert code == 0
        assert payload["game"] == "dr"
        assert payload["value"] == pytest.approx(0.5, abs=1e-12)
        assert all(
            p == pytest.approx(0.5, abs=1e-12) for p in payload["terms"].values()
        )

    def test_drb_cyril_dual(self, capsys):
        code, payload = run_json(capsys, "drb", "--strategy", "cyril-dual")
        assert code == 0
        assert payload["value"] == pytest.approx(CYRIL_GYNI_VALUE, abs=1e-9)


class TestDuality:
    def test_named_strategy_certificate(self, capsys, tmp_path):
        cert_path = tmp_path / "cert.json"
        code, payload = run_json(
            capsys,
            "duality",
            "--direction",
            "gyni2dr",
            "--process",
            "cyril",
            "--emit-certificate",
            str(cert_path),
        )
        assert code == 0
        assert payload["status"] == "pass"
        assert payload["deviation"] <= 1e-9
        on_disk = json.loads(cert_path.read_text(encoding="utf-8"))
        assert on_disk == payload

    def test_seeded_round_trip(self, capsys):
        code, payload = run_json(
            capsys, "duality", "--direction", "dr2gyni", "--seed", "7", "--dim", "3"
        )
        assert code == 0
        assert payload["d"] == 3
        assert payload["deviation"] <= 1e-9

    def test_direction_required(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["duality", "--process", "cyril"])
        assert exc.value.code == 2


class TestClassical:
    def test_tdr_ebw_exact(self, capsys):
        code, payload = run_json(capsys, "classical", "tdr", "--strategy", "ebw", "--exact")
        assert code == 0
        assert payload["numerator"] == 27
        assert payload["denominator"] == 32
        assert payload["exact"] == "27/32"
        assert payload["decimal"] == pytest.approx(27 / 32)
        assert payload["branch_weight"][0]["exact"] == "27/32"
        assert payload["branch_success"] == [
            {"numerator": 1, "denominator": 1, "exact": "1/1", "decimal": 1.0},
            {"numerator": 0, "denominator": 1, "exact": "0/1", "decimal": 0.0},
        ]

    def test_tdr_definite(self, capsys):
        code, payload = run_json(capsys, "classical", "tdr", "--strategy", "definite")
        assert code == 0
        assert payload["exact"] == "3/4"
        assert [p["exact"] for p in payload["per_player"]] == ["3/4", "1/1", "1/1"]

    def test_tdr_none(self, capsys):
        code, payload = run_json(capsys, "classical", "tdr", "--strategy", "none")
        assert code == 0
        assert payload["exact"] == "27/64"

    def test_ftdr_values(self, capsys):
        code, payload = run_json(capsys, "classical", "ftdr", "--strategy", "ebw")
        assert code == 0
        assert payload["exact"] == "27/32"
        assert [p["exact"] for p in payload["round_success"]] == ["27/32", "27/32"]

        code, payload = run_json(capsys, "classical", "ftdr", "--strategy", "definite")
        assert code == 0
        assert payload["exact"] == "21/32"
        assert [p["exact"] for p in payload["round_success"]] == ["3/4", "9/16"]

    def test_strategy_scoped_to_variant(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["classical", "ftdr", "--strategy", "none"])
        assert exc.value.code == 2


class TestDump:
    def test_cyril_round_trip(self, capsys, tmp_path):
        path = tmp_path / "cyril.txt"
        code, out = run(capsys, "dump", "--object", "cyril", "--out", str(path))
        assert code == 0
        proc = load_process(path.read_text(encoding="utf-8"))
        np.testing.assert_allclose(proc.op.matrix, build_cyril().op.matrix, atol=0)

    def test_bell_object(self, capsys):
        code, out = run(capsys, "dump", "--object", "bell:1,1")
        assert code == 0
        assert out.startswith("wires: A:2,B:2")

    def test_readout_unitary_qutrit(self, capsys):
        code, out = run(capsys, "dump", "--object", "readout-unitary:3:2")
        assert code == 0
        assert out.startswith("wires: code:3,fresh:3")

    def test_unknown_object(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["dump", "--object", "spaghetti"])
        assert exc.value.code == 2


class TestManifest:
    def test_manifest_passes(self, capsys):
        code, payload = run_json(capsys, "manifest")
        assert code == 0
        assert payload["status"] == "pass"
        assert payload["failures"] == 0
        assert payload["total"] >= 12
        ids = [r["claim_id"] for r in payload["records"]]
        assert len(ids) == len(set(ids))
        for record in payload["records"]:
            assert set(record) == {
                "claim_id",
                "command",
                "expected",
                "computed",
                "tolerance",
                "status",
            }

    def test_builder_is_deterministic(self):
        a = [r.to_dict() for r in build_manifest()]
        b = [r.to_dict() for r in build_manifest()]
        assert a == b
        assert isinstance(MANIFEST_SEED, int)


class TestToleranceEnv:
    def test_env_override(self, capsys, monkeypatch):
        # An absurdly tight tolerance flips validation of a fine process.
        monkeypatch.setenv("CAUSALKIT_TOL", "1e-18")
        code, payload = run_json(capsys, "validate", "--process", "mixed")
        assert payload["tolerance"] == 1e-18

    def test_env_must_parse(self, capsys, monkeypatch):
        monkeypatch.setenv("CAUSALKIT_TOL", "tight")
        with pytest.raises(SystemExit) as exc:
            main(["validate", "--process", "cyril"])
        assert exc.value.code == 2
