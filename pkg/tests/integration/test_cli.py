"""End-to-end tests of the command-line interface."""

import json

import pytest

from src.drinfeld_modpoly.cli import main
from src.drinfeld_modpoly.config import settings


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# =============================================================================
# Lattice commands
# =============================================================================


class TestLatticeCommands:
    def test_count(self, capsys):
        code, out, _ = run(capsys, "count", "--q", "2", "--r", "2", "--n", "T")
        assert code == 0
        assert out.splitlines()[0] == "3"

    def test_count_json(self, capsys):
        code, out, _ = run(capsys, "count", "--q", "2", "--n", "T", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["schema"] == 1
        assert data["count"] == 3
        assert data["displayed_count"] == "4"

    def test_json_is_byte_stable(self, capsys):
        _, first, _ = run(capsys, "count", "--q", "3", "--n", "T^2+1", "--format", "json")
        _, second, _ = run(capsys, "count", "--q", "3", "--n", "T^2+1", "--format", "json")
        assert first == second

    def test_enumerate(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--q", "2", "--n", "T")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "3"
        assert len(lines) == 5
        assert "T,0;0,1" in lines

    def test_snf(self, capsys):
        code, out, _ = run(capsys, "snf", "--q", "2", "--matrix", "T,1;0,T")
        assert code == 0
        assert out.strip() == "1, T^2"


# =============================================================================
# Bridge and expansions
# =============================================================================


class TestExpansionCommands:
    def test_bridge(self, capsys):
        code, out, _ = run(capsys, "bridge", "--q", "2", "--k-max", "2")
        assert code == 0
        assert "F_1 = (T^2+T)*X1" in out
        assert "G_2 = Y1^3+Y2" in out
        assert "holds" in out

    def test_bridge_cache_dir(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setattr(settings, "cache_dir", settings.cache_dir)
        monkeypatch.setattr(settings, "use_bridge_cache", settings.use_bridge_cache)
        code, _, _ = run(capsys, "bridge", "--q", "2", "--k-max", "2", "--cache-dir", str(tmp_path))
        assert code == 0
        assert len(list(tmp_path.glob("*.json"))) == 1

    def test_expand_delta(self, capsys):
        code, out, _ = run(
            capsys, "expand", "--q", "2", "--what", "delta", "--precision", "8", "--json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["label"] == "Delta"
        assert data["series"]["terms"][0] == [1, "1"]
        assert data["series"]["prec_num"] == 8

    def test_expand_u_keeps_root(self, capsys):
        code, out, _ = run(
            capsys, "expand", "--q", "3", "--what", "u", "--precision", "4", "--json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["series"]["root_exponent"] == "1/4"
        assert data["series"]["grid_denom"] == 8

    def test_expand_text(self, capsys):
        code, out, _ = run(capsys, "expand", "--q", "2", "--what", "q-scaled", "--precision", "5")
        assert code == 0
        assert out.splitlines()[1].startswith("t^2")


# =============================================================================
# Modular polynomials
# =============================================================================


class TestModpolyCommand:
    def test_modpoly_json(self, capsys):
        code, out, _ = run(capsys, "modpoly", "--q", "2", "--n", "T", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["degree"] == 3
        assert data["monic"] is True
        assert data["integral"] is True
        assert data["coefficients"]["3"] == "1"
        assert data["bound_report"]["all_sharp_ok"] is True

    def test_modpoly_unit_level(self, capsys):
        code, out, _ = run(capsys, "modpoly", "--q", "2", "--n", "1")
        assert code == 0
        assert "X + (j)" in out

    def test_modpoly_needs_rank2(self, capsys):
        code, _, err = run(capsys, "modpoly", "--q", "2", "--r", "3", "--n", "T")
        assert code == 3
        assert "shape_error" in err

    def test_modpoly_reducible_level(self, capsys):
        code, _, err = run(capsys, "modpoly", "--q", "2", "--n", "T^2")
        assert code == 3
        assert "zero_divisor_error" in err

    @pytest.mark.slow
    def test_verify(self, capsys):
        code, out, _ = run(capsys, "verify", "--q", "2", "--r", "2", "--seed", "1")
        assert code == 0
        assert "ALL PASSED" in out


# =============================================================================
# Errors
# =============================================================================


class TestErrors:
    def test_bad_field_size(self, capsys):
        code, out, err = run(capsys, "count", "--q", "6", "--n", "T")
        assert code == 2
        assert out == ""
        assert "config_error" in err

    def test_non_monic_level(self, capsys):
        code, _, err = run(capsys, "count", "--q", "3", "--n", "2*T")
        assert code == 2
        assert "grammar_error" in err

    def test_truncated_exponent(self, capsys):
        code, _, err = run(capsys, "count", "--q", "2", "--r", "2", "--n", "T^(")
        assert code == 2
        assert "grammar_error" in err

    def test_json_error(self, capsys):
        code, _, err = run(capsys, "count", "--q", "3", "--n", "T$", "--json")
        assert code == 2
        data = json.loads(err)
        assert data["error"] == "grammar_error"
        assert data["exit_code"] == 2
        assert data["schema"] == 1

    def test_singular_matrix(self, capsys):
        code, _, err = run(capsys, "snf", "--q", "2", "--matrix", "T,T;T,T")
        assert code == 3
        assert "singular_matrix_error" in err

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
