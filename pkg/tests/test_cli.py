"""CLI: exit codes, config validation, output schemas, determinism."""

import json


from collarlab import __version__
from collarlab.cli import main


def run(args):
    return main([str(a) for a in args])


class TestExitCodes:
    def test_pass_is_zero(self, tmp_path):
        assert run(["torus-sweep", "--out", tmp_path, "--seed", 3]) == 0

    def test_numerical_failure_is_one(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"version": "v1", "tolerances": {"ratio": 1e-18}}))
        assert run(["torus-sweep", "--config", cfg, "--out", tmp_path / "o"]) == 1

    def test_unknown_key_is_two(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"version": "v1", "geometry": {"b_gird": [10.0]}}))
        assert run(["torus-sweep", "--config", cfg, "--out", tmp_path / "o"]) == 2

    def test_bad_version_is_two(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"version": "v9"}))
        assert run(["geom", "--config", cfg, "--out", tmp_path / "o"]) == 2

    def test_wrong_command_config_is_two(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"version": "v1", "command": "geom"}))
        assert run(["torus-sweep", "--config", cfg, "--out", tmp_path / "o"]) == 2

    def test_unreadable_config_is_two(self, tmp_path):
        assert run(["geom", "--config", tmp_path / "missing.json", "--out", tmp_path]) == 2


class TestOutputs:
    def test_summary_metadata(self, tmp_path):
        assert run(["geom", "--out", tmp_path, "--seed", 17]) == 0
        doc = json.loads((tmp_path / "geom.json").read_text())
        assert doc["tool"] == "collarlab"
        assert doc["version"] == __version__
        assert doc["seed"] == 17
        assert doc["check"] == "collar-identities"
        assert len(doc["config_hash"]) == 64
        assert doc["pass"] is True

    def test_torus_csv_schema(self, tmp_path):
        run(["torus-sweep", "--out", tmp_path, "--seed", 1])
        lines = (tmp_path / "torus_sweep.csv").read_text().splitlines()
        meta = [l for l in lines if l.startswith("# ")]
        assert any(l.startswith("# tool: collarlab") for l in meta)
        assert any(l.startswith("# config_hash: ") for l in meta)
        assert any(l.startswith("# seed: ") for l in meta)
        header = next(l for l in lines if not l.startswith("#"))
        assert header == "a,b,mode_description,l1_residual,dbar_l1,ratio"

    def test_torus_ratio_values(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"version": "v1", "geometry": {"b_grid": [10.0, 100.0]}}))
        run(["torus-sweep", "--config", cfg, "--out", tmp_path, "--seed", 1])
        doc = json.loads((tmp_path / "torus_sweep.json").read_text())
        assert abs(doc["results"]["ratios"]["10.0"] - 2.2508) < 1e-3
        assert abs(doc["results"]["ratios"]["100.0"] - 22.508) < 1e-2

    def test_geom_at_regime_boundary(self, tmp_path):
        import math

        ell = 2 * math.asinh(1.0)
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"version": "v1", "geometry": {
            "ell_min": ell, "ell_max": ell, "ell_points": 1}}))
        assert run(["geom", "--config", cfg, "--out", tmp_path, "--seed", 1]) == 0
        lines = [l for l in (tmp_path / "geom.csv").read_text().splitlines()
                 if not l.startswith("#")]
        row = dict(zip(lines[0].split(","), lines[1].split(",")))
        assert abs(float(row["half_width"]) - 2.7995) < 1e-4

    def test_witness_field_schema(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "version": "v1",
            "discretization": {"n_modes": 3, "n_nodes": 32, "max_iters": 200, "restarts": 1},
        }))
        assert run(["maximize", "--config", cfg, "--out", tmp_path, "--seed", 5]) == 0
        wit = json.loads((tmp_path / "maximize_witness.json").read_text())
        assert set(wit) == {"ell", "modes", "s_nodes", "s_weights", "coeffs_re",
                            "coeffs_im", "log_domain_flags"}
        from collarlab.fields import field_from_dict

        back = field_from_dict(wit)
        assert back.collar.ell == 0.3

    def test_svg_only_with_flag(self, tmp_path):
        run(["torus-sweep", "--out", tmp_path / "plain", "--seed", 1])
        assert not list((tmp_path / "plain").glob("*.svg"))
        run(["torus-sweep", "--out", tmp_path / "figs", "--seed", 1, "--svg"])
        assert (tmp_path / "figs" / "torus_sweep.svg").exists()

    def test_config_override_applies(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"version": "v1", "geometry": {"b_grid": [10.0, 100.0]}}))
        run(["torus-sweep", "--config", cfg, "--out", tmp_path, "--seed", 1])
        lines = [l for l in (tmp_path / "torus_sweep.csv").read_text().splitlines()
                 if not l.startswith("#")]
        assert len(lines) == 3  # header + 2 rows


class TestDeterminism:
    def test_threads_do_not_change_results(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"version": "v1", "sweep": {"trials": 8}}))
        run(["collar-alpha", "--config", cfg, "--out", tmp_path / "t1", "--seed", 3])
        run(["collar-alpha", "--config", cfg, "--out", tmp_path / "t2", "--seed", 3,
             "--threads", 4])
        a = (tmp_path / "t1" / "collar_alpha.csv").read_bytes()
        b = (tmp_path / "t2" / "collar_alpha.csv").read_bytes()
        assert a == b

    def test_seed_changes_results(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"version": "v1", "sweep": {"trials": 6}}))
        run(["collar-alpha", "--config", cfg, "--out", tmp_path / "s1", "--seed", 3])
        run(["collar-alpha", "--config", cfg, "--out", tmp_path / "s2", "--seed", 4])
        a = (tmp_path / "s1" / "collar_alpha.csv").read_bytes()
        b = (tmp_path / "s2" / "collar_alpha.csv").read_bytes()
        assert a != b
