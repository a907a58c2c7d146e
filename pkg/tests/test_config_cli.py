import json

import numpy as np
import pytest

from aximhd.cli import cmd_apcheck, cmd_simulate, cmd_verify, main
from aximhd.config import load_config, parse_config, resolved_dict
from aximhd.errors import ConfigError
from aximhd.grid import read_field

BASE = {
    "grid": {"n_r": 16, "n_z": 16, "r_max": 3.0, "z_len": 6.0},
    "physics": {"mode": "ideal"},
    "time": {"t_end": 0.01},
    "initial": {"name": "zero"},
}

RING_INITIAL = {
    "name": "gaussian-ring",
    "params": {"amplitude": 1.0, "r0": 1.0, "z0": 3.0, "sigma": 0.25},
}


def write_cfg(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def deep(doc, **updates):
    out = json.loads(json.dumps(doc))
    for key, val in updates.items():
        out[key] = val
    return out


class TestSchema:
    def test_minimal_config_with_defaults(self):
        cfg, output = parse_config(BASE)
        assert cfg.cfl_adv == 0.4 and cfg.cfl_diff == 0.2
        assert cfg.pi_scheme == "upwind1" and cfg.output_every == 1
        assert output.dir == "." and output.snapshots is False

    def test_unknown_top_level_key(self):
        with pytest.raises(ConfigError, match="phsyics"):
            parse_config(deep(BASE, phsyics={"mode": "ideal"}))

    def test_unknown_nested_key(self):
        bad = deep(BASE, time={"t_end": 1.0, "dt_mni": 0.1})
        with pytest.raises(ConfigError, match="dt_mni"):
            parse_config(bad)

    def test_bad_enum_named_in_error(self):
        bad = deep(BASE, physics={"mode": "idael"})
        with pytest.raises(ConfigError, match="idael"):
            parse_config(bad)

    def test_missing_required_section(self):
        bad = {k: v for k, v in BASE.items() if k != "time"}
        with pytest.raises(ConfigError, match="time"):
            parse_config(bad)

    def test_type_errors(self):
        with pytest.raises(ConfigError, match="n_r"):
            parse_config(deep(BASE, grid={"n_r": 16.5, "n_z": 16, "r_max": 3.0, "z_len": 6.0}))
        with pytest.raises(ConfigError, match="t_end"):
            parse_config(deep(BASE, time={"t_end": True}))
        with pytest.raises(ConfigError, match="snapshots"):
            parse_config(deep(BASE, output={"snapshots": "yes"}))

    def test_resolved_round_trip(self):
        cfg, output = parse_config(deep(BASE, initial=RING_INITIAL))
        doc = resolved_dict(cfg, output)
        cfg2, output2 = parse_config(doc)
        assert cfg2 == cfg and output2 == output


class TestSimulate:
    def test_zero_run_writes_artifacts(self, tmp_path):
        doc = deep(BASE, output={"dir": str(tmp_path / "out")})
        assert cmd_simulate(write_cfg(tmp_path, doc)) == 0
        rows = np.loadtxt(tmp_path / "out" / "diagnostics.csv", delimiter=",", skiprows=1, ndmin=2)
        assert rows.shape[0] >= 2
        assert np.all(rows[:, 2:] == 0.0)  # all norms zero for zero data
        meta = json.loads((tmp_path / "out" / "run_meta.json").read_text())
        assert meta["termination"] == "completed"
        assert meta["steps"] > 0 and meta["wall_time_s"] > 0
        cfg2, out2 = parse_config(meta["config"])
        cfg, out = load_config(write_cfg(tmp_path, doc))
        assert cfg2 == cfg

    def test_config_error_exit_1(self, tmp_path, capsys):
        doc = deep(BASE, physics={"mode": "idael"})
        assert main(["simulate", write_cfg(tmp_path, doc)]) == 1
        assert "idael" in capsys.readouterr().err

    def test_unreadable_config_exit_1(self, tmp_path):
        assert cmd_simulate(str(tmp_path / "missing.json")) == 1

    def test_resistive_ring_dissipates(self, tmp_path):
        doc = deep(
            BASE,
            physics={"mode": "resistive"},
            grid={"n_r": 32, "n_z": 32, "r_max": 3.0, "z_len": 6.0},
            time={"t_end": 0.05, "output_every": 20},
            initial=RING_INITIAL,
            output={"dir": str(tmp_path / "out")},
        )
        assert cmd_simulate(write_cfg(tmp_path, doc)) == 0
        rows = np.loadtxt(tmp_path / "out" / "diagnostics.csv", delimiter=",", skiprows=1, ndmin=2)
        pi_l2 = rows[:, 6]
        assert pi_l2[-1] < pi_l2[0]

    def test_snapshots_round_trip(self, tmp_path):
        doc = deep(
            BASE,
            time={"t_end": 0.005, "output_every": 5},
            initial=RING_INITIAL,
            output={"dir": str(tmp_path / "out"), "snapshots": True},
        )
        assert cmd_simulate(write_cfg(tmp_path, doc)) == 0
        first = read_field(tmp_path / "out" / "pi_0.axifield")
        assert first.parity == "even" and first.values.max() > 0.9
        assert (tmp_path / "out" / "omega_0.axifield").exists()

    def test_byte_identical_reruns(self, tmp_path):
        outs = []
        for tag in ("a", "b"):
            doc = deep(
                BASE,
                grid={"n_r": 16, "n_z": 16, "r_max": 3.0, "z_len": 6.0},
                physics={"mode": "resistive"},
                time={"t_end": 0.01, "output_every": 2},
                initial=RING_INITIAL,
                output={"dir": str(tmp_path / tag)},
            )
            assert cmd_simulate(write_cfg(tmp_path, doc, f"cfg_{tag}.json")) == 0
            outs.append((tmp_path / tag / "diagnostics.csv").read_bytes())
        assert outs[0] == outs[1]

    def test_blowup_exit_2(self, tmp_path, monkeypatch, capsys):
        import aximhd.evolve as ev

        doc = deep(
            BASE,
            grid={"n_r": 32, "n_z": 32, "r_max": 3.0, "z_len": 3.0},
            time={"t_end": 10.0},
            initial=RING_INITIAL,
            output={"dir": str(tmp_path / "out")},
        )
        g_h = 3.0 / 32
        monkeypatch.setattr(ev, "cfl_dt", lambda s, c: 10.0 * g_h**2)
        with np.errstate(over="ignore", invalid="ignore"):
            code = cmd_simulate(write_cfg(tmp_path, doc))
        assert code == 2
        assert "blow-up" in capsys.readouterr().err
        meta = json.loads((tmp_path / "out" / "run_meta.json").read_text())
        assert meta["termination"] == "blow-up"
        assert (tmp_path / "out" / "diagnostics.csv").exists()


class TestVerify:
    def ring_doc(self, tmp_path, mode="ideal", n=32, t_end=0.05):
        return deep(
            BASE,
            grid={"n_r": n, "n_z": n, "r_max": 3.0, "z_len": 6.0},
            physics={"mode": mode},
            time={"t_end": t_end, "output_every": 10},
            initial=RING_INITIAL,
        )

    def test_max_principle_passes(self, tmp_path, capsys):
        path = write_cfg(tmp_path, self.ring_doc(tmp_path))
        assert cmd_verify(path, ["max-principle"]) == 0
        out = capsys.readouterr().out
        assert "max-principle" in out and "PASS" in out

    def test_pi_l2_skipped_on_ideal(self, tmp_path, capsys):
        path = write_cfg(tmp_path, self.ring_doc(tmp_path, mode="ideal"))
        assert cmd_verify(path, ["pi-l2"]) == 0
        assert "SKIPPED" in capsys.readouterr().out

    def test_unknown_check_exit_1(self, tmp_path, capsys):
        path = write_cfg(tmp_path, self.ring_doc(tmp_path))
        assert cmd_verify(path, ["max-principal"]) == 1
        assert "max-principal" in capsys.readouterr().err

    def test_energy_law_coarse_grid_reports(self, tmp_path, capsys):
        path = write_cfg(tmp_path, self.ring_doc(tmp_path, n=16, t_end=0.02))
        code = cmd_verify(path, ["energy-law"])
        out = capsys.readouterr().out
        assert "energy-law" in out and ("PASS" in out or "FAIL" in out)
        assert code in (0, 3)

    def test_pair_checks_run_refinement(self, tmp_path, capsys):
        path = write_cfg(tmp_path, self.ring_doc(tmp_path, mode="resistive"))
        code = cmd_verify(path, ["cz-ratio", "ineq31", "ineq2", "pi-l2", "curl-identity"])
        out = capsys.readouterr().out
        assert code == 0, out
        for name in ("cz-ratio", "ineq31", "ineq2", "pi-l2", "curl-identity"):
            assert name in out

    def test_cli_checks_argument(self, tmp_path, capsys):
        path = write_cfg(tmp_path, self.ring_doc(tmp_path))
        assert main(["verify", path, "--checks", "max-principle,curl-identity"]) == 0


class TestApcheck:
    def test_sweep_and_csv(self, tmp_path, capsys):
        code = cmd_apcheck(
            2.0, [0.0, -2.0, -4.5], samples=5000, seed=1, out_dir=str(tmp_path)
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "bounded" in out and "unbounded" in out
        lines = (tmp_path / "ap_report.csv").read_text().splitlines()
        assert lines[0] == "alpha,p,t,estimate,stderr,classification"
        assert len(lines) == 1 + 3 * 7  # default t grid has 7 cells

    def test_bad_p_exit_1(self, tmp_path):
        assert cmd_apcheck(1.0, [0.0], out_dir=str(tmp_path)) == 1

    def test_cli_args(self, tmp_path):
        assert (
            main(
                [
                    "apcheck",
                    "--p",
                    "2",
                    "--alpha",
                    "0,-4.5",
                    "--samples",
                    "2000",
                    "--seed",
                    "7",
                    "--out",
                    str(tmp_path),
                ]
            )
            == 0
        )
        assert (tmp_path / "ap_report.csv").exists()

    def test_bad_alpha_list_exit_1(self, tmp_path, capsys):
        assert main(["apcheck", "--p", "2", "--alpha", "0,zebra"]) == 1


class TestThreadCap:
    def test_thread_cap_env_applied(self, tmp_path, monkeypatch):
        doc = deep(BASE, output={"dir": str(tmp_path / "out")})
        monkeypatch.setenv("AXIMHD_THREADS", "1")
        assert main(["simulate", write_cfg(tmp_path, doc)]) == 0

    def test_invalid_thread_cap_warns_but_runs(self, tmp_path, monkeypatch, capsys):
        doc = deep(BASE, output={"dir": str(tmp_path / "out")})
        monkeypatch.setenv("AXIMHD_THREADS", "many")
        assert main(["simulate", write_cfg(tmp_path, doc)]) == 0
        assert "AXIMHD_THREADS" in capsys.readouterr().err
