import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from aximhd.diagnostics import (
    CSV_COLUMNS,
    DiagnosticsRecord,
    check_cz_ratio,
    check_curl_identity,
    check_energy_law,
    check_ineq2,
    check_ineq31,
    check_max_principle,
    check_pi_l2_monotone,
    ineq31_residual_series,
    omega_growth_ratio,
    record,
    write_records_csv,
)
from aximhd.evolve import RunConfig, make_state, run
from aximhd.grid import ScalarField, make_grid, norm_lp, zeros_like_grid
from aximhd.initial import gaussian_ring_values
from aximhd.poisson5d import solve_stream5d

RING = {"amplitude": 1.0, "r0": 1.0, "z0": 3.0, "sigma": 0.25}


def zero_run(n=16, mode="ideal", t_end=0.01):
    g = make_grid(n, n, 2.0, 2.0)
    cfg = RunConfig(grid=g, mode=mode, t_end=t_end, initial_name="zero")
    return cfg, run(cfg)[1]


def synthetic_records(values, dt=1e-3):
    """Records with controlled norm columns, everything else zeroed."""
    recs = []
    for k, v in enumerate(values):
        recs.append(
            DiagnosticsRecord(
                time=k * dt,
                dt=dt,
                energy_kinetic=v.get("ek", 0.0),
                energy_magnetic=v.get("em", 0.0),
                grad_u_sq=v.get("gu", 0.0),
                pi_linf=v.get("pi_linf", 0.0),
                pi_l2=v.get("pi_l2", 0.0),
                grad_pi_l2=v.get("gp", 0.0),
                omega_l2=v.get("om", 0.0),
                grad_omega_l2=v.get("go", 0.0),
                omega_theta_l2=0.0,
                cz_lhs=v.get("cz_lhs", 0.0),
                cz_rhs=v.get("cz_rhs", 0.0),
                curl_identity_lhs=v.get("cl", 0.0),
                curl_identity_rhs=v.get("cr", 0.0),
                ineq31_residual=0.0,
                boundary_leak=0.0,
            )
        )
    return recs


class TestRecord:
    def test_zero_state_all_zero(self):
        g = make_grid(16, 16, 2.0, 2.0)
        st = make_state(g, zeros_like_grid(g), zeros_like_grid(g), "ideal")
        rec = record(st, 1e-3)
        for col in CSV_COLUMNS:
            if col == "dt":
                assert getattr(rec, col) == 1e-3
            else:
                assert getattr(rec, col) == 0.0, col

    def test_magnetic_energy_two_routes_agree(self):
        g = make_grid(48, 48, 3.0, 6.0)
        pi = ScalarField(g, gaussian_ring_values(g, 1.0, 1.0, 3.0, 0.25), "even")
        st = make_state(g, pi, zeros_like_grid(g), "ideal")
        rec = record(st, 1e-3)
        btheta = ScalarField(g, g.r[:, None] * pi.values, "odd")
        assert_allclose(rec.energy_magnetic, 0.5 * norm_lp(btheta, 2) ** 2, rtol=1e-12)

    def test_curl_identity_converges_on_synthetic_state(self):
        # omega := -lap5(q) for a smooth q, so the stream solve returns q
        # exactly and the reconstructed curl must match r*omega at O(h^2)
        gaps = {}
        for n in (32, 64):
            g = make_grid(n, n, 3.0, 6.0)
            q = ScalarField(g, gaussian_ring_values(g, 0.1, 1.0, 3.0, 0.5), "even")
            from aximhd.stencils import laplace5d_apply

            om_vals = -laplace5d_apply(q).values
            om_vals[-1] = 0.0
            om = ScalarField(g, om_vals, "even")
            st = make_state(g, zeros_like_grid(g), om, "ideal")
            rec = record(st, 1e-3)
            gaps[n] = abs(rec.curl_identity_lhs - rec.curl_identity_rhs) / (
                0.5 * (rec.curl_identity_lhs + rec.curl_identity_rhs)
            )
        assert gaps[32] / gaps[64] > 2.5

    def test_cz_ratio_finite_for_near_axis_vorticity(self):
        # vorticity concentrated near the axis: the parity-aware u_r/r
        # limit keeps the ratio finite
        g = make_grid(64, 64, 2.0, 2.0)
        om = ScalarField(g, gaussian_ring_values(g, 1.0, 0.25, 1.0, 0.15), "even")
        st = make_state(g, zeros_like_grid(g), om, "ideal")
        rec = record(st, 1e-3)
        assert rec.cz_rhs > 0
        ratio = rec.cz_lhs / rec.cz_rhs
        assert math.isfinite(ratio) and ratio > 0

    def test_cz_lhs_is_sup_of_ur_over_r(self):
        g = make_grid(48, 48, 3.0, 6.0)
        om = ScalarField(g, gaussian_ring_values(g, 1.0, 1.0, 3.0, 0.3), "even")
        st = make_state(g, zeros_like_grid(g), om, "ideal")
        rec = record(st, 1e-3)
        # u_r/r == -d_z q exactly, including the axis row
        from aximhd.stencils import ddz_values

        q = solve_stream5d(om).psi_over_r
        want = np.abs(ddz_values(q.values, g.h_z)).max()
        assert_allclose(rec.cz_lhs, want, rtol=5e-2)
        assert rec.cz_rhs > 0


class TestChecks:
    def test_energy_law_zero_run_passes(self):
        cfg, recs = zero_run()
        rep = check_energy_law(recs, cfg.grid, cfg.mode)
        assert rep.status == "PASS"
        assert rep.data["max_residual"] == 0.0

    def test_energy_law_needs_three_records(self):
        cfg, recs = zero_run()
        with pytest.raises(ValueError):
            check_energy_law(recs[:2], cfg.grid, cfg.mode)

    def test_energy_law_resistive_one_sided(self):
        # with resistivity the law gains magnetic dissipation, so the
        # check becomes DE/Dt + ||grad u||^2 <= tol (positive part only)
        g = make_grid(32, 32, 3.0, 6.0)
        cfg = RunConfig(
            grid=g,
            mode="resistive",
            t_end=0.05,
            output_every=5,
            initial_name="gaussian-ring",
            initial_params=RING,
        )
        _, recs = run(cfg)
        rep = check_energy_law(recs, g, "resistive")
        assert rep.status == "PASS"
        de = (
            (recs[-1].energy_kinetic + recs[-1].energy_magnetic)
            - (recs[0].energy_kinetic + recs[0].energy_magnetic)
        ) / (recs[-1].time - recs[0].time)
        assert de < 0  # the resistive run really is dissipating energy

    def test_max_principle_pass_and_fail(self):
        ok = synthetic_records([{"pi_linf": 1.0}, {"pi_linf": 0.9}])
        assert check_max_principle(ok).status == "PASS"
        bad = synthetic_records([{"pi_linf": 1.0}, {"pi_linf": 1.0 + 1e-6}])
        assert check_max_principle(bad).status == "FAIL"

    def test_pi_l2_skipped_for_ideal(self):
        cfg, recs = zero_run(mode="ideal")
        rep = check_pi_l2_monotone(recs, cfg.grid, "ideal")
        assert rep.status == "SKIPPED"

    def test_pi_l2_monotone_detects_growth(self):
        g = make_grid(8, 8, 1.0, 1.0)
        recs = synthetic_records([{"pi_l2": 1.0}, {"pi_l2": 1.1}])
        rep = check_pi_l2_monotone(recs, g, "resistive")
        assert rep.status == "FAIL"

    def test_cz_ratio_stability(self):
        a = synthetic_records([{"cz_lhs": 1.0, "cz_rhs": 2.0}] * 3)
        b = synthetic_records([{"cz_lhs": 1.05, "cz_rhs": 2.0}] * 3)
        assert check_cz_ratio(a, b).status == "PASS"
        c = synthetic_records([{"cz_lhs": 2.0, "cz_rhs": 2.0}] * 3)
        assert check_cz_ratio(a, c).status == "FAIL"
        zero = synthetic_records([{}] * 3)
        assert check_cz_ratio(zero, zero).status == "PASS"  # 0/0 -> 0

    def test_ineq31_shrink_branches(self):
        # both at floor
        flat = synthetic_records([{"om": 0.0, "go": 0.0}] * 4)
        assert check_ineq31(flat, flat).status == "PASS"
        # genuine shrink: d/dt ||om||^2 with no rhs gives positive residual
        grow_fast = synthetic_records([{"om": 0.0}, {"om": 1.0}])
        grow_slow = synthetic_records([{"om": 0.0}, {"om": 0.5}])
        rep = check_ineq31(grow_fast, grow_slow)
        assert rep.status == "PASS" and rep.data["fine"] < rep.data["coarse"]
        assert check_ineq31(grow_slow, grow_fast).status == "FAIL"

    def test_ineq2_skipped_for_ideal(self):
        recs = synthetic_records([{}] * 3)
        assert check_ineq2(recs, recs, "ideal").status == "SKIPPED"
        assert check_ineq2(recs, recs, "resistive").status == "PASS"

    def test_curl_identity_check(self):
        g = make_grid(64, 64, 3.0, 6.0)
        good = synthetic_records([{"cl": 1.0, "cr": 1.0001}] * 2)
        assert check_curl_identity(good, g).status == "PASS"
        bad = synthetic_records([{"cl": 1.0, "cr": 2.0}] * 2)
        assert check_curl_identity(bad, g).status == "FAIL"

    def test_omega_growth_ratio(self):
        recs = synthetic_records([{"om": 1.0}, {"om": 2.0}], dt=1.0)
        assert omega_growth_ratio(recs) == 1.0  # 2/(1+sqrt(1))


class TestIntervalResiduals:
    def test_fill_matches_series(self):
        g = make_grid(32, 32, 3.0, 6.0)
        cfg = RunConfig(
            grid=g,
            mode="ideal",
            t_end=0.02,
            output_every=4,
            initial_name="gaussian-ring",
            initial_params=RING,
        )
        _, recs = run(cfg)
        series = ineq31_residual_series(recs)
        assert recs[0].ineq31_residual == 0.0
        for rec, resid in zip(recs[1:], series):
            assert rec.ineq31_residual == resid

    def test_pure_decay_has_zero_residual(self):
        # pi = 0 throughout: the bound's right side vanishes and omega
        # decays, so the positive part must be identically zero
        g = make_grid(32, 32, 3.0, 6.0)
        cfg = RunConfig(
            grid=g,
            mode="ideal",
            t_end=0.05,
            output_every=10,
            initial_name="opposing-pair",
            initial_params={"r0": 1.0, "z0": 3.0, "sigma": 0.3, "dz": 0.8},
        )
        _, recs = run(cfg)
        assert recs[0].omega_l2 > 0
        assert max(ineq31_residual_series(recs)) == 0.0


class TestCsv:
    def test_header_and_round_trip(self, tmp_path):
        cfg, recs = zero_run(n=8)
        path = tmp_path / "diagnostics.csv"
        write_records_csv(recs, path)
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == len(recs) + 1
        back = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        for i, rec in enumerate(recs):
            for j, col in enumerate(CSV_COLUMNS):
                assert back[i, j] == getattr(rec, col)  # 17 digits: lossless

    def test_byte_identical_reruns(self, tmp_path):
        paths = []
        for tag in ("a", "b"):
            g = make_grid(16, 16, 3.0, 6.0)
            cfg = RunConfig(
                grid=g,
                mode="resistive",
                t_end=0.01,
                output_every=2,
                initial_name="gaussian-ring",
                initial_params=RING,
            )
            _, recs = run(cfg)
            p = tmp_path / f"diag_{tag}.csv"
            write_records_csv(recs, p)
            paths.append(p.read_bytes())
        assert paths[0] == paths[1]
