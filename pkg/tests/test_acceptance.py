"""Acceptance criteria, one test (or small group) per criterion.

Each test prints a PASS/FAIL line through the `report` fixture; the lines are
collected in the "acceptance criteria" section of the pytest summary.
"""
import json
import time

import numpy as np
import pytest

from skyrmion_chaos import io
from skyrmion_chaos.cli import mass_rows, parse_config, run_compare_kink, run_evolution_suite, run_mass_table
from skyrmion_chaos.dynamics import EvolutionConfig, Model, evolve
from skyrmion_chaos.lattice import lattice_residual
from skyrmion_chaos.model import SbVariant, StaticEquationSpec
from skyrmion_chaos.spectral import broadband, mode_amplitudes, reconstruct, spectra
from skyrmion_chaos.static import solve_static

REFERENCE_TOTALS = {"a": 46.7, "b": 38.0, "c": 38.4, "d": 27.5}

# frozen from the first validated quartic run (defaults, dt = 1e-3)
A16_LATE_MEAN = 0.01067947158220878
BROADBAND_EARLY_MEAN = 0.5868146386369928
BROADBAND_LATE_MEAN = 0.8906543216309775


def window_mean(times, values, lo, hi):
    m = (times >= lo - 1e-9) & (times <= hi + 1e-9)
    return float(np.mean(values[m]))


@pytest.fixture(scope="module")
def mass_table(tmp_path_factory):
    out = tmp_path_factory.mktemp("mass")
    t0 = time.perf_counter()
    run_mass_table(parse_config(f"out = {out}"))
    elapsed = time.perf_counter() - t0
    return {r["case"]: r for r in io.read_mass_table(out / "mass_table.txt")}, elapsed


# -- mass table ---------------------------------------------------------------

@pytest.mark.parametrize("case", "abcd")
def test_mass_table_case(mass_table, case, report):
    rows, _ = mass_table
    got, want = rows[case]["total"], REFERENCE_TOTALS[case]
    rel = abs(got - want) / want
    assert report(f"mass table case {case} within 5%", rel < 0.05, f"total={got:.4f} ref={want} rel={rel:.3f}")


def test_mass_table_ordering(mass_table, report):
    rows, elapsed = mass_table
    totals = {c: r["total"] for c, r in rows.items()}
    others = [totals[c] for c in "abc"]
    ok = all(totals["d"] < t for t in others)
    assert report("mass table: d strictly minimal", ok, " ".join(f"{c}={t:.4f}" for c, t in totals.items()))
    assert report("mass table runtime < 60 s", elapsed < 60, f"{elapsed:.1f} s")


def test_mass_table_alternate_reading(report):
    # evaluated because the primary reading misses c and d; recorded, not a gate
    rows, _ = mass_rows(parse_config(""), reading="sin2")
    totals = {r[0]: r[5] for r in rows}
    for c, t in totals.items():
        rel = abs(t - REFERENCE_TOTALS[c]) / REFERENCE_TOTALS[c]
        report(f"mass table case {c} within 5% (alternate sin2 reading, informational)", rel < 0.05,
               f"total={t:.4f} rel={rel:.3f}")
    report("mass table: d strictly minimal (alternate reading, informational)",
           all(totals["d"] < totals[c] for c in "abc"), " ".join(f"{c}={t:.4f}" for c, t in totals.items()))
    assert all(np.isfinite(t) and t > 0 for t in totals.values())


# -- kink comparison ----------------------------------------------------------

def test_kink_comparison(tmp_path, report):
    t0 = time.perf_counter()
    path = run_compare_kink(parse_config(f"out = {tmp_path}"))
    elapsed = time.perf_counter() - t0
    meta, _ = io.read_table(path)
    mod, pion = float(meta["l2_lhs_minus_modified"]), float(meta["l2_lhs_minus_pionmass"])
    assert report("kink comparison runtime < 1 s", elapsed < 1.0, f"{elapsed:.2f} s")
    assert report("kink comparison: |lhs - eps*rhs| < |lhs - rhs|", mod < pion, f"modified={mod:.4f} pion-mass={pion:.4f}")


# -- static solver ------------------------------------------------------------

STATIC_SPECS = [
    StaticEquationSpec(k, 1, sb) for k in (1, 2) for sb in SbVariant
] + [StaticEquationSpec(1, 1, SbVariant.MODIFIED, sixth=True)]


@pytest.mark.parametrize("spec", STATIC_SPECS, ids=lambda s: f"k{s.k}-{s.sb.value}{'-sixth' if s.sixth else ''}")
def test_static_residual_and_refinement(spec, params, grid, report):
    coarse = solve_static(spec, grid, params)
    fine = solve_static(spec, grid.refined(), params)
    res = float(np.max(np.abs(lattice_residual(coarse.values, grid, spec.density(params)))))
    change = float(np.max(np.abs(fine.values[::2] - coarse.values)))
    name = f"static k={spec.k} {spec.sb.value}{' sixth' if spec.sixth else ''}"
    ok_res = report(f"{name}: residual < 1e-6", res < 1e-6, f"{res:.2e}")
    ok_ref = report(f"{name}: N->2N change < 1e-3", change < 1e-3, f"{change:.2e}")
    assert ok_res and ok_ref


# -- energy conservation ------------------------------------------------------

@pytest.mark.parametrize("model", list(Model))
def test_energy_conservation(model, base_profiles, params, report):
    t0 = time.perf_counter()
    traj = evolve(EvolutionConfig(base_profiles[model], model, dt=1e-3, t_end=100.0, snapshot_times=()), params)
    elapsed = time.perf_counter() - t0
    drift = traj.relative_drift(100.0)
    ok = report(f"energy drift {model.value} t<=100 < 1e-3", drift < 1e-3, f"{drift:.2e}")
    ok_t = report(f"energy run {model.value} runtime < 120 s", elapsed < 120, f"{elapsed:.1f} s")
    assert ok and ok_t


# -- fluctuation magnitude ----------------------------------------------------

def test_fluctuation_bound(trajectories, base_profiles, report):
    base = base_profiles[Model.QUARTIC]
    traj = trajectories(Model.QUARTIC)
    times, F = traj.sample_array()
    A16_0 = mode_amplitudes(F[0] - base.values, base.grid)[16]
    far = base.grid.nodes >= 2.0
    dF = np.abs(F[:, far] - base.values[far])
    peak = float(dF.max())
    where = np.unravel_index(np.argmax(dF), dF.shape)
    assert abs(A16_0 - 0.1) < 1e-12
    assert report("fluctuation max|dF| on [2,16] < 0.3 (quartic, t<=500)", peak < 0.3,
                  f"max={peak:.3f} at t={times[where[0]]:g}, x={base.grid.nodes[far][where[1]]:g}")


# -- mode transfer ------------------------------------------------------------

def transfer_stats(traj, base):
    times, A = spectra(traj, base)
    a16_0 = abs(A[0, 15])
    late16 = window_mean(times, np.abs(A[:, 15]), 375, 500)
    bb = broadband(A)
    return a16_0, late16, window_mean(times, bb, 0, 125), window_mean(times, bb, 375, 500)


def test_mode_transfer(trajectories, base_profiles, report):
    base = base_profiles[Model.QUARTIC]
    a16_0, late16, early_bb, late_bb = transfer_stats(trajectories(Model.QUARTIC), base)
    ok = report("mode transfer: mean|A16|[375,500] < |A16(0)|", late16 < a16_0, f"{late16:.5f} < {a16_0:.3f}")
    ok &= report("mode transfer: broadband late > early", late_bb > early_bb, f"{late_bb:.4f} > {early_bb:.4f}")
    frozen = np.allclose([late16, early_bb, late_bb], [A16_LATE_MEAN, BROADBAND_EARLY_MEAN, BROADBAND_LATE_MEAN], rtol=1e-6)
    ok &= report("mode transfer: frozen regression constants (rel 1e-6)", frozen)
    assert ok


@pytest.mark.slow
def test_mode_transfer_second_step_size(trajectories, base_profiles, report):
    base = base_profiles[Model.QUARTIC]
    a16_0, late16, early_bb, late_bb = transfer_stats(trajectories(Model.QUARTIC, dt=2e-3), base)
    ok = late16 < a16_0 and late_bb > early_bb
    assert report("mode transfer cross-check at dt=2e-3", ok,
                  f"A16 late={late16:.5f} broadband {early_bb:.4f} -> {late_bb:.4f}")


# -- self-excitation ----------------------------------------------------------

def broadband_series(traj, base):
    times, A = spectra(traj, base)
    return times, broadband(A)


def test_self_excitation(trajectories, base_profiles, report):
    t0 = time.perf_counter()
    tq, bq = broadband_series(trajectories(Model.QUARTIC, t_end=300.0), base_profiles[Model.QUARTIC])
    ts, bs = broadband_series(trajectories(Model.SIXTH), base_profiles[Model.SIXTH])
    elapsed = time.perf_counter() - t0
    sixth300, quart300 = bs[np.argmin(abs(ts - 300))], bq[np.argmin(abs(tq - 300))]
    ok = report("self-excitation: sixth broadband > quartic at t=300", sixth300 > quart300,
                f"sixth={sixth300:.4f} quartic={quart300:.4f}")
    # the broadband sum is exactly zero at t=0, so the first stored sample after t=0 is the baseline
    baseline = bs[1]
    crossed = ts[2:][bs[2:] > 3 * baseline]
    onset = float(crossed[0]) if crossed.size else np.inf
    ok &= report("self-excitation: onset (3x baseline) at t=150+-75", abs(onset - 150) <= 75,
                 f"onset t={onset:g} baseline={baseline:.3e} at t={ts[1]:g}")
    ok &= report("self-excitation runtime < 120 s", elapsed < 120, f"{elapsed:.1f} s")
    assert ok


# -- spectral identities ------------------------------------------------------

def test_spectral_identities(grid, report):
    rng = np.random.default_rng(7)
    worst_rt, worst_pv = 0.0, 0.0
    for _ in range(100):
        d = np.zeros(grid.N + 1)
        d[1:-1] = rng.normal(scale=rng.uniform(1e-3, 3.0), size=grid.N - 1)
        spec = mode_amplitudes(d, grid)
        worst_rt = max(worst_rt, float(np.max(np.abs(reconstruct(spec, grid) - d))))
        lhs, rhs = np.sum(d**2), grid.N / 2 * np.sum(spec.amplitudes**2)
        worst_pv = max(worst_pv, abs(lhs - rhs) / lhs)
    ok = report("spectral round trip < 1e-12 (100 fields)", worst_rt < 1e-12, f"{worst_rt:.1e}")
    ok &= report("spectral Parseval < 1e-10 rel (100 fields)", worst_pv < 1e-10, f"{worst_pv:.1e}")
    assert ok


# -- determinism --------------------------------------------------------------

def test_determinism(tmp_path, report):
    def run(sub):
        out = tmp_path / sub
        run_mass_table(parse_config(f"out = {out}/mass"))
        run_compare_kink(parse_config(f"out = {out}/kink"))
        run_evolution_suite(parse_config(f"model = sixth\nt_end = 5\nout = {out}/evolve"))
        files = {p.relative_to(out): p for p in sorted(out.rglob("*")) if p.is_file()}
        data = {k: p.read_bytes() for k, p in files.items() if p.name != "manifest.json"}
        manifests = {}
        for k, p in files.items():
            if p.name == "manifest.json":
                m = json.loads(p.read_text())
                m["config"].pop("out")  # the output directory is the one intended difference
                manifests[k] = m
        return data, manifests

    (d1, m1), (d2, m2) = run("one"), run("two")
    same = d1.keys() == d2.keys() and all(d1[k] == d2[k] for k in d1)
    ok = report("determinism: byte-identical data files", same, f"{len(d1)} files")
    ok &= report("determinism: manifests agree apart from the output path", m1 == m2)
    assert ok
