"""Command-line runner: static, mass-table, compare-kink, evolve, spectrum.

Configuration comes from an optional `key = value` file (--config) and from
flags; flags win.  All data files go under --out.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import io
from .dynamics import (
    DEFAULT_SNAPSHOTS,
    DEFAULT_T_END,
    BlowUpError,
    EvolutionConfig,
    Model,
    evolve,
    static_spec_for,
)
from .energy import masses
from .lattice import Grid
from .model import InvalidParameterError, ModelParams, SbVariant, StaticEquationSpec, kink_profile
from .spectral import mode_amplitudes, mode_history
from .static import Profile, SolverError, kink_comparison, solve_static

log = logging.getLogger(__name__)

COMMANDS = ("static", "mass-table", "compare-kink", "evolve", "spectrum")
DEFAULT_MODES = {Model.QUARTIC: (8, 16, 32), Model.SIXTH: (8, 16, 64, 127)}
EXIT_CODES = {"parse": 2, "validation": 3, "solver": 4, "blow-up": 5, "io": 6}


class ConfigError(ValueError):
    category = "parse"


class ValidationError(ValueError):
    category = "validation"


@dataclass
class RunConfig:
    command: str = "mass-table"
    L: float = 16.0
    N: int = 128
    dt: float = 1e-3
    t_end: float | None = None  # None: model default (500 quartic, 300 sixth)
    j: int = 16
    A: float = 0.1
    model: str = "quartic"
    variant: str = "none"
    k: int = 1
    n: int = 1
    m_pi: float = 140.0
    e: float = 4.84
    F_pi: float = 108.0
    epsilon: float = 3.5e-7
    eps6_sq: float = 5.0
    m4_reading: str = "unity"
    out: str = "out"
    input: str = ""

    @property
    def grid(self) -> Grid:
        return Grid(self.L, self.N)

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.m_pi, self.e, self.F_pi, self.epsilon, self.eps6_sq)

    @property
    def end_time(self) -> float:
        return DEFAULT_T_END[Model(self.model)] if self.t_end is None else self.t_end

    def validate(self) -> "RunConfig":
        checks = [
            (self.command in COMMANDS, f"command must be one of {COMMANDS}"),
            (self.L > 0, "L must be positive"),
            (self.N >= 16, "N must be >= 16"),
            (self.dt > 0, "dt must be positive"),
            (self.t_end is None or self.t_end >= 0, "t_end must be >= 0"),
            (1 <= self.j <= self.N - 1, f"mode range 1..{self.N - 1} (j={self.j})"),
            (self.model in {m.value for m in Model}, "model must be quartic or sixth"),
            (self.variant in {v.value for v in SbVariant}, "variant must be none, pion-mass or modified"),
            (self.k >= 1, "twist k must be >= 1"),
            (self.m4_reading in {"unity", "sin2"}, "m4_reading must be unity or sin2"),
            (not (self.model == "sixth" and self.k != 1), "the sixth-order model requires k=1"),
        ]
        for ok, message in checks:
            if not ok:
                raise ValidationError(message)
        try:
            self.params
        except InvalidParameterError as exc:
            raise ValidationError(str(exc)) from exc
        return self


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key, raw, where=""):
    if key not in _TYPES:
        raise ConfigError(f"{where}unknown key {key!r}")
    kind = _TYPES[key]
    try:
        if kind == "int":
            value = float(raw)
            if value != int(value):
                raise ValueError
            return int(value)
        if kind in ("float", "float | None"):
            return float(raw)
        return str(raw)
    except ValueError:
        raise ConfigError(f"{where}cannot read {key}={raw!r} as {kind}") from None


def parse_text(text: str) -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        if not sep or not key.strip() or not raw.strip():
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key = key.strip()
        values[key] = _coerce(key, raw.strip(), f"line {lineno}: ")
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser(parser_class=argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser = parser_class(prog="skyrmion-chaos", description=__doc__.splitlines()[0], allow_abbrev=False)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="key = value file; flags override it")
    for f in fields(RunConfig):
        if f.name == "command":
            continue
        parser.add_argument(f"--{f.name.replace('_', '-')}", dest=f.name, default=None,
                            help=f"default: {f.default}")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def parse_config(text: str = "", argv=None) -> RunConfig:
    """Config file text plus command-line flags -> validated RunConfig."""
    values = parse_text(text)
    if argv is not None:
        args = build_parser(_Parser).parse_args(list(argv))
        values["command"] = args.command
        for key in _TYPES:
            flag = getattr(args, key, None)
            if key != "command" and flag is not None:
                values[key] = _coerce(key, flag, "--")
    return RunConfig(**values).validate()


def _static_spec(config: RunConfig) -> StaticEquationSpec:
    return StaticEquationSpec(config.k, config.n, SbVariant(config.variant), sixth=config.model == "sixth")


def _write_manifest(out: Path, config: RunConfig, files, status="ok", error=None, extra=None):
    manifest = {"config": asdict(config), "status": status, "files": sorted(str(Path(f).name) for f in files)}
    if error:
        manifest["error"] = error
    if extra:
        manifest.update(extra)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def run_static(config: RunConfig) -> Path:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    spec = _static_spec(config)
    profile = solve_static(spec, config.grid, config.params)
    name = f"profile_k{spec.k}_n{spec.n}_{spec.sb.value}{'_sixth' if spec.sixth else ''}.dat"
    path = io.write_profile(out / name, profile)
    _write_manifest(out, config, [path])
    return path


MASS_CASES = (
    ("a", 1, 2, "kink"),
    ("b", 2, 1, "kink"),
    ("c", 2, 1, SbVariant.PION_MASS),
    ("d", 2, 1, SbVariant.MODIFIED),
)


def mass_rows(config: RunConfig, reading: str | None = None):
    """[(case, k, variant, m2, m4, total)] for the four B=2 configurations."""
    reading = reading or config.m4_reading
    grid, params = config.grid, config.params
    rows, profiles = [], {}
    for case, k, n, how in MASS_CASES:
        if how == "kink":
            prof = Profile(grid, kink_profile(grid.nodes, n), StaticEquationSpec(k, n))
            variant = "kink"
        else:
            try:
                prof = solve_static(StaticEquationSpec(k, n, how), grid, params)
            except SolverError as exc:
                raise SolverError(f"mass-table case {case}: {exc}", exc.best_residual, exc.best) from exc
            variant = how.value
            profiles[case] = prof
        mb = masses(prof, k, reading)
        rows.append((case, k, variant, mb.m2, mb.m4, mb.total))
    return rows, profiles


def run_mass_table(config: RunConfig) -> Path:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    rows, profiles = mass_rows(config)
    meta = {"units": "pi F_pi / e", "m4_reading": config.m4_reading, "L": config.L, "N": config.N}
    files = [io.write_mass_table(out / "mass_table.txt", rows, meta)]
    for case, prof in profiles.items():
        files.append(io.write_profile(out / f"profile_case_{case}.dat", prof))
    _write_manifest(out, config, files)
    return files[0]


def run_compare_kink(config: RunConfig) -> Path:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    table = kink_comparison(config.grid, config.params)
    meta = {
        "epsilon": config.epsilon,
        "beta": repr(config.params.beta),
        "l2_lhs_minus_pionmass": repr(table.misfit("pion-mass")),
        "l2_lhs_minus_modified": repr(table.misfit("modified")),
    }
    path = io.write_kink_comparison(out / "kink_comparison.dat", table, meta)
    _write_manifest(out, config, [path])
    return path


def run_evolution_suite(config: RunConfig, modes=None):
    """Static solve, perturb, evolve, mode histories; writes every output file.

    On failure the files written so far are kept and the manifest records
    which stages completed.
    """
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    model = Model(config.model)
    modes = DEFAULT_MODES[model] if modes is None else modes
    tag = io.run_tag(model.value, config.j, config.A, config.dt)
    files, stages = [], []
    try:
        base = solve_static(static_spec_for(model), config.grid, config.params)
        files.append(io.write_profile(out / f"{tag}_base_profile.dat", base))
        stages.append("static")
        t_end = config.end_time
        ecfg = EvolutionConfig(base, model, dt=config.dt, t_end=t_end, snapshot_times=DEFAULT_SNAPSHOTS[model],
                               perturb_mode=config.j, perturb_amp=config.A)
        traj = evolve(ecfg, config.params)
        stages.append("evolve")
        meta = {"model": model.value, "j": config.j, "A": config.A, "dt": config.dt}
        for snap in traj.snapshots:
            files.append(io.write_snapshot(out / f"{tag}_snapshot_t{snap.t:g}.dat", snap, base.values, meta))
        files.append(io.write_energy_log(out / f"{tag}_energy.dat", traj.energies(), meta))
        for hist in mode_history(traj, base, modes if t_end > 0 else []):
            files.append(io.write_mode_history(out / f"{tag}_mode_j{hist.j}.dat", hist, meta))
        stages.append("spectral")
    except (SolverError, BlowUpError) as exc:
        if isinstance(exc, BlowUpError) and exc.state is not None:
            files.append(io.write_snapshot(out / f"{tag}_blowup_t{exc.t:g}.dat", exc.state,
                                           np.zeros_like(exc.state.F), {"model": model.value}))
        _write_manifest(out, config, files, status="failed", error=str(exc), extra={"completed": stages})
        raise
    _write_manifest(out, config, files, extra={"completed": stages})
    return files, traj


def run_spectrum(config: RunConfig) -> Path:
    """Mode amplitudes of the dF column of a snapshot file."""
    if not config.input:
        raise ValidationError("spectrum needs --input <snapshot file>")
    meta, cols = io.read_table(config.input)
    grid = Grid(float(cols["x"][-1]), len(cols["x"]) - 1)
    spectrum = mode_amplitudes(cols["dF"], grid, float(meta.get("t", 0.0)))
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    path = io.write_spectrum(out / (Path(config.input).stem + "_spectrum.dat"), spectrum, {"source": Path(config.input).name})
    _write_manifest(out, config, [path])
    return path


RUNNERS = {
    "static": run_static,
    "mass-table": run_mass_table,
    "compare-kink": run_compare_kink,
    "evolve": run_evolution_suite,
    "spectrum": run_spectrum,
}


def _category(exc) -> str:
    if isinstance(exc, (ConfigError, ValidationError)):
        return exc.category
    if isinstance(exc, BlowUpError):
        return "blow-up"
    if isinstance(exc, SolverError):
        return "solver"
    if isinstance(exc, OSError):
        return "io"
    return "validation"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        pre.add_argument("-v", "--verbose", action="store_true")
        known, _ = pre.parse_known_args(argv)
        logging.basicConfig(level=logging.INFO if known.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
        text = Path(known.config).read_text() if known.config else ""
        config = parse_config(text, argv)
        result = RUNNERS[config.command](config)
    except (ConfigError, ValidationError, SolverError, BlowUpError, OSError, ValueError) as exc:
        category = _category(exc)
        print(json.dumps({"error": category, "message": str(exc)}), file=sys.stderr)
        return EXIT_CODES.get(category, 1)
    if isinstance(result, tuple):
        result = result[0]
    print(json.dumps({"ok": True, "out": config.out}))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
