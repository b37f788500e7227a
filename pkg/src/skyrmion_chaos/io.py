"""Plain-text data files.

Every file starts with '#'-prefixed header lines: `# key = value` pairs and a
final `# columns: a b c` line, followed by whitespace-separated numbers.
Nothing time- or host-dependent is written, so identical runs give identical
bytes.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

FLOAT_FMT = "%.16e"


def write_table(path, columns: dict, meta: dict | None = None, fmt: str = FLOAT_FMT) -> Path:
    path = Path(path)
    names = list(columns)
    data = np.column_stack([np.asarray(columns[c], dtype=float) for c in names]) if names else np.empty((0, 0))
    lines = [f"# {k} = {v}" for k, v in (meta or {}).items()]
    lines.append("# columns: " + " ".join(names))
    for row in data:
        lines.append(" ".join(fmt % v for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def read_table(path) -> tuple[dict, dict]:
    """Return (meta, columns) from a file written by write_table."""
    meta, names, rows = {}, None, []
    for line in Path(path).read_text().splitlines():
        if line.startswith("# columns:"):
            names = line.split(":", 1)[1].split()
        elif line.startswith("#"):
            key, _, value = line[1:].partition("=")
            meta[key.strip()] = value.strip()
        elif line.strip():
            rows.append([float(v) for v in line.split()])
    if names is None:
        raise ValueError(f"{path}: missing '# columns:' header")
    data = np.array(rows, dtype=float).reshape(len(rows), len(names))
    return meta, {n: data[:, i] for i, n in enumerate(names)}


def write_profile(path, profile) -> Path:
    spec = profile.spec
    meta = {
        "kind": "profile",
        "k": spec.k,
        "n": spec.n,
        "sb": spec.sb.value,
        "sixth": spec.sixth,
        "L": profile.grid.L,
        "N": profile.grid.N,
        "residual_norm": f"{profile.residual_norm:.6e}",
    }
    return write_table(path, {"x": profile.grid.nodes, "F": profile.values}, meta)


def read_profile(path):
    from .lattice import Grid
    from .model import StaticEquationSpec
    from .static import Profile

    meta, cols = read_table(path)
    grid = Grid(float(meta["L"]), int(meta["N"]))
    spec = StaticEquationSpec(int(meta["k"]), int(meta["n"]), meta["sb"], meta["sixth"] == "True")
    return Profile(grid, cols["F"], spec, residual_norm=float(meta["residual_norm"]))


def write_mass_table(path, rows, meta: dict | None = None) -> Path:
    """rows: iterable of (case, k, variant, m2, m4, total)."""
    lines = [f"# {k} = {v}" for k, v in (meta or {}).items()]
    lines.append("# columns: case k variant m2 m4 total")
    for case, k, variant, m2, m4, total in rows:
        lines.append(f"{case} {k} {variant} {m2:.10f} {m4:.10f} {total:.10f}")
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    return path


def read_mass_table(path) -> list[dict]:
    rows = []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        case, k, variant, m2, m4, total = line.split()
        rows.append({"case": case, "k": int(k), "variant": variant, "m2": float(m2), "m4": float(m4), "total": float(total)})
    return rows


def run_tag(model: str, j: int, A: float, dt: float) -> str:
    return f"{model}_j{j}_A{A:g}_dt{dt:g}"


def write_snapshot(path, state, base_values, meta: dict | None = None) -> Path:
    meta = {"kind": "snapshot", "t": repr(float(state.t)), **(meta or {})}
    cols = {"x": state.grid.nodes, "F": state.F, "dF": state.F - base_values, "Fdot": state.Fdot}
    return write_table(path, cols, meta)


def write_energy_log(path, energies, meta: dict | None = None) -> Path:
    E = np.asarray(energies).reshape(-1, 3)
    meta = {"kind": "energy", **(meta or {})}
    return write_table(path, {"t": E[:, 0], "H_lattice": E[:, 1], "H_simpson": E[:, 2]}, meta)


def write_mode_history(path, history, meta: dict | None = None) -> Path:
    meta = {"kind": "mode-history", "j": history.j, **(meta or {})}
    return write_table(path, {"t": history.times, "A": history.amplitudes}, meta)


def write_spectrum(path, spectrum, meta: dict | None = None) -> Path:
    j = np.arange(1, len(spectrum.amplitudes) + 1)
    meta = {"kind": "spectrum", "t": repr(float(spectrum.t)), **(meta or {})}
    return write_table(path, {"j": j, "A": spectrum.amplitudes}, meta)


def write_kink_comparison(path, table, meta: dict | None = None) -> Path:
    meta = {"kind": "kink-comparison", **(meta or {})}
    cols = {"x": table.x, "lhs_kink": table.lhs_kink, "rhs_pionmass": table.rhs_pionmass, "rhs_modified": table.rhs_modified}
    return write_table(path, cols, meta)
