"""Command-line front end.

Four subcommands over a JSON run configuration:

* ``verify``  - run the identity/defect/state check suites, write a report
* ``sweep``   - tabulate means of the interpolating pair across h values
* ``kernels`` - dump the four r-factor blocks of a realized observable
* ``evolve``  - run endpoint dynamics or the two-sided oscillator comparison

All writers are deterministic: identical config and seed produce
byte-identical files.  Exit codes: 0 success, 1 verification failure,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import dynamics as dyn
from .expr import ExprError, parse_expr
from .matrep import (
    Backend,
    build_backend,
    commutator_defect,
    export_kernel_csv,
    export_matrix,
    format_float,
    kernel_block,
    realize,
)
from .ncpoly import eval_ncpoly, make_generators, substitute_lambda
from .states import (
    WeightSpec,
    cm_point_state,
    coherent_state,
    gaussian_grid_state,
    lift_qm_eigenstate,
    mean_value,
)
from .verify import VerifyReport, run_verify

_FAMILIES = ("tilde", "qm", "cm")
_STATE_KINDS = ("lifted-qm", "cm-point")
_MODES = ("auto", "compare")


class ConfigError(ValueError):
    """Invalid run configuration or command usage."""


Pair = tuple[float, float]


def _as_pair(value) -> Pair:
    if isinstance(value, (int, float)):
        return (float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return (float(value[0]), float(value[1]))
    raise ConfigError(f"expected a number or [re, im] pair, got {value!r}")


def _as_vector(value) -> tuple[Pair, ...]:
    if not isinstance(value, (list, tuple)):
        raise ConfigError(f"expected a list of entries, got {value!r}")
    return tuple(_as_pair(entry) for entry in value)


@dataclass(frozen=True)
class BackendSpec:
    kind: str = "grid-position"
    n: int = 8
    length: float | None = 8.0

    @staticmethod
    def from_dict(d: dict) -> "BackendSpec":
        _reject_unknown(d, {"kind", "n", "length"}, "backend")
        if "length" in d:
            length = None if d["length"] is None else float(d["length"])
        else:
            length = 8.0
        return BackendSpec(
            kind=str(d.get("kind", "grid-position")),
            n=int(d.get("n", 8)),
            length=length,
        )


@dataclass(frozen=True)
class WeightsConfig:
    c_q: Pair | None = None
    c_p: Pair | None = None
    a_vec: tuple[Pair, ...] | None = None
    b_vec: tuple[Pair, ...] | None = None

    @staticmethod
    def from_dict(d: dict) -> "WeightsConfig":
        _reject_unknown(d, {"c_q", "c_p", "a_vec", "b_vec"}, "weights")
        return WeightsConfig(
            c_q=None if d.get("c_q") is None else _as_pair(d["c_q"]),
            c_p=None if d.get("c_p") is None else _as_pair(d["c_p"]),
            a_vec=None if d.get("a_vec") is None else _as_vector(d["a_vec"]),
            b_vec=None if d.get("b_vec") is None else _as_vector(d["b_vec"]),
        )


@dataclass(frozen=True)
class StateSpec:
    kind: str = "lifted-qm"
    q0: float = 0.0
    p0: float = 0.0
    sigma: float | None = None
    k: int = 0
    l: int = 0

    @staticmethod
    def from_dict(d: dict) -> "StateSpec":
        _reject_unknown(d, {"kind", "q0", "p0", "sigma", "k", "l"}, "state")
        return StateSpec(
            kind=str(d.get("kind", "lifted-qm")),
            q0=float(d.get("q0", 0.0)),
            p0=float(d.get("p0", 0.0)),
            sigma=None if d.get("sigma") is None else float(d["sigma"]),
            k=int(d.get("k", 0)),
            l=int(d.get("l", 0)),
        )


@dataclass(frozen=True)
class DynamicsSpec:
    mode: str = "compare"
    q0: float = 1.0
    p0: float = 0.0
    sigma: float | None = None
    dt: float = 1e-3
    steps: int | None = None
    period_count: int = 1
    record_stride: int = 50
    n_grid: int = 64
    n_fock: int = 32
    length: float = 16.0

    @staticmethod
    def from_dict(d: dict) -> "DynamicsSpec":
        allowed = {
            "mode", "q0", "p0", "sigma", "dt", "steps", "period_count",
            "record_stride", "n_grid", "n_fock", "length",
        }
        _reject_unknown(d, allowed, "dynamics")
        return DynamicsSpec(
            mode=str(d.get("mode", "compare")),
            q0=float(d.get("q0", 1.0)),
            p0=float(d.get("p0", 0.0)),
            sigma=None if d.get("sigma") is None else float(d["sigma"]),
            dt=float(d.get("dt", 1e-3)),
            steps=None if d.get("steps") is None else int(d["steps"]),
            period_count=int(d.get("period_count", 1)),
            record_stride=int(d.get("record_stride", 50)),
            n_grid=int(d.get("n_grid", 64)),
            n_fock=int(d.get("n_fock", 32)),
            length=float(d.get("length", 16.0)),
        )


def _reject_unknown(d: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(d) - allowed)
    if unknown:
        raise ConfigError(f"unknown {where} config keys: {', '.join(unknown)}")


def _default_h_values() -> tuple[float, ...]:
    return tuple(i / 10 for i in range(11))


@dataclass(frozen=True)
class RunConfig:
    """Full run configuration; JSON round-trips to an equal value."""

    hbar: float = 1.0
    h_o: float = 1.0
    h_values: tuple[float, ...] = field(default_factory=_default_h_values)
    seed: int = 1234
    backend_q: BackendSpec = field(default_factory=BackendSpec)
    backend_p: BackendSpec = field(
        default_factory=lambda: BackendSpec(kind="grid-momentum")
    )
    weights: WeightsConfig = field(default_factory=WeightsConfig)
    observable: str = "(1/2)*(P^2 + Q^2)"
    family: str = "tilde"
    state: StateSpec = field(default_factory=StateSpec)
    dynamics: DynamicsSpec = field(default_factory=DynamicsSpec)
    fault_injection: float | None = None
    export_matrix: bool = False

    def validate(self) -> None:
        if self.hbar <= 0:
            raise ConfigError(f"hbar must be positive, got {self.hbar}")
        if self.h_o <= 0:
            raise ConfigError(f"h_o must be positive, got {self.h_o}")
        if not self.h_values:
            raise ConfigError("h_values must be nonempty")
        for h in self.h_values:
            if not 0.0 <= h <= self.h_o:
                raise ConfigError(
                    f"h value {h!r} outside [0, {self.h_o}]"
                )
        if self.family not in _FAMILIES:
            raise ConfigError(
                f"family must be one of {_FAMILIES}, got {self.family!r}"
            )
        if self.state.kind not in _STATE_KINDS:
            raise ConfigError(
                f"state kind must be one of {_STATE_KINDS}, got {self.state.kind!r}"
            )
        if self.dynamics.mode not in _MODES:
            raise ConfigError(
                f"dynamics mode must be one of {_MODES}, got {self.dynamics.mode!r}"
            )
        try:
            parse_expr(self.observable)
        except ExprError as exc:
            raise ConfigError(f"observable does not parse: {exc}") from exc

    def to_dict(self) -> dict:
        payload = asdict(self)
        payload["h_values"] = list(self.h_values)
        for key in ("backend_q", "backend_p", "weights", "state", "dynamics"):
            payload[key] = {
                k: (list(v) if isinstance(v, tuple) else v)
                for k, v in payload[key].items()
            }
        wc = payload["weights"]
        for k, v in wc.items():
            if isinstance(v, list) and v and isinstance(v[0], tuple):
                wc[k] = [list(entry) for entry in v]
        return payload

    @staticmethod
    def from_dict(d: dict) -> "RunConfig":
        allowed = {
            "hbar", "h_o", "h_values", "seed", "backend_q", "backend_p",
            "weights", "observable", "family", "state", "dynamics",
            "fault_injection", "export_matrix",
        }
        _reject_unknown(d, allowed, "top-level")
        cfg = RunConfig(
            hbar=float(d.get("hbar", 1.0)),
            h_o=float(d.get("h_o", 1.0)),
            h_values=tuple(float(h) for h in d.get("h_values", _default_h_values())),
            seed=int(d.get("seed", 1234)),
            backend_q=BackendSpec.from_dict(d.get("backend_q", {})),
            backend_p=BackendSpec.from_dict(
                d.get("backend_p", {"kind": "grid-momentum"})
            ),
            weights=WeightsConfig.from_dict(d.get("weights", {})),
            observable=str(d.get("observable", "(1/2)*(P^2 + Q^2)")),
            family=str(d.get("family", "tilde")),
            state=StateSpec.from_dict(d.get("state", {})),
            dynamics=DynamicsSpec.from_dict(d.get("dynamics", {})),
            fault_injection=(
                None if d.get("fault_injection") is None
                else float(d["fault_injection"])
            ),
            export_matrix=bool(d.get("export_matrix", False)),
        )
        cfg.validate()
        return cfg

    @staticmethod
    def from_json_file(path: str) -> "RunConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
        return RunConfig.from_dict(payload)


# -- construction helpers --------------------------------------------------


def build_backends(config: RunConfig) -> tuple[Backend, Backend]:
    try:
        bq = build_backend(
            config.backend_q.kind, config.backend_q.n, config.hbar,
            config.backend_q.length,
        )
        bp = build_backend(
            config.backend_p.kind, config.backend_p.n, config.hbar,
            config.backend_p.length,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return bq, bp


def _pair_to_complex(p: Pair) -> complex:
    return complex(p[0], p[1])


def _vector_to_array(entries: tuple[Pair, ...], n: int, name: str) -> np.ndarray:
    if len(entries) != n:
        raise ConfigError(
            f"{name} has {len(entries)} entries, backend dimension is {n}"
        )
    return np.array([complex(re, im) for re, im in entries], dtype=complex)


def build_weights(config: RunConfig, n_q: int, n_p: int) -> WeightSpec:
    wc = config.weights
    base = WeightSpec.default(n_q, n_p)
    c_q = base.c_q if wc.c_q is None else _pair_to_complex(wc.c_q)
    c_p = base.c_p if wc.c_p is None else _pair_to_complex(wc.c_p)
    a_vec = base.a_vec if wc.a_vec is None else _vector_to_array(wc.a_vec, n_p, "a_vec")
    b_vec = base.b_vec if wc.b_vec is None else _vector_to_array(wc.b_vec, n_q, "b_vec")
    spec = WeightSpec(c_q=c_q, c_p=c_p, a_vec=a_vec, b_vec=b_vec)
    try:
        spec.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return spec


def _factor_state(backend: Backend, spec: StateSpec) -> np.ndarray:
    if backend.is_grid:
        return gaussian_grid_state(backend, spec.q0, spec.p0, spec.sigma)
    alpha = (spec.q0 + 1j * spec.p0) / np.sqrt(2.0 * backend.hbar)
    return coherent_state(backend.dim, alpha)


def build_state(config: RunConfig, bq: Backend, bp: Backend):
    spec = config.state
    weights = build_weights(config, bq.dim, bp.dim)
    try:
        if spec.kind == "cm-point":
            return cm_point_state(
                bq, bp, spec.k, spec.l, weights.c_q, weights.c_p
            )
        psi_q = _factor_state(bq, spec)
        psi_p = _factor_state(bp, spec)
        return lift_qm_eigenstate(psi_q, weights, psi_p=psi_p)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _lambda_of(h: float, h_o: float) -> Fraction:
    lam = 1 - Fraction(str(h)) / Fraction(str(h_o))
    if not 0 <= lam <= 1:
        raise ConfigError(f"h value {h!r} maps outside the unit interval")
    return lam


def _generator_pair(config: RunConfig, family: str, h: float):
    gens = make_generators()
    if family == "qm":
        return gens.q_qm, gens.p_qm
    if family == "cm":
        return gens.q_cm, gens.p_cm
    lam = _lambda_of(h, config.h_o)
    return (
        substitute_lambda(gens.q_tilde, lam),
        substitute_lambda(gens.p_tilde, lam),
    )


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


# -- subcommands -----------------------------------------------------------


def cmd_verify(config: RunConfig, out_dir: str, fmt: str = "json") -> int:
    report = run_verify(
        hbar=config.hbar,
        h_o=config.h_o,
        seed=config.seed,
        fault_injection=config.fault_injection,
    )
    _print_verify(report)
    os.makedirs(out_dir, exist_ok=True)
    if fmt == "csv":
        path = os.path.join(out_dir, "verify_report.csv")
        _write_verify_csv(report, path)
    else:
        path = os.path.join(out_dir, "verify_report.json")
        _write_json(path, report.to_payload())
    print(f"report written to {path}")
    return 0 if report.all_passed else 1


def _print_verify(report: VerifyReport) -> None:
    for check in report.checks:
        tag = "INFO" if check.informational else check.status.upper()
        line = f"{tag:4s} {check.name}: {check.witness}"
        if check.note:
            line += f" [{check.note}]"
        print(line)
    verdict = "all checks passed" if report.all_passed else "FAILURES present"
    print(f"verify: {verdict}")


def _write_verify_csv(report: VerifyReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["name", "status", "informational", "witness", "note"])
        for c in report.checks:
            writer.writerow(
                [c.name, c.status, str(c.informational).lower(), c.witness, c.note or ""]
            )


def cmd_sweep(config: RunConfig, out_dir: str, fmt: str = "csv") -> int:
    bq, bp = build_backends(config)
    state = build_state(config, bq, bp)
    gens = make_generators()
    node = parse_expr(config.observable)
    q_qm_mat = realize(gens.q_qm, bq, bp)
    p_qm_mat = realize(gens.p_qm, bq, bp)
    q_cm_mat = realize(gens.q_cm, bq, bp)
    p_cm_mat = realize(gens.p_cm, bq, bp)

    rows = []
    for h in config.h_values:
        lam = _lambda_of(h, config.h_o)
        qt = substitute_lambda(gens.q_tilde, lam)
        pt = substitute_lambda(gens.p_tilde, lam)
        q_mat = realize(qt, bq, bp)
        p_mat = realize(pt, bq, bp)
        obs_mat = realize(eval_ncpoly(node, qt, pt), bq, bp)
        defect = commutator_defect(bq, bp, qt, pt)
        try:
            row = {
                "h": h,
                "lambda": float(lam),
                "mean_q_tilde": mean_value(state, q_mat),
                "mean_p_tilde": mean_value(state, p_mat),
                "mean_observable": mean_value(state, obs_mat),
                "bulk_commutator_defect": defect["bulk_defect_norm"],
            }
        except ValueError as exc:
            raise ConfigError(
                f"cannot evaluate means at h={h!r}: {exc}"
            ) from exc
        if h == config.h_o:
            row["endpoint_q_diff"] = float(np.max(np.abs(q_mat.data - q_qm_mat.data)))
            row["endpoint_p_diff"] = float(np.max(np.abs(p_mat.data - p_qm_mat.data)))
        elif h == 0.0:
            row["endpoint_q_diff"] = float(np.max(np.abs(q_mat.data - q_cm_mat.data)))
            row["endpoint_p_diff"] = float(np.max(np.abs(p_mat.data - p_cm_mat.data)))
        else:
            row["endpoint_q_diff"] = None
            row["endpoint_p_diff"] = None
        rows.append(row)

    os.makedirs(out_dir, exist_ok=True)
    columns = [
        "h", "lambda", "mean_q_tilde", "mean_p_tilde", "mean_observable",
        "bulk_commutator_defect", "endpoint_q_diff", "endpoint_p_diff",
    ]
    if fmt == "json":
        path = os.path.join(out_dir, "sweep.json")
        _write_json(path, {"columns": columns, "rows": rows})
    else:
        path = os.path.join(out_dir, "sweep.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(columns) + "\n")
            for row in rows:
                rendered = [
                    "" if row[c] is None else format_float(row[c]) for c in columns
                ]
                fh.write(",".join(rendered) + "\n")
    print(f"sweep written to {path}")
    return 0


def cmd_kernels(config: RunConfig, out_dir: str, fmt: str = "csv") -> int:
    if len(config.h_values) != 1:
        raise ConfigError(
            "kernels needs exactly one h value (use --h or a single-entry"
            f" h_values); got {len(config.h_values)}"
        )
    h = config.h_values[0]
    bq, bp = build_backends(config)
    x, y = _generator_pair(config, config.family, h)
    node = parse_expr(config.observable)
    mat = realize(eval_ncpoly(node, x, y), bq, bp)
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for i in "qp":
        for j in "qp":
            block = kernel_block(mat, i, j)
            path = os.path.join(out_dir, f"kernel_{i}{j}.csv")
            export_kernel_csv(block, path)
            written.append(path)
    meta = {
        "h": h,
        "lambda": float(_lambda_of(h, config.h_o)) if config.family == "tilde" else None,
        "family": config.family,
        "observable": config.observable,
        "hbar": config.hbar,
        "dims": [bq.dim, bp.dim, 2],
        "ordering": mat.ordering,
        "backend_q": config.backend_q.kind,
        "backend_p": config.backend_p.kind,
    }
    meta_path = os.path.join(out_dir, "kernels_meta.json")
    _write_json(meta_path, meta)
    written.append(meta_path)
    if config.export_matrix:
        matrix_path = os.path.join(out_dir, "matrix.bin")
        export_matrix(
            mat,
            matrix_path,
            {"q": config.backend_q.kind, "p": config.backend_p.kind},
            config.hbar,
        )
        written.append(matrix_path)
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_evolve(config: RunConfig, out_dir: str, fmt: str = "csv") -> int:
    ds = config.dynamics
    if len(config.h_values) == 1:
        h = config.h_values[0]
        if h != 0.0 and h != config.h_o:
            raise ConfigError(
                f"no dynamics defined at intermediate h (h={h!r},"
                f" h_o={config.h_o!r}); only the endpoints evolve"
            )
    os.makedirs(out_dir, exist_ok=True)
    if ds.mode == "compare":
        params = dyn.OscillatorParams(
            q0=ds.q0,
            p0=ds.p0,
            hbar=config.hbar,
            sigma=ds.sigma,
            n_grid=ds.n_grid,
            n_fock=ds.n_fock,
            length=ds.length,
            dt=ds.dt,
            period_count=ds.period_count,
            record_stride=ds.record_stride,
        )
        table = dyn.oscillator_compare(params)
        path = os.path.join(out_dir, "comparison.csv")
        table.to_csv(path)
        _write_json(
            os.path.join(out_dir, "evolve_meta.json"),
            {
                "mode": "compare",
                "hbar": config.hbar,
                "q0": ds.q0,
                "p0": ds.p0,
                "sigma": params.width(),
                "n_grid": ds.n_grid,
                "n_fock": ds.n_fock,
                "length": ds.length,
                "dt": ds.dt,
                "period_count": ds.period_count,
                "record_stride": ds.record_stride,
                "max_dq_abs": table.max_dq_abs(),
                "max_dp_abs": table.max_dp_abs(),
                "classical_mass_drift": table.classical_mass_drift(),
                "quantum_trace_drift": table.quantum_trace_drift(),
            },
        )
        print(f"comparison written to {path}")
        return 0

    if len(config.h_values) != 1:
        raise ConfigError(
            "evolve needs exactly one h value (use --h or a single-entry"
            " h_values)"
        )
    h = config.h_values[0]
    steps = ds.steps
    if steps is None:
        steps = max(1, round(2.0 * np.pi * ds.period_count / ds.dt))
    if h == 0.0:
        sigma = ds.sigma if ds.sigma is not None else float(np.sqrt(config.hbar / 2.0))
        rho0 = dyn.PhaseSpaceDensity.gaussian(
            ds.n_grid, ds.n_grid, ds.length, ds.length,
            ds.q0, ds.p0, sigma, sigma,
        )
        traj = dyn.liouville_evolve(
            rho0, config.observable, ds.dt, steps, record_stride=ds.record_stride
        )
        label = "liouville"
    elif h == config.h_o:
        bq, bp = build_backends(config)
        state = build_state(config, bq, bp)
        gens = make_generators()
        node = parse_expr(config.observable)
        h_matrix = realize(eval_ncpoly(node, gens.q_qm, gens.p_qm), bq, bp)
        try:
            traj = dyn.von_neumann_evolve(
                state,
                h_matrix,
                ds.dt,
                steps,
                config.hbar,
                realize(gens.q_qm, bq, bp),
                realize(gens.p_qm, bq, bp),
                record_stride=ds.record_stride,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        label = "von-neumann"
    else:
        raise ConfigError(
            f"no dynamics defined at intermediate h (h={h!r}, h_o={config.h_o!r});"
            " only the endpoints evolve"
        )
    path = os.path.join(out_dir, "trajectory.csv")
    traj.to_csv(path)
    _write_json(
        os.path.join(out_dir, "evolve_meta.json"),
        {
            "mode": label,
            "h": h,
            "hbar": config.hbar,
            "dt": ds.dt,
            "steps": steps,
            "record_stride": ds.record_stride,
            "final_drift": traj.drift(),
        },
    )
    print(f"trajectory written to {path}")
    return 0


# -- argument parsing ------------------------------------------------------


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="path to a JSON run configuration")
    parser.add_argument("--out", default="qclab-out", help="output directory")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument(
        "--h", type=float, help="override h_values with a single value"
    )
    parser.add_argument("--expr", help="override the observable expression")
    parser.add_argument(
        "--format", choices=("csv", "json"), help="output format where applicable"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qclab",
        description=(
            "exact and finite-dimensional laboratory for an interpolating"
            " quantum/classical operator algebra"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("verify", "run the identity, defect, and state check suites"),
        ("sweep", "tabulate interpolating-pair means across h values"),
        ("kernels", "dump r-factor kernel blocks of a realized observable"),
        ("evolve", "run endpoint dynamics or the oscillator comparison"),
    ):
        p = sub.add_parser(name, help=help_text)
        _common_flags(p)
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    config = (
        RunConfig.from_json_file(args.config) if args.config else RunConfig()
    )
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    if args.h is not None:
        config = replace(config, h_values=(args.h,))
    if args.expr is not None:
        config = replace(config, observable=args.expr)
    config.validate()
    return config


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    default_fmt = "json" if args.command == "verify" else "csv"
    fmt = args.format or default_fmt
    try:
        config = load_config(args)
        if args.command == "verify":
            return cmd_verify(config, args.out, fmt)
        if args.command == "sweep":
            return cmd_sweep(config, args.out, fmt)
        if args.command == "kernels":
            return cmd_kernels(config, args.out, fmt)
        if args.command == "evolve":
            return cmd_evolve(config, args.out, fmt)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ExprError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
