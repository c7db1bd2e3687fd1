"""Command-line interface.

Four subcommands: ``cells``, ``homology``, ``morse``, ``simulate``.
Each prints a human summary to stdout and writes machine artifacts to
the paths given by flags; ``--output -`` replaces the summary with the
JSON artifact on stdout.  Identical configurations produce byte
identical output.  Exit code 0 means every requested computation
finished and all internal consistency checks passed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import report
from .cells import build_chain_complex, cell_count_formula
from .errors import ConfigError, RankGateError, TodatopoError
from .homology import homology_of
from .lie import cartan_matrix, generate_weyl_group
from .morse import (
    SIGMA_INTERPRETATIONS,
    betti_one,
    conjectured_betti,
    morse_complex,
    morse_smale_edges,
    label,
    index,
    poincare_polynomial,
    principal_graph,
    toda_graph,
)
from .signs import parse_sign_string, sign_string
from .toda import DEFAULT_THRESHOLD, TodaState, integrate

MORSE_RANK_GATE = 3


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by the subcommands."""

    command: str
    type_label: str = "A"
    rank: int = 1
    signs: tuple = ()
    t_max: float = 5.0
    dt: float = 1e-3
    threshold: float = DEFAULT_THRESHOLD
    fmt: str = "csv"
    output: str | None = None
    sigma: str = "value"
    override_rank_gate: bool = False


def _emit(text: str, path: str | None) -> None:
    if path is None:
        return
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _build_group(config: RunConfig):
    return generate_weyl_group(cartan_matrix(config.type_label, config.rank))


def cmd_cells(args) -> int:
    config = RunConfig(
        "cells", args.type, args.rank, fmt=args.format, output=args.output
    )
    W = _build_group(config)
    cx = build_chain_complex(W)
    counts = cx.ranks()
    for k in range(W.rank, -1, -1):
        if counts[k] != cell_count_formula(W, W.rank - k):
            raise ConfigError("cell counts disagree with the closed formula")
    if config.output != "-":
        for k, c in enumerate(counts):
            print(f"dim {k}: {c} cells")
        print(f"Euler characteristic: {cx.euler_characteristic()}")
    if config.fmt == "json":
        artifact = report.dump_json(
            report.cells_json_obj(config.type_label, config.rank, cx)
        )
    else:
        artifact = report.cells_csv(cx)
    _emit(artifact, config.output)
    if args.boundaries:
        _emit(report.boundaries_csv(cx), args.boundaries)
    return 0


def cmd_homology(args) -> int:
    config = RunConfig("homology", args.type, args.rank, output=args.output)
    W = _build_group(config)
    cx = build_chain_complex(W)
    groups = homology_of(cx)
    euler_cells = cx.euler_characteristic()
    euler_ranks = sum((-1) ** k * g.free_rank for k, g in enumerate(groups))
    if euler_cells != euler_ranks:
        raise ConfigError("Euler characteristic mismatch between cells and homology")
    if config.output != "-":
        for line in report.homology_lines(groups):
            print(line)
    _emit(
        report.dump_json(report.homology_json_obj(config.type_label, config.rank, groups)),
        config.output,
    )
    return 0


def _morse_gated(config: RunConfig) -> None:
    if config.type_label == "A" and config.rank <= MORSE_RANK_GATE:
        return
    if config.override_rank_gate:
        print(
            "note: Morse-complex output beyond type A rank "
            f"{MORSE_RANK_GATE} is unvalidated; the transversal edge set may "
            "fail the square-zero check",
            file=sys.stderr,
        )
        return
    raise RankGateError(
        "Morse-complex output is validated only for type A up to rank "
        f"{MORSE_RANK_GATE}; pass --override-rank-gate to compute anyway"
    )


def cmd_morse(args) -> int:
    config = RunConfig(
        "morse",
        args.type,
        args.rank,
        output=args.output,
        sigma=args.sigma,
        override_rank_gate=args.override_rank_gate,
    )
    selectors = args.poincare or args.betti1 or args.conjecture
    is_a = config.type_label == "A"
    if selectors and not is_a:
        raise ConfigError("--poincare/--betti1/--conjecture apply to type A only")
    obj: dict = {
        "schema_version": report.SCHEMA_VERSION,
        "type": config.type_label,
        "rank": config.rank,
    }
    lines: list[str] = []
    if selectors:
        if args.poincare:
            coeffs = poincare_polynomial(config.rank)
            obj["poincare"] = {"coefficients": list(coeffs), "string": report.poly_str(coeffs)}
            lines.append(f"principal-cell polynomial: {report.poly_str(coeffs)}")
        if args.betti1:
            b1 = betti_one(config.rank)
            obj["betti1"] = b1
            lines.append(f"betti_1 = {b1}")
        if args.conjecture:
            table = _betti_table(config.rank)
            obj["betti_table"] = table
            for row in table:
                tag = " (conjecture)" if row["conjecture"] else ""
                lines.append(f"betti_{row['k']} = {row['value']}{tag}")
    else:
        _morse_gated(config)
        W = _build_group(config)
        obj["sigma_interpretation"] = config.sigma
        obj["critical_points"] = [
            {"word": report.word_list(w), "label": label(w), "index": index(w)}
            for w in W.elements
        ]
        counts = [0] * (W.rank + 1)
        for w in W.elements:
            counts[index(w)] += 1
        obj["index_counts"] = counts
        graph = toda_graph(W)
        obj["toda_graph"] = {"vertices": len(graph.vertices), "edges": len(graph.edges)}
        edges = morse_smale_edges(W, config.sigma)
        obj["morse_smale_edges"] = [
            {
                "source": report.word_list(e.source),
                "target": report.word_list(e.target),
                "incidence": e.incidence,
            }
            for e in edges
        ]
        cx = morse_complex(W, config.sigma)
        groups = homology_of(cx)
        obj["morse_homology"] = [
            {"degree": k, "free_rank": g.free_rank, "torsion": list(g.torsion)}
            for k, g in enumerate(groups)
        ]
        lines.append(f"critical points: {len(W)}; toda edges: {len(graph.edges)}")
        lines.extend("morse " + s for s in report.homology_lines(groups))
        if is_a:
            coeffs = poincare_polynomial(config.rank)
            obj["poincare"] = {"coefficients": list(coeffs), "string": report.poly_str(coeffs)}
            obj["betti1"] = betti_one(config.rank)
            obj["betti_table"] = _betti_table(config.rank)
            pg = principal_graph(config.rank)
            obj["principal_components"] = [
                {"seed": list(seed), "cube_dim": pg.seed_cube_dim(seed), "label": pg.seed_label(seed)}
                for seed in pg.seeds
            ]
            lines.append(f"principal-cell polynomial: {report.poly_str(coeffs)}")
            lines.append(f"betti_1 = {obj['betti1']}")
        if args.toda_dot:
            _emit(report.toda_graph_dot(graph), args.toda_dot)
        if args.morse_dot:
            _emit(report.morse_graph_dot(W, edges), args.morse_dot)
    if config.output != "-":
        for line in lines:
            print(line)
    _emit(report.dump_json(obj), config.output)
    return 0


def _betti_table(l: int) -> list:
    table = []
    for k in range(1, l + 1):
        value = betti_one(l) if k == 1 else conjectured_betti(l, k)
        table.append({"k": k, "value": value, "conjecture": k > 1})
    return table


def cmd_simulate(args) -> int:
    signs = parse_sign_string(args.signs)
    config = RunConfig(
        "simulate",
        args.type,
        args.rank,
        signs=signs,
        t_max=args.tmax,
        dt=args.dt,
        threshold=args.threshold,
        output=args.output,
    )
    if config.type_label != "A":
        raise ConfigError("the integrator implements the A-series matrix form only")
    l = config.rank
    if len(signs) != l:
        raise ConfigError(f"sign string length {len(signs)} does not match rank {l}")
    a0 = _parse_floats(args.a0, l, "a0") if args.a0 else (0.0,) * l
    if args.b0:
        b0 = _parse_floats(args.b0, l, "b0")
        got = tuple(1 if x > 0 else -1 for x in b0)
        if got != signs:
            raise ConfigError("b0 signs disagree with --signs")
    else:
        b0 = tuple(float(e) for e in signs)
    state = TodaState(a0, b0)
    from .toda import eigenvalues

    ev0 = eigenvalues(state)
    traj = integrate(state, config.t_max, config.dt, threshold=config.threshold)
    evf = eigenvalues(traj.final_state())
    drift = traj.max_invariant_drift()
    eig_drift = float(max(abs(evf - ev0))) if len(evf) == len(ev0) else float("nan")
    summary = {
        "schema_version": report.SCHEMA_VERSION,
        "n": state.n,
        "signs": sign_string(signs),
        "t_max": config.t_max,
        "dt": config.dt,
        "threshold": config.threshold,
        "steps": len(traj.times) - 1,
        "blowup_time": traj.blowup.time if traj.blowup else None,
        "blowup_coordinate": traj.blowup.coordinate if traj.blowup else None,
        "max_invariant_drift": drift,
        "initial_invariants": [float(x) for x in traj.invariants[0]],
        "final_invariants": [float(x) for x in traj.invariants[-1]],
        "final_eigenvalues": [[float(e.real), float(e.imag)] for e in evf],
        "max_eigenvalue_drift": eig_drift,
    }
    if config.output != "-":
        if traj.blowup:
            print(f"blow-up at t = {traj.blowup.time:.6f} ({traj.blowup.coordinate})")
        else:
            print(f"no blow-up over [0, {config.t_max}]")
        print(f"max invariant drift: {drift:.3e}")
    if args.trajectory:
        _emit(report.trajectory_csv(traj), args.trajectory)
    _emit(report.dump_json(summary), config.output)
    return 0


def _parse_floats(text: str, want: int, name: str) -> tuple:
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"--{name} must be a comma-separated float list") from None
    if len(vals) != want:
        raise ConfigError(f"--{name} needs {want} values, got {len(vals)}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="todatopo",
        description=(
            "Cell decompositions, integral homology, Morse data and Lax-flow "
            "checks for compactified Toda isospectral manifolds."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", default="A", help="simple type letter A..G")
        p.add_argument("--rank", type=int, required=True)
        p.add_argument(
            "--output",
            default=None,
            help="artifact path; '-' prints the JSON artifact to stdout",
        )

    p = sub.add_parser("cells", help="enumerate the cell decomposition")
    common(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--boundaries", default=None, help="sparse-triplet CSV path")
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("homology", help="integral homology of the cell complex")
    common(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("morse", help="Morse graph, complex and Betti data")
    common(p)
    p.add_argument("--poincare", action="store_true", help="principal-cell polynomial only")
    p.add_argument("--betti1", action="store_true", help="first Betti number only")
    p.add_argument("--conjecture", action="store_true", help="Betti table only")
    p.add_argument("--sigma", choices=SIGMA_INTERPRETATIONS, default="value")
    p.add_argument("--override-rank-gate", action="store_true")
    p.add_argument("--toda-dot", default=None, help="DOT path for the Toda graph")
    p.add_argument("--morse-dot", default=None, help="DOT path for the Morse-Smale graph")
    p.set_defaults(func=cmd_morse)

    p = sub.add_parser("simulate", help="integrate the Lax flow")
    common(p)
    p.add_argument("--signs", required=True, help="sign sector, e.g. ++- ")
    p.add_argument("--tmax", type=float, default=5.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--a0", default=None, help="comma-separated initial a values")
    p.add_argument("--b0", default=None, help="comma-separated initial b values")
    p.add_argument("--trajectory", default=None, help="CSV path for the trajectory")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TodatopoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
