"""Command-line interface: coefficient tables, critical depth, curves and validation."""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from typing import Any, Callable, Sequence

import click

from .crosscheck import coefficient_records
from .decoupling import critical_depth, decouple
from .depth import make_depth_context
from .errors import PreconditionError, SolverError
from .floquet import M_DEFAULT, validate_predictions
from .spectrum import figure8 as figure8_samples
from .spectrum import stability_region

EXIT_OK, EXIT_PRECONDITION, EXIT_SOLVER, EXIT_GATE = 0, 2, 3, 4


class GateFailure(Exception):
    """A validation gate was violated."""


def fmt(x: float) -> str:
    """Seventeen significant digits, enough to round-trip a double."""
    return format(float(x) + 0.0, ".17g")


def worker_count() -> int:
    cap = os.environ.get("BF_NUM_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError as exc:
            raise PreconditionError(f"BF_NUM_THREADS={cap!r} is not an integer") from exc
    return n


def read_config(path: str | None) -> dict[str, str]:
    """Parse a ``key=value`` file; blank lines and ``#`` comments are ignored."""
    if not path:
        return {}
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise PreconditionError(f"malformed config line: {line!r}")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def apply_config(params: dict[str, Any], path: str | None) -> dict[str, Any]:
    """Overlay config-file values on command-line parameters, coercing to their types."""
    conf = read_config(path)
    merged = dict(params)
    for key, raw in conf.items():
        if key not in merged:
            raise PreconditionError(f"unknown config key {key!r}")
        current = merged[key]
        if isinstance(current, bool):
            merged[key] = raw.lower() in ("1", "true", "yes")
        elif isinstance(current, int):
            merged[key] = int(raw)
        elif isinstance(current, float):
            merged[key] = float(raw)
        else:
            merged[key] = raw
    return merged


def parse_grid(spec: str) -> tuple[int, int]:
    try:
        nh, ne = (int(s) for s in spec.lower().split("x"))
    except ValueError as exc:
        raise PreconditionError(f"grid must look like HxE, got {spec!r}") from exc
    if nh < 2 or ne < 2:
        raise PreconditionError("grid sizes must be at least 2")
    return nh, ne


def render_table(rows: Sequence[dict[str, Any]], columns: Sequence[str], kind: str) -> str:
    if kind == "json":
        return json.dumps([{k: r[k] for k in columns} for r in rows], indent=2) + "\n"
    if kind == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([fmt(r[k]) if isinstance(r[k], float) else r[k] for k in columns])
        return buf.getvalue()
    raise PreconditionError(f"format {kind!r} is not available for this table")


def render_svg(curves: dict[str, list[tuple[float, float]]], xlabel: str, ylabel: str) -> str:
    """Plain polyline rendering of one or more curves on shared axes."""
    pts = [p for c in curves.values() for p in c]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    x1 = x1 if x1 > x0 else x0 + 1.0
    y1 = y1 if y1 > y0 else y0 + 1.0
    W, H, pad = 640, 480, 50
    sx = lambda x: pad + (x - x0) / (x1 - x0) * (W - 2 * pad)  # noqa: E731
    sy = lambda y: H - pad - (y - y0) / (y1 - y0) * (H - 2 * pad)  # noqa: E731
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}">',
             f'<rect x="{pad}" y="{pad}" width="{W - 2 * pad}" height="{H - 2 * pad}" '
             'fill="none" stroke="black"/>',
             f'<text x="{W / 2}" y="{H - 10}" text-anchor="middle">{xlabel}</text>',
             f'<text x="15" y="{H / 2}" text-anchor="middle" '
             f'transform="rotate(-90 15 {H / 2})">{ylabel}</text>']
    for i, (name, curve) in enumerate(curves.items()):
        path = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in curve)
        parts.append(f'<polyline fill="none" stroke="{colors[i % len(colors)]}" '
                     f'points="{path}"><title>{name}</title></polyline>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def guarded(fn: Callable[..., None]) -> Callable[..., None]:
    """Map library errors to the documented exit codes."""
    def run(*args: Any, **kwargs: Any) -> None:
        try:
            fn(*args, **kwargs)
        except PreconditionError as exc:
            click.echo(f"precondition: {exc}", err=True)
            sys.exit(EXIT_PRECONDITION)
        except SolverError as exc:
            click.echo(f"solver failure: {exc}", err=True)
            sys.exit(EXIT_SOLVER)
        except GateFailure as exc:
            click.echo(f"validation gate: {exc}", err=True)
            sys.exit(EXIT_GATE)
        except OSError as exc:
            click.echo(f"io: {exc}", err=True)
            sys.exit(EXIT_PRECONDITION)
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


FORMAT = click.option("--format", "fmt_", type=click.Choice(["csv", "json", "svg"]),
                      default="csv", show_default=True)
OUT = click.option("--out", type=click.Path(dir_okay=False), default=None,
                   help="Output file (stdout when omitted).")
CONFIG = click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
                      help="key=value file whose entries override flags.")


@click.group()
def main() -> None:
    """Benjamin-Feir stability analysis of finite-depth Stokes waves."""


@main.command()
@click.option("--depth", type=float, default=1.5, show_default=True)
@click.option("--precision", type=click.Choice(["std", "extended"]), default="extended",
              show_default=True)
@FORMAT
@OUT
@CONFIG
@guarded
def coeffs(depth: float, precision: str, fmt_: str, out: str | None, config: str | None) -> None:
    """Closed-form and derived values of every coefficient at one depth."""
    p = apply_config({"depth": depth, "precision": precision, "format": fmt_, "out": out},
                     config)
    ctx = make_depth_context(p["depth"])
    rows = [{"group": r.group, "name": r.name, "closed": r.closed, "assembled": r.assembled,
             "abs_diff": r.abs_diff} for r in coefficient_records(ctx, p["precision"])]
    emit(render_table(rows, ["group", "name", "closed", "assembled", "abs_diff"], p["format"]),
         p["out"])


@main.command("critical-depth")
@guarded
def critical_depth_cmd() -> None:
    """Print the critical depth and the quartic coefficient there."""
    h = critical_depth()
    click.echo(fmt(h))
    click.echo(fmt(decouple(make_depth_context(h)).eta_wb))


@main.command()
@click.option("--depth", type=float, default=None, help="Defaults to the critical depth.")
@click.option("--eps", type=float, default=0.02, show_default=True)
@click.option("--samples", type=int, default=64, show_default=True)
@FORMAT
@OUT
@CONFIG
@guarded
def figure8(depth: float | None, eps: float, samples: int, fmt_: str, out: str | None,
            config: str | None) -> None:
    """Predicted unstable eigenvalue branches across the unstable window."""
    p = apply_config({"depth": depth if depth is not None else "", "eps": eps,
                      "samples": samples, "format": fmt_, "out": out}, config)
    h = float(p["depth"]) if p["depth"] not in ("", None) else critical_depth()
    ctx = make_depth_context(h)
    data = figure8_samples(ctx, decouple(ctx), float(p["eps"]), int(p["samples"]))
    rows = [{"mu": mu, "re_plus": lp.real, "im_plus": lp.imag, "re_minus": lm.real,
             "im_minus": lm.imag} for mu, lp, lm in data]
    if p["format"] == "svg":
        curves = {"plus": [(r["re_plus"], r["im_plus"]) for r in rows],
                  "minus": [(r["re_minus"], r["im_minus"]) for r in rows[::-1]]}
        emit(render_svg(curves, "Re lambda", "Im lambda"), p["out"])
        return
    emit(render_table(rows, ["mu", "re_plus", "im_plus", "re_minus", "im_minus"], p["format"]),
         p["out"])


@main.command()
@click.option("--grid", "grid_", default="16x16", show_default=True, help="HxE cell counts.")
@click.option("--eps", type=float, default=0.05, show_default=True, help="Largest amplitude.")
@click.option("--depth-min", type=float, default=1.0, show_default=True)
@click.option("--depth-max", type=float, default=2.0, show_default=True)
@FORMAT
@OUT
@CONFIG
@guarded
def region(grid_: str, eps: float, depth_min: float, depth_max: float, fmt_: str,
           out: str | None, config: str | None) -> None:
    """Sign map of the discriminant on an (h, eps) grid plus the boundary curve."""
    p = apply_config({"grid": grid_, "eps": eps, "depth_min": depth_min,
                      "depth_max": depth_max, "format": fmt_, "out": out}, config)
    reg = stability_region((p["depth_min"], p["depth_max"]), p["eps"], parse_grid(p["grid"]),
                           workers=worker_count())
    boundary = [{"eps": e, "h_boundary": h} for e, h in reg.boundary]
    cells = [{"h": float(h), "eps": float(e), "sign": int(reg.signs[i, j])}
             for i, h in enumerate(reg.depths) for j, e in enumerate(reg.amplitudes)]
    if p["format"] == "svg":
        emit(render_svg({"boundary": [(b["h_boundary"], b["eps"]) for b in boundary]},
                        "h", "eps"), p["out"])
    elif p["format"] == "json":
        emit(json.dumps({"boundary": boundary, "cells": cells,
                         "fitted_coefficient": reg.fitted_coefficient,
                         "predicted_coefficient": reg.predicted_coefficient}, indent=2) + "\n",
             p["out"])
    else:
        text = render_table(boundary, ["eps", "h_boundary"], "csv") + "\n" \
            + render_table(cells, ["h", "eps", "sign"], "csv")
        emit(text, p["out"])


@main.command()
@click.option("--depth", "depths", type=float, multiple=True,
              help="Depths to sweep (repeatable); default 1.5 and 2.0.")
@click.option("--eps", "eps_list", type=float, multiple=True,
              help="Amplitudes (repeatable); default 0.005 and 0.01.")
@click.option("--mu", "mu_fractions", type=float, multiple=True,
              help="Fractions of the unstable window (repeatable); default 0.25 0.5 0.75.")
@click.option("--modes", type=int, default=M_DEFAULT, show_default=True)
@click.option("--gate", type=float, default=0.15, show_default=True)
@FORMAT
@OUT
@CONFIG
@guarded
def validate(depths: tuple[float, ...], eps_list: tuple[float, ...],
             mu_fractions: tuple[float, ...], modes: int, gate: float, fmt_: str,
             out: str | None, config: str | None) -> None:
    """Compare oracle eigenvalues with the predictions; exit 4 on a gate violation."""
    p = apply_config({"depth": ",".join(map(str, depths or (1.5, 2.0))),
                      "eps": ",".join(map(str, eps_list or (0.005, 0.01))),
                      "mu": ",".join(map(str, mu_fractions or (0.25, 0.5, 0.75))),
                      "modes": modes, "gate": gate, "format": fmt_, "out": out}, config)
    floats = lambda s: [float(x) for x in str(s).split(",") if x.strip()]  # noqa: E731
    rep = validate_predictions(floats(p["depth"]), floats(p["eps"]), floats(p["mu"]),
                               M=int(p["modes"]), gate=float(p["gate"]),
                               workers=worker_count())
    rows = [vars(r) for r in rep.rows]
    cols = ["h", "eps", "mu", "label", "re_pred", "re_oracle", "im_pred", "im_oracle",
            "rel_err"]
    rows = [{k: (float(v) if isinstance(v, float) else v) for k, v in r.items()} for r in rows]
    emit(render_table(rows, cols, p["format"]), p["out"])
    if not rep.ok:
        raise GateFailure(f"{len(rep.violations)} comparisons above rel_err {rep.gate}")


if __name__ == "__main__":  # pragma: no cover
    main()
