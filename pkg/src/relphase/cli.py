"""Command-line front door: build states, run the measurements, emit CSV/JSON.

State mini-language:
  num:n       number state |n>
  coh:N       coherent state of mean photon number N (alpha = sqrt(N), real)
  xnum:n      n x-polarized photons (two-mode, circular basis)
  xcoh:N      x-polarized coherent excitation of mean N
  xsup:n1,w1;n2,w2   weighted superposition of x-polarized number states
  file:path   JSON state document (kind "single" or "two")

Exit codes: 0 success, 2 usage error, 3 numerical precondition violation.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .errors import RelphaseError
from .fock import (
    PrimitiveConvention,
    SingleModeState,
    TwoModeState,
    make_coherent_state,
    make_number_state,
    single_to_two_mode,
    state_from_json,
    to_jm,
)
from .naimark import heterodyne_moments, y_moments
from .pegg_barnett import pb_convergence, pb_pmf
from .phase import phase_pdf, phase_wavefunction
from .polarization import XCoherent, XNumber, XSuperposition, db_view, to_circular
from .pom import absolute_time_pdf, marginal_pdf, snapshot_sweep, time_grid_size

STATE_FORMAT_VERSION = 1


class SpecError(ValueError):
    """Malformed state/polarization spec string (usage error)."""


def _float(token: str, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise SpecError(f"bad {what} {token!r}") from None


def _int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise SpecError(f"bad {what} {token!r}") from None


def parse_single_spec(text: str, n_max: int | None, tail_tol: float) -> SingleModeState:
    kind, _, rest = text.partition(":")
    if kind == "num":
        n = _int(rest, "photon number")
        return make_number_state(n, n_max if n_max is not None else n)
    if kind == "coh":
        mean = _float(rest, "mean photon number")
        if mean < 0:
            raise SpecError(f"negative mean photon number {rest!r}")
        return make_coherent_state(math.sqrt(mean), n_max, tail_tol)
    if kind == "file":
        state = state_from_json(_read(rest))
        if not isinstance(state, SingleModeState):
            raise SpecError(f"{rest!r} holds a two-mode state; this command needs a single mode")
        return state
    raise SpecError(f"unknown state spec {text!r}")


def parse_pol_spec(text: str, n_max: int | None, tail_tol: float) -> TwoModeState:
    kind, _, rest = text.partition(":")
    if kind == "xnum":
        return to_circular(XNumber(_int(rest, "photon number")), n_max, tail_tol)
    if kind == "xcoh":
        mean = _float(rest, "mean photon number")
        if mean < 0:
            raise SpecError(f"negative mean photon number {rest!r}")
        return to_circular(XCoherent(mean), n_max, tail_tol)
    if kind == "xsup":
        terms = []
        for part in rest.split(";"):
            pieces = part.split(",")
            if len(pieces) != 2:
                raise SpecError(f"bad superposition term {part!r}")
            try:
                weight = complex(pieces[1])
            except ValueError:
                raise SpecError(f"bad weight {pieces[1]!r}") from None
            terms.append((_int(pieces[0], "photon number"), weight))
        return to_circular(XSuperposition(tuple(terms)), n_max, tail_tol)
    if kind == "file":
        state = state_from_json(_read(rest))
        if isinstance(state, SingleModeState):
            state = single_to_two_mode(state)
        return state
    raise SpecError(f"unknown polarization spec {text!r}")


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    """Write atomically (temp file + rename); '-' or None means stdout."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".relphase-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _table(header: Sequence[str], rows: Iterable[Sequence[float]], fmt: str) -> str:
    if fmt == "json":
        doc = {"columns": list(header), "rows": [[float(v) for v in r] for r in rows]}
        return json.dumps(doc) + "\n"
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in r) for r in rows)
    return "\n".join(lines) + "\n"


def cmd_phase(args) -> int:
    state = parse_single_spec(args.state, args.n_max, args.tail_tol)
    pdf = phase_pdf(state, args.k)
    _write(args.out, _table(("phi", "density"), zip(pdf.phi, pdf.density), args.format))
    return 0


def cmd_pb(args) -> int:
    state = parse_single_spec(args.state, args.n_max, args.tail_tol)
    s_values = [_int(tok, "truncation") for tok in args.s.split(",") if tok]
    if not s_values:
        raise SpecError("need at least one truncation in --s")
    rows = []
    for s in s_values:
        pmf = pb_pmf(state, s)
        rows.extend((s, th, mass) for th, mass in zip(pmf.theta, pmf.masses))
    _write(args.out, _table(("s", "theta", "mass"), rows, args.format))
    if args.report is not None:
        distances = pb_convergence(state, s_values)
        doc = [{"s": s, "distance": d} for s, d in zip(s_values, distances)]
        _write(args.report, json.dumps(doc) + "\n")
    return 0


def cmd_moments(args) -> int:
    state = parse_single_spec(args.state, args.n_max, args.tail_tol)
    report = {}
    report.update(heterodyne_moments(state).as_dict())
    report.update(y_moments(state).as_dict())
    _write(args.out, json.dumps(report, sort_keys=True) + "\n")
    return 0


def _pol_jm(args):
    state = parse_pol_spec(args.pol, args.n_max, args.tail_tol)
    return to_jm(state, PrimitiveConvention.PHOTONIC)


def cmd_sweep(args) -> int:
    jm = _pol_jm(args)
    if args.kt < time_grid_size(jm):
        raise RelphaseError(
            f"time grid {args.kt} is below the configured minimum {time_grid_size(jm)}"
        )
    times = np.linspace(0.0, np.pi, args.kt)
    slices = snapshot_sweep(jm, times, args.k)
    rows = []
    gaps = 0
    for t, pdf in zip(times, slices):
        if pdf is None:
            gaps += 1
            continue
        rows.extend((t, phi, dens) for phi, dens in zip(pdf.phi, pdf.density))
    if gaps:
        print(f"skipped {gaps} time(s) of vanishing conditioning probability", file=sys.stderr)
    _write(args.out, _table(("t", "phi", "density"), rows, args.format))
    return 0


def cmd_ellipse(args) -> int:
    state = parse_pol_spec(args.pol, args.n_max, args.tail_tol)
    pdf = marginal_pdf(to_jm(state, PrimitiveConvention.PHOTONIC), args.k)
    if args.db:
        _write(args.out, _table(("phi", "db"), zip(pdf.phi, db_view(pdf)), args.format))
    else:
        _write(args.out, _table(("phi", "density"), zip(pdf.phi, pdf.density), args.format))
    return 0


def cmd_timepdf(args) -> int:
    jm = _pol_jm(args)
    pdf = absolute_time_pdf(jm, args.kt)
    _write(args.out, _table(("t", "density"), zip(pdf.phi, pdf.density), args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relphase",
        description="Quantum phase/angle measurement statistics toolkit.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {__version__} (state-format {STATE_FORMAT_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pol=False):
        p.add_argument("--k", type=int, default=1024, help="angular grid size (default 1024)")
        p.add_argument("--kt", type=int, default=256, help="time grid size (default 256)")
        p.add_argument("--n-max", type=int, default=None, help="Fock truncation override")
        p.add_argument("--tail-tol", type=float, default=1e-12, help="coherent tail tolerance")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default="-", help="output path ('-' = stdout)")
        if pol:
            p.add_argument("--pol", required=True, help="polarization spec (xnum:/xcoh:/xsup:/file:)")
        else:
            p.add_argument("--state", required=True, help="state spec (num:/coh:/file:)")

    p = sub.add_parser("phase", help="continuous phase density of a single mode")
    common(p)
    p.set_defaults(fn=cmd_phase)

    p = sub.add_parser("pb", help="discrete phase masses and convergence distances")
    common(p)
    p.add_argument("--s", required=True, help="comma-separated truncations, e.g. 64,128,256")
    p.add_argument("--report", default=None, help="write convergence JSON here")
    p.set_defaults(fn=cmd_pb)

    p = sub.add_parser("moments", help="quadrature and cosine/sine moment report (JSON)")
    common(p)
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("sweep", help="snapshot distributions over absolute times in [0, pi]")
    common(p, pol=True)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("ellipse", help="quantum polarization ellipse (marginal distribution)")
    common(p, pol=True)
    p.add_argument("--db", action="store_true", help="emit the 60 dB-peak view")
    p.set_defaults(fn=cmd_ellipse)

    p = sub.add_parser("timepdf", help="absolute-time density over [-pi, pi)")
    common(p, pol=True)
    p.set_defaults(fn=cmd_timepdf)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RelphaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
