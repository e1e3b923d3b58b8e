"""Command-line entry point: ``ngas <command> [flags]``.

Exit codes: 0 success, 1 failed check or non-converged computation, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Optional, Sequence

import numpy as np

from . import ipt, oracle, qft, spectrum, susy, tables, vacuum
from .gap import critical_coupling, potential_params, solve_gap
from .model import NGASError, OscillatorClass, OscillatorSpec, Phase

CLASSES = [c.value for c in OscillatorClass]


class UsageError(Exception):
    pass


# ----------------------------------------------------------------- output

def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def emit(rows: Sequence[dict], fmt: str = "csv") -> str:
    if fmt == "json":
        def clean(v):
            if isinstance(v, float) and not math.isfinite(v):
                return None
            return v
        return json.dumps([{k: clean(v) for k, v in r.items()} for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(rows[0].keys()))
        for r in rows:
            w.writerow([_cell(v) for v in r.values()])
    return buf.getvalue()


def parse_csv(text: str) -> list[dict]:
    """Inverse of :func:`emit` for CSV: numbers become int/float, empty cells None."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        parsed = {}
        for k, v in row.items():
            if v == "":
                parsed[k] = None
            elif v in ("true", "false"):
                parsed[k] = v == "true"
            else:
                try:
                    parsed[k] = int(v)
                except ValueError:
                    try:
                        parsed[k] = float(v)
                    except ValueError:
                        parsed[k] = v
        out.append(parsed)
    return out


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------- commands

def _spec(args) -> OscillatorSpec:
    try:
        return OscillatorSpec(OscillatorClass(args.cls), args.g, args.lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _levels(args) -> list[int]:
    if any(n < 0 for n in args.n):
        raise UsageError("level indices must be non-negative")
    return list(args.n)


def cmd_spectrum(args) -> list[dict]:
    spec = _spec(args)
    rows = []
    for n in _levels(args):
        gap = solve_gap(spec, n)
        e0 = spectrum.energy_lo(spec, n, gap).e0
        de2 = de3 = None
        if args.order >= 2 and spec.lam > 0:
            d2, d3 = ipt.corrections(spec, n, denominator=args.ipt_denominator)
            de2 = d2
            de3 = d3 if args.order >= 3 else None
        elif args.order >= 2:
            de2, de3 = 0.0, (0.0 if args.order >= 3 else None)
        total = spectrum.LevelEnergy(e0, de2, de3).total
        rows.append(dict(n=n, omega=gap.omega, sigma=gap.sigma, phase=gap.phase.value,
                         e0=e0, de2=de2, de3=de3, total=total))
    return rows


def cmd_gap(args) -> list[dict]:
    spec = _spec(args)
    rows = []
    for n in _levels(args):
        gap = solve_gap(spec, n, Phase(args.phase) if args.phase else None)
        p = potential_params(spec, n, gap)
        lam_c = critical_coupling(spec.g, n) if spec.cls is OscillatorClass.QUARTIC_DWO else None
        rows.append(dict(n=n, omega=gap.omega, sigma=gap.sigma, phase=gap.phase.value,
                         residual=gap.residual, A=p.A, B=p.B, C=p.C, h0=p.h0, lambda_c=lam_c))
    return rows


def cmd_ipt(args) -> list[dict]:
    spec = _spec(args)
    if spec.lam == 0:
        raise UsageError("perturbative corrections need lambda > 0")
    rows = []
    for n in _levels(args):
        d1 = ipt.first_order(spec, n)
        d2, d3 = ipt.corrections(spec, n, denominator=args.ipt_denominator)
        rows.append(dict(n=n, de1=d1, de2=d2, de3=d3, denominator=args.ipt_denominator))
    return rows


def _oracle(spec, levels, tol):
    return oracle.converged_levels(spec, levels, tol)


def cmd_oracle(args) -> list[dict]:
    spec = _spec(args)
    levels = _levels(args)
    res = _oracle(spec, levels, args.tol)
    return [dict(n=n, energy=res.eigenvalues[n], basis_size=res.basis_size,
                 basis_frequency=res.basis_frequency, converged=res.converged,
                 tail_estimate=res.tail_estimate) for n in levels]


def cmd_compare(args) -> list[dict]:
    spec = _spec(args)
    levels = _levels(args)
    res = _oracle(spec, levels, args.tol)
    rows = []
    for n in levels:
        e0 = spectrum.level_energy(spec, n)
        e2 = e0 + (ipt.corrections(spec, n, denominator=args.ipt_denominator)[0] if spec.lam > 0 else 0.0)
        ex = res.eigenvalues[n]
        rows.append(dict(n=n, e0=e0, e0_plus_de2=e2, oracle=ex,
                         rel_error_lo=abs(e0 - ex) / abs(ex), rel_error_de2=abs(e2 - ex) / abs(ex)))
    return rows


def cmd_table(args) -> tuple[list[dict], int]:
    try:
        tid = tables._check_id(args.id)
    except tables.UnknownTable as exc:
        raise UsageError(str(exc)) from None
    rows = [dict(table=r.table, lam=r.lam, n=r.n, column=r.column, computed=r.computed,
                 reference=r.reference, rel_error=r.rel_error, tolerance=r.tolerance,
                 passed=r.passed, provenance=r.provenance) for r in tables.compare_table(tid)]
    status = 1 if args.check and not all(r["passed"] for r in rows) else 0
    if args.report:
        for r in tables.report_second_order(tid, args.ipt_denominator):
            rows.append(dict(table=r.table, lam=r.lam, n=r.n, column=r.column + ":report",
                             computed=r.computed, reference=r.reference, rel_error=r.rel_error,
                             tolerance=r.tolerance, passed=r.passed, provenance=r.provenance))
    return rows, status


def cmd_susy(args) -> list[dict]:
    if not args.beta > 0:
        raise UsageError("beta must be positive")
    if args.plot_data:
        return [dict(phi=p, psi_susy=a, psi_ngas=b)
                for p, a, b in susy.wavefunction_curves(args.beta, args.phi_max, args.points)]
    return [dict(n=r.n, e_aho=r.e_aho, e_dwo_next=r.e_dwo_next, relative_gap=r.relative_gap)
            for r in susy.ispp_table(args.beta, args.n_max)]


def cmd_vacuum(args) -> list[dict]:
    if args.plot_data:
        if len(args.lam) != 1:
            raise UsageError("--plot-data takes a single --lambda")
        grid = np.linspace(-args.sigma_max, args.sigma_max, args.points)
        return [dict(sigma=s, omega=w, v_eff=v) for s, w, v in vacuum.effective_potential_qm(args.lam[0], grid)]
    rows = []
    for lam in args.lam:
        if lam < 0:
            raise UsageError("lambda must be non-negative")
        v = vacuum.vacuum_structure(OscillatorSpec(OscillatorClass.QUARTIC_AHO, 1.0, lam))
        de = vacuum.stability_gap(lam) if lam > 0 else 0.0
        rows.append(dict(lam=lam, omega=v.omega, alpha=v.alpha, n0=v.n0, delta_e=de))
    return rows


def cmd_qft(args) -> list[dict]:
    if args.qft_cmd == "ep":
        if not args.mr > 0:
            raise UsageError("--mr must be positive")
        edge = math.sqrt(qft.sigma_min_sq(args.eta, args.mr))
        grid = np.linspace(-edge, edge, args.points)
        curve = qft.effective_potential(args.eta, args.mr, grid, cutoff=args.cutoff)
        return [dict(sigma=s, t=t, u_minus_umin=u) for s, t, u in curve.points]
    if args.qft_cmd == "gap":
        t = qft.renormalized_gap(args.eta, args.sigma / args.mr)
        return [dict(eta=args.eta, sigma=args.sigma, m_r=args.mr, t=t,
                     sigma_min=math.sqrt(qft.sigma_min_sq(args.eta, args.mr)),
                     other_root=qft.second_gap_root(args.eta, args.sigma / args.mr))]
    if args.qft_cmd == "condensate":
        grid = np.linspace(0.0, args.kmax, args.points)
        return [dict(k=k, n=n, rho=r) for k, n, r in qft.condensate_density(args.mbare, args.mr, grid)]
    rep = qft.perturbative_ep(args.m2, args.lam, args.cutoff)
    rows = [dict(quantity="m2_bar_r", value=rep.m2_bar_r),
            dict(quantity="lambda_bar_r", value=rep.lambda_bar_r),
            dict(quantity="unbounded_below", value=rep.unbounded_below),
            dict(quantity="sigma_big", value=rep.sigma_big),
            dict(quantity="growth_exponent", value=rep.growth_exponent),
            dict(quantity="u_min_ngas", value=rep.u_min_ngas),
            dict(quantity="u_min_pert", value=rep.u_min_pert),
            dict(quantity="ngas_below_pert", value=rep.ngas_below_pert)]
    rows += [dict(quantity=f"lambda_at_cutoff_{c:g}", value=l) for c, l in rep.lambda_trajectory]
    return rows


# ----------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", help="write output to this file instead of stdout")

    osc = argparse.ArgumentParser(add_help=False)
    osc.add_argument("--class", dest="cls", choices=CLASSES, required=True)
    osc.add_argument("--g", type=float, default=1.0)
    osc.add_argument("--lambda", dest="lam", type=float, required=True)
    osc.add_argument("--n", type=int, nargs="+", default=[0])

    den = argparse.ArgumentParser(add_help=False)
    den.add_argument("--ipt-denominator", choices=list(ipt.DENOMINATORS), default=ipt.FIXED)

    p = _Parser(prog="ngas", description="Gap equations, spectra and checks for anharmonic oscillators.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("spectrum", parents=[common, osc, den], help="leading-order levels plus corrections")
    s.add_argument("--order", type=int, choices=[0, 2, 3], default=0)
    sub.add_parser("gap", parents=[common, osc], help="gap-equation solution and potential parameters") \
        .add_argument("--phase", choices=[ph.value for ph in Phase])
    sub.add_parser("ipt", parents=[common, osc, den], help="perturbative corrections")
    for name in ("oracle", "compare"):
        o = sub.add_parser(name, parents=[common, osc] + ([den] if name == "compare" else []),
                           help="basis-diagonalization reference" if name == "oracle" else "LO vs oracle")
        o.add_argument("--tol", type=float, default=1e-9)

    t = sub.add_parser("table", parents=[common, den], help="reproduce a printed table")
    t.add_argument("id")
    t.add_argument("--check", action="store_true", help="exit 1 if any cell misses its tolerance")
    t.add_argument("--report", action="store_true", help="append the second-order columns (not gating)")

    su = sub.add_parser("susy", parents=[common], help="partner-potential comparison")
    su.add_argument("--beta", type=float, default=1.0)
    su.add_argument("--n-max", type=int, default=19)
    su.add_argument("--plot-data", action="store_true", help="emit the two ground-state wavefunctions")
    su.add_argument("--phi-max", type=float, default=3.0)
    su.add_argument("--points", type=int, default=121)

    v = sub.add_parser("vacuum", parents=[common], help="vacuum structure of the quartic oscillator")
    v.add_argument("--lambda", dest="lam", type=float, nargs="+", default=[1.0])
    v.add_argument("--plot-data", action="store_true", help="emit V_eff(sigma)")
    v.add_argument("--sigma-max", type=float, default=2.0)
    v.add_argument("--points", type=int, default=81)

    q = sub.add_parser("qft", help="lambda phi^4 field theory")
    qs = q.add_subparsers(dest="qft_cmd", required=True, parser_class=_Parser)
    e = qs.add_parser("ep", parents=[common])
    e.add_argument("--eta", type=float, required=True)
    e.add_argument("--mr", type=float, default=1.0)
    e.add_argument("--points", type=int, default=41)
    e.add_argument("--cutoff", type=float, default=None)
    gq = qs.add_parser("gap", parents=[common])
    gq.add_argument("--eta", type=float, required=True)
    gq.add_argument("--sigma", type=float, required=True)
    gq.add_argument("--mr", type=float, default=1.0)
    c = qs.add_parser("condensate", parents=[common])
    c.add_argument("--mr", type=float, required=True)
    c.add_argument("--mbare", type=float, required=True)
    c.add_argument("--kmax", type=float, default=10.0)
    c.add_argument("--points", type=int, default=51)
    tr = qs.add_parser("triviality", parents=[common])
    tr.add_argument("--lambda", dest="lam", type=float, required=True)
    tr.add_argument("--m2", type=float, required=True)
    tr.add_argument("--cutoff", type=float, required=True)
    return p


COMMANDS = {
    "spectrum": cmd_spectrum, "gap": cmd_gap, "ipt": cmd_ipt, "oracle": cmd_oracle,
    "compare": cmd_compare, "table": cmd_table, "susy": cmd_susy, "vacuum": cmd_vacuum,
    "qft": cmd_qft,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    status = 0
    try:
        result = COMMANDS[args.command](args)
        if isinstance(result, tuple):
            result, status = result
    except UsageError as exc:
        print(f"ngas: error: {exc}", file=sys.stderr)
        return 2
    except (oracle.NotConverged, NGASError) as exc:
        print(f"ngas: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"ngas: error: {exc}", file=sys.stderr)
        return 2
    _write(emit(result, args.format), args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
