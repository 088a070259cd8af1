"""Command-line front end: one JSON document per invocation, optionally cached."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import islice

from . import __version__
from .bounds import closed_form_ratio, truncated_ie_lower_bound, u_over_d
from .cache import ResultCache, cache_key
from .errors import CertificateFailure, EkrError
from .graph import DENSE_CAP, build_dense, degree
from .partitions import count_partitions, enumerate_partitions
from .quotients import (
    base_quotient,
    pair_stabilizer_quotient,
    tau,
    theta,
    triple_stabilizer_quotient,
)
from .reps import (
    GroupSpec,
    dimension,
    orbit_count,
    permutation_character_decompose,
    shapes_text,
    small_degree_shapes,
)
from .spectra import (
    DENSE_SPECTRUM_CAP,
    least_eigenvalue_is_tau,
    multiplicity_floors,
    multiplicity_gap_check,
    ratio_bound,
    spectrum_by_moments,
    spectrum_dense,
)
from .tables import count_adjacency_tables, enumerate_adjacency_tables

EXIT_OK, EXIT_USAGE, EXIT_CERT = 0, 1, 2
# arguments that steer plumbing, not results; left out of cache keys
_PLUMBING = {"command", "cache", "no_cache", "json", "func"}


class UsageError(EkrError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + n for n in missing))


# -- commands ------------------------------------------------------------------

def cmd_count(args) -> dict:
    _need(args, "k", "l")
    return {"u": str(count_partitions(args.k, args.l))}


def cmd_enumerate(args) -> dict:
    _need(args, "k", "l")
    stream = enumerate_partitions(args.k, args.l, args.budget)
    items = [str(p) for p in islice(stream, args.limit)]
    return {"count": str(count_partitions(args.k, args.l)), "partitions": items}


def cmd_degree(args) -> dict:
    _need(args, "k", "l")
    return {"degree": str(degree(args.k, args.l, args.t, args.method, args.budget))}


def cmd_tables(args) -> dict:
    _need(args, "k", "l")
    out = {"count": str(count_adjacency_tables(args.k, args.l))}
    if args.list:
        out["tables"] = [str(m) for m in islice(enumerate_adjacency_tables(args.k, args.l), args.limit)]
    return out


def cmd_quotient(args) -> dict:
    _need(args, "k", "l")
    if args.stabilizer == "base":
        qm = base_quotient(args.k, args.l, args.t, args.budget)
    else:
        if args.t != 2:
            raise UsageError("pair and triple quotients are defined for t = 2")
        build = pair_stabilizer_quotient if args.stabilizer == "pair" else triple_stabilizer_quotient
        qm = build(args.k, args.l, route=args.route)
    out = qm.to_json()
    out["eigenvalues"] = [{"value": _frac(lam), "multiplicity": m} for lam, m in qm.eigenvalues().items()]
    return out


def cmd_spectrum(args) -> dict:
    _need(args, "k", "l")
    if args.method == "moments":
        report = spectrum_by_moments(args.k, args.l, args.t, args.budget)
    else:
        report = spectrum_dense(build_dense(args.k, args.l, args.t, args.cap or DENSE_CAP))
    return report.to_json()


def cmd_ratio_bound(args) -> dict:
    if args.v is not None or args.d is not None or args.tau is not None:
        _need(args, "v", "d", "tau")
        return ratio_bound(int(args.v), int(args.d), Fraction(args.tau)).to_json()
    _need(args, "k", "l")
    d = degree(args.k, args.l)
    return ratio_bound(count_partitions(args.k, args.l), d, tau(args.k, args.l, d), args.k, args.l).to_json()


def cmd_repdims(args) -> dict:
    _need(args, "n", "bound")
    shapes = sorted(small_degree_shapes(args.n, args.bound), reverse=True)
    return {"n": args.n, "bound": str(args.bound),
            "shapes": [{"shape": str(s), "dimension": str(dimension(s))} for s in shapes]}


def cmd_orbits(args) -> dict:
    _need(args, "k", "l", "group")
    group = GroupSpec.parse(args.group)
    return {"group": str(group), "orbits": str(orbit_count(args.k, args.l, group, args.budget))}


def cmd_decompose(args) -> dict:
    _need(args, "k", "l")
    rec = permutation_character_decompose(args.k, args.l, args.budget)
    out = rec.to_json()
    out["multiplicity_free"] = rec.is_multiplicity_free()
    out["constituents"] = shapes_text(s for s, m in rec.terms if m)
    return out


def cmd_bounds(args) -> dict:
    _need(args, "l")
    exact = args.l <= 12
    out = {"bound": truncated_ie_lower_bound(args.l, args.truncate, exact=exact).to_json()}
    if args.l > 10 and args.truncate == 5:
        ratio = closed_form_ratio(args.l)
        out["ratio"] = ratio.to_json()
        out["gap_check"] = multiplicity_gap_check(3, args.l, 24).to_json()
    if exact and args.l >= 3:
        out["u_over_d"] = u_over_d(3, args.l).to_json()
    return out


def cmd_certify(args) -> dict:
    """Spectrum, least eigenvalue, ratio-bound equality and multiplicity floors in one go."""
    _need(args, "k", "l")
    k, ell = args.k, args.l
    if args.t != 2:
        raise UsageError("certify covers the t = 2 graph")
    report = spectrum_by_moments(k, ell, 2, args.budget)
    checks = {}
    out = {"spectrum": report.to_json()}
    if report.v <= DENSE_SPECTRUM_CAP:
        dense = spectrum_dense(build_dense(k, ell, 2))
        checks["dense_agrees"] = dense.as_dict() == report.as_dict()
    if report.d == 0:
        raise CertificateFailure(f"X_({k},{ell}) has no edges, nothing to certify")
    t_val = tau(k, ell, report.d)
    checks["least_is_tau"] = least_eigenvalue_is_tau(report)
    cert = ratio_bound(report.v, report.d, min(report.eigenvalues), k, ell)
    out["ratio_bound"] = cert.to_json()
    checks["ratio_equality"] = cert.equality
    m_tau, m_theta = multiplicity_floors(k, ell)
    out["tau"] = _frac(t_val)
    out["multiplicity_floors"] = {"tau": str(m_tau), "theta": str(m_theta)}
    checks["tau_multiplicity"] = report.multiplicity(t_val) >= m_tau
    if k >= 3 and ell >= 3:
        th = theta(k, ell, report.d)
        out["theta"] = _frac(th)
        checks["theta_multiplicity"] = report.multiplicity(th) >= m_theta
    out["checks"] = checks
    out["certified"] = all(checks.values())
    return out


COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "degree": cmd_degree,
    "tables": cmd_tables,
    "quotient": cmd_quotient,
    "spectrum": cmd_spectrum,
    "ratio-bound": cmd_ratio_bound,
    "repdims": cmd_repdims,
    "orbits": cmd_orbits,
    "decompose": cmd_decompose,
    "bounds": cmd_bounds,
    "certify": cmd_certify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--l", type=int)
    common.add_argument("--t", type=int, default=2)
    common.add_argument("--json", action="store_true", default=True, help="JSON output (the only format)")
    common.add_argument("--cache", metavar="DIR")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--budget", type=int)

    parser = _Parser(prog="ekrlab", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("count", "decompose", "certify"):
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("enumerate", parents=[common])
    p.add_argument("--limit", type=int, default=None)
    p = sub.add_parser("degree", parents=[common])
    p.add_argument("--method", choices=["formula", "enumeration"], default="formula")
    p = sub.add_parser("tables", parents=[common])
    p.add_argument("--list", action="store_true")
    p.add_argument("--limit", type=int, default=None)
    p = sub.add_parser("quotient", parents=[common])
    p.add_argument("--stabilizer", choices=["pair", "triple", "base"], required=True)
    p.add_argument("--route", choices=["auto", "count", "closed"], default="auto")
    p = sub.add_parser("spectrum", parents=[common])
    p.add_argument("--method", choices=["moments", "dense"], default="moments")
    p.add_argument("--cap", type=int)
    p = sub.add_parser("ratio-bound", parents=[common])
    p.add_argument("--v")
    p.add_argument("--d")
    p.add_argument("--tau")
    p = sub.add_parser("repdims", parents=[common])
    p.add_argument("--n", type=int)
    p.add_argument("--bound", type=int)
    p = sub.add_parser("orbits", parents=[common])
    p.add_argument("--group", help="young:7,2 or young_alt:7,1,1")
    p = sub.add_parser("bounds", parents=[common])
    p.add_argument("--truncate", type=int, default=5)
    return parser


def _emit(payload: dict, out) -> None:
    out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        params = {k: v for k, v in sorted(vars(args).items()) if k not in _PLUMBING}
        key = cache_key(args.command, params, __version__)
        store = None if args.no_cache else ResultCache(args.cache)
        entry = store.get(key) if store else None
        if entry is not None:
            payload = entry.payload
        else:
            payload = COMMANDS[args.command](args)
            if store:
                payload = store.put(key, payload, __version__).payload
    except CertificateFailure as exc:
        _emit({"error": str(exc), "kind": "certificate"}, out)
        return EXIT_CERT
    except (EkrError, ValueError, OSError) as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__}, out)
        return EXIT_USAGE
    _emit(payload, out)
    if payload.get("certified") is False:
        return EXIT_CERT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
