"""Command-line interface.

Subcommands: ``surface`` (orbit table of curve counts), ``threefold``
(reduced point-invariants), ``verify`` (self-check suites), ``cache``
(inspect or clear a persisted table).  Data goes to stdout; diagnostics
go to stderr.  Exit codes: 0 success, 1 usage or environment error,
2 failed integrity check.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import random
import sys
from math import comb
from typing import Callable, NoReturn, Sequence

from .curves import CandidateClass, candidate_classes
from .errors import IntegrityError
from .lattice import (
    LatticeVector,
    basis_vector,
    canonical_class,
    degree,
    discriminant,
    is_canonical_multiple,
)
from .surface import (
    DEFAULT_INSTANCE_CAP,
    chamber_orbits,
    check_class,
    solve_up_to,
)
from .threefold import (
    FANO_DEGREES,
    kappa,
    lines_through_point_closed_form,
    lines_through_point_lattice,
    pencil_incidence_count,
    threefold_invariant,
)
from .weyl import (
    SaturationType,
    WeylContext,
    group_order,
    invariant_bilinear_dimension,
    orbit,
    saturated_invariant_subgroup,
    simple_roots,
)

logger = logging.getLogger(__name__)

_KNOWN_GROUP_ORDERS = {4: 120, 5: 1920, 6: 51840, 7: 2903040}
_KNOWN_LINE_COUNTS = {4: 10, 5: 16, 6: 27, 7: 56}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems with exit status 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="delpezzo",
        description="Exact rational-curve counts on del Pezzo surfaces "
        "and index-two Fano threefolds.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log progress to stderr"
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    ps = sub.add_parser("surface", help="curve counts on a del Pezzo surface")
    pick = ps.add_mutually_exclusive_group(required=True)
    pick.add_argument("--r", type=int, choices=(4, 5, 6, 7), help="lattice rank")
    pick.add_argument(
        "--d", type=int, choices=(2, 3, 4, 5), help="surface degree (9 - rank)"
    )
    _add_solver_options(ps)
    ps.set_defaults(func=cmd_surface)

    pt = sub.add_parser("threefold", help="point-invariants of a Fano threefold")
    pt.add_argument(
        "--d", type=int, choices=(2, 3, 4, 5), required=True, help="threefold degree"
    )
    _add_solver_options(pt)
    pt.set_defaults(func=cmd_threefold)

    pv = sub.add_parser("verify", help="run internal consistency suites")
    pv.add_argument(
        "--suite",
        default="all",
        choices=("all",) + tuple(_SUITES),
        help="which suite to run",
    )
    pv.add_argument(
        "--level", choices=("fast", "full"), default="fast", help="search depth"
    )
    pv.set_defaults(func=cmd_verify)

    pc = sub.add_parser("cache", help="inspect or clear a persisted table")
    csub = pc.add_subparsers(dest="cache_command", metavar="action")
    csub.required = True
    pci = csub.add_parser("inspect", help="print cache header and record count")
    pci.add_argument("--cache", required=True, help="cache file path")
    pci.set_defaults(func=cmd_cache_inspect)
    pcc = csub.add_parser("clear", help="delete a cache file")
    pcc.add_argument("--cache", required=True, help="cache file path")
    pcc.set_defaults(func=cmd_cache_clear)

    return parser


def _add_solver_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--emax", type=int, default=4, help="largest curve degree")
    p.add_argument(
        "--format", choices=("text", "csv", "json"), default="text", dest="fmt"
    )
    p.add_argument("--cache", default=None, help="persist/reuse counts here")
    p.add_argument("--jobs", type=int, default=1, help="solver threads")
    p.add_argument(
        "--instance-cap",
        type=int,
        default=DEFAULT_INSTANCE_CAP,
        dest="instance_cap",
        help="relation instances tried per class",
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 1
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except IntegrityError as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, LookupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _validated_solver_args(args: argparse.Namespace) -> None:
    if args.emax < 1:
        raise ValueError("--emax must be at least 1")
    if args.jobs < 1:
        raise ValueError("--jobs must be at least 1")
    if args.instance_cap < 1:
        raise ValueError("--instance-cap must be at least 1")


def cmd_surface(args: argparse.Namespace) -> int:
    _validated_solver_args(args)
    r = args.r if args.r is not None else 9 - args.d
    table = solve_up_to(
        r,
        args.emax,
        cache_path=args.cache,
        instance_cap=args.instance_cap,
        jobs=args.jobs,
    )
    rows = []
    for e in range(1, args.emax + 1):
        for rep, size in chamber_orbits(r, e):
            rows.append((e, rep, size, discriminant(rep), table.count(rep)))

    if args.fmt == "json":
        payload = {
            "kind": "surface",
            "rank": r,
            "surface_degree": 9 - r,
            "max_degree": args.emax,
            "orbits": [
                {
                    "degree": e,
                    "representative": list(rep.coeffs),
                    "orbit_size": size,
                    "discriminant": disc,
                    "count": str(n),
                }
                for e, rep, size, disc, n in rows
            ],
        }
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif args.fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(
            ["degree", "representative", "orbit_size", "discriminant", "count"]
        )
        for e, rep, size, disc, n in rows:
            writer.writerow([e, _vec_text(rep), size, disc, n])
    else:
        print("degree\trepresentative\torbit_size\tdiscriminant\tcount")
        for e, rep, size, disc, n in rows:
            print(f"{e}\t{_vec_text(rep)}\t{size}\t{disc}\t{n}")
    return 0


def cmd_threefold(args: argparse.Namespace) -> int:
    _validated_solver_args(args)
    d = args.d
    table = solve_up_to(
        9 - d,
        args.emax,
        cache_path=args.cache,
        instance_cap=args.instance_cap,
        jobs=args.jobs,
    )
    reports = [threefold_invariant(d, e, table) for e in range(1, args.emax + 1)]

    if args.fmt == "json":
        payload = {
            "kind": "threefold",
            "fano_degree": d,
            "max_degree": args.emax,
            "invariants": [
                {
                    "degree": rep.degree,
                    "value": str(rep.value),
                    "orbits": [
                        {
                            "representative": list(c.representative.coeffs),
                            "orbit_size": c.orbit_size,
                            "discriminant": c.discriminant,
                            "surface_count": str(c.surface_count),
                            "contribution": str(c.contribution),
                        }
                        for c in rep.breakdown
                    ],
                }
                for rep in reports
            ],
        }
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif args.fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["degree", "value"])
        for rep in reports:
            writer.writerow([rep.degree, rep.value])
    else:
        print("degree\tvalue")
        for rep in reports:
            print(f"{rep.degree}\t{rep.value}")
    return 0


def _vec_text(v: LatticeVector) -> str:
    return " ".join(str(c) for c in v.coeffs)


def cmd_cache_inspect(args: argparse.Namespace) -> int:
    with open(args.cache, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith("delpezzo-cache"):
        print(f"error: {args.cache} is not a recognizable cache", file=sys.stderr)
        return 2
    print(f"path: {args.cache}")
    print(f"header: {lines[0]}")
    print(f"records: {len(lines) - 1}")
    return 0


def cmd_cache_clear(args: argparse.Namespace) -> int:
    try:
        os.unlink(args.cache)
    except FileNotFoundError:
        print(f"no cache at {args.cache}")
        return 0
    print(f"removed {args.cache}")
    return 0


# ---------------------------------------------------------------------------
# verify suites: each returns None on success or a short failure message.


def _suite_hodge(level: str) -> str | None:
    """Discriminants are nonnegative and vanish exactly along omega."""
    rng = random.Random(20260817)
    samples = 300 if level == "fast" else 2000
    for r in (4, 5, 6, 7):
        omega = canonical_class(r)
        for k in range(-3, 4):
            if discriminant(k * omega) != 0:
                return f"multiple {k}*omega has nonzero discriminant at rank {r}"
        for _ in range(samples):
            v = LatticeVector(tuple(rng.randrange(-9, 10) for _ in range(r + 1)))
            disc = discriminant(v)
            if disc < 0:
                return f"negative discriminant for {tuple(v)}"
            if (disc == 0) != is_canonical_multiple(v):
                return f"discriminant zero-locus wrong at {tuple(v)}"
    return None


def _suite_killing(level: str) -> str | None:
    """The invariant symmetric form is unique on the root span and gains
    exactly one extra dimension on the full lattice."""
    for r in (4, 5, 6, 7):
        ctx = WeylContext.for_rank(r)
        dim = invariant_bilinear_dimension(ctx)
        if dim != 1:
            return f"rank {r}: invariant form dimension {dim} on root span"
        dim = invariant_bilinear_dimension(ctx, full_lattice=True)
        if dim != 2:
            return f"rank {r}: invariant form dimension {dim} on full lattice"
    return None


def _suite_weyl(level: str) -> str | None:
    """Group orders, line counts, and orbit/stabilizer arithmetic."""
    for r, expected in _KNOWN_GROUP_ORDERS.items():
        ctx = WeylContext.for_rank(r)
        got = group_order(ctx)
        if got != expected:
            return f"rank {r}: group order {got}, expected {expected}"
        lines = candidate_classes(r, 1)
        if len(lines) != _KNOWN_LINE_COUNTS[r]:
            return f"rank {r}: {len(lines)} exceptional classes"
        orb = orbit(lines[0].vector, ctx)
        if len(orb) != len(lines):
            return f"rank {r}: exceptional orbit size {len(orb)}"
        if got % len(orb):
            return f"rank {r}: orbit size does not divide group order"
    return None


def _suite_saturation(level: str) -> str | None:
    """Orbit spans saturate to the whole lattice off the omega line."""
    for r in (4, 5, 6, 7):
        ctx = WeylContext.for_rank(r)
        omega = canonical_class(r)
        for k in (1, 2):
            got = saturated_invariant_subgroup(k * omega, ctx)
            if got is not SaturationType.MULTIPLES_OF_OMEGA:
                return f"rank {r}: {k}*omega classified {got.value}"
        probes = [simple_roots(r)[0], basis_vector(r, r), basis_vector(r, 0)]
        if level == "full":
            probes.append(basis_vector(r, 0) - basis_vector(r, 1))
        for v in probes:
            got = saturated_invariant_subgroup(v, ctx)
            if got is not SaturationType.FULL_LATTICE:
                return f"rank {r}: {tuple(v)} classified {got.value}"
    return None


def _plane_counts(top: int) -> dict[int, int]:
    """Plane rational-curve counts from the classical two-point recursion."""
    counts = {1: 1}
    for n in range(2, top + 1):
        total = 0
        for k in range(1, n):
            m = n - k
            total += counts[k] * counts[m] * (
                k * k * m * m * comb(3 * n - 4, 3 * k - 2)
                - k**3 * m * comb(3 * n - 4, 3 * k - 1)
            )
        counts[n] = total
    return counts


def _suite_kontsevich(level: str) -> str | None:
    """The solver on the rank-1 lattice reproduces plane curve counts."""
    top = 4 if level == "fast" else 6
    expected = _plane_counts(top)
    table = solve_up_to(1, 3 * top)
    line = basis_vector(1, 0)
    for k, n in expected.items():
        got = table.count(k * line)
        if got != n:
            return f"plane degree {k}: got {got}, expected {n}"
    return None


def _suite_kappa(level: str) -> str | None:
    """Normalization constants and line counts for all four threefolds."""
    for d in FANO_DEGREES:
        kappa(d)  # runs its internal cross-checks
        if lines_through_point_closed_form(d) != lines_through_point_lattice(d):
            return f"degree {d}: line counts disagree"
        r = 9 - d
        line = candidate_classes(r, 1)[0].vector
        got = pencil_incidence_count(d, line)
        if got != lines_through_point_closed_form(d):
            return f"degree {d}: incidence count {got} for a line"
        if pencil_incidence_count(d, -2 * canonical_class(r)) != 0:
            return f"degree {d}: omega multiple has nonzero incidence count"
    return None


def _suite_wdvv(level: str) -> str | None:
    """Solve low degrees on every surface and re-verify representatives."""
    emax = 3 if level == "fast" else 4
    for r in (4, 5, 6, 7):
        table = solve_up_to(r, emax)
        if table.count(basis_vector(r, 0)) != 1:
            return f"rank {r}: wrong count for the line pullback class"
        conic = basis_vector(r, 0) - basis_vector(r, 1)
        if table.count(conic) != 1:
            return f"rank {r}: wrong count for the conic class"
        anti = -1 * canonical_class(r)
        if degree(anti) <= emax and table.count(anti) != 12:
            return (
                f"rank {r}: anticanonical pencil count "
                f"{table.count(anti)}, expected 12"
            )
        for e in range(2, emax + 1):
            for rep, _ in chamber_orbits(r, e):
                check_class(CandidateClass.from_vector(rep), table, required=3)
    return None


_SUITES: dict[str, Callable[[str], str | None]] = {
    "hodge": _suite_hodge,
    "killing": _suite_killing,
    "weyl": _suite_weyl,
    "saturation": _suite_saturation,
    "kontsevich": _suite_kontsevich,
    "kappa": _suite_kappa,
    "wdvv": _suite_wdvv,
}


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    failures = 0
    for name in names:
        try:
            message = _SUITES[name](args.level)
        except IntegrityError as exc:
            message = str(exc)
        if message is None:
            print(f"{name}: PASS")
        else:
            print(f"{name}: FAIL: {message}")
            failures += 1
    return 2 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
