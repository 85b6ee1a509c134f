"""Counting rational curves on del Pezzo surfaces through point conditions.

``N(v)`` is the number of irreducible rational curves in the class ``v``
passing through ``degree(v) - 1`` general points.  The counts are pinned
down by three families of relations obtained from associativity of the
quantum product, here labelled by how many divisor arguments they take:

* ``R2(A, B)``   valid for degree >= 4,
* ``R3(A, B, C)`` valid for degree >= 3,
* ``R4(A, B, C, D)`` valid for degree >= 2.

Each instance is linear in the unknown ``N(target)`` with known lower
degree counts on the other side, so a target class is solved by the first
instance whose coefficient is nonzero and cross-checked against further
instances.  All arithmetic is exact.
"""

from __future__ import annotations

import logging
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterator, Sequence

from .curves import CandidateClass, candidate_classes, candidate_vectors
from .errors import (
    CacheFormatError,
    IntegrityError,
    RankMismatchError,
    UnderdeterminedClassError,
)
from .lattice import (
    ORACLE_RANK,
    SURFACE_RANKS,
    VALID_RANKS,
    LatticeVector,
    basis_vector,
    canonical_class,
    degree,
    pair,
)
from .weyl import reduce_to_chamber

logger = logging.getLogger(__name__)

CACHE_VERSION = "delpezzo-cache v1"

#: How many relation instances a single class may consume before the
#: solver declares it underdetermined.  The first usable instance always
#: appears within the leading few hundred at every supported rank; the
#: cap only guards against runaway scans on corrupted input.
DEFAULT_INSTANCE_CAP = 512

#: Extra nonzero-coefficient instances every solved class must satisfy.
DEFAULT_EXTRA_CHECKS = 2


def binom0(n: int, k: int) -> int:
    """Binomial coefficient that is zero outside ``0 <= k <= n``."""
    return comb(n, k) if 0 <= k <= n else 0


@dataclass(eq=True)
class InvariantTable:
    """Solved counts ``N(v)`` for every candidate class up to a degree."""

    r: int
    entries: dict[LatticeVector, int] = field(default_factory=dict)
    max_solved_degree: int = 0

    def count(self, v: LatticeVector) -> int:
        try:
            return self.entries[v]
        except KeyError:
            raise LookupError(
                f"no count stored for {tuple(v)} (degree {degree(v)}); "
                f"this table covers degrees up to {self.max_solved_degree} "
                f"at rank {self.r}; extend it with solve_up_to"
            ) from None

    def sorted_entries(self) -> list[tuple[LatticeVector, int]]:
        return sorted(self.entries.items(), key=lambda kv: (degree(kv[0]), kv[0].coeffs))


def seed_table(r: int) -> InvariantTable:
    """Base case of the recursion.

    Exceptional classes carry a single rigid curve each.  The rank-1
    cross-check lattice is seeded with the single line through two points
    of the plane (degree 3 in the anticanonical grading).
    """
    if r == ORACLE_RANK:
        return InvariantTable(r, {basis_vector(1, 0): 1}, 3)
    if r not in SURFACE_RANKS:
        raise RankMismatchError(f"unsupported rank {r}")
    entries = {c.vector: 1 for c in candidate_classes(r, 1)}
    return InvariantTable(r, entries, 1)


@dataclass(frozen=True)
class WdvvRelation:
    """One associativity instance, fully evaluated against a table.

    The relation asserts ``lhs_coeff * N(target) == rhs``.
    """

    template: str
    target: LatticeVector
    divisors: tuple[LatticeVector, ...]
    lhs_coeff: int
    rhs: int

    def __str__(self) -> str:
        divs = ", ".join(str(tuple(d)) for d in self.divisors)
        return (
            f"{self.template}[target={tuple(self.target)}; divisors={divs}]: "
            f"{self.lhs_coeff} * N = {self.rhs}"
        )


class _WdvvSystem:
    """All degree splittings of one target class, with cached pairings.

    A splitting ``target = g1 + g2`` into candidate classes of positive
    degree contributes with weight ``N(g1) * N(g2) * (g1 . g2)``; terms of
    weight zero are dropped once and for all.  Divisor pairings are cached
    per divisor so that scanning many instances stays cheap.
    """

    __slots__ = (
        "target", "vector", "r", "e", "terms", "_b2", "_b3", "_b4", "_dp"
    )

    def __init__(self, target: CandidateClass, table: InvariantTable):
        self.target = target
        self.vector = target.vector
        self.r = target.vector.rank
        self.e = target.degree
        if table.r != self.r:
            raise RankMismatchError("table rank does not match target")
        if table.max_solved_degree < self.e - 1:
            raise LookupError(
                f"splitting a degree-{self.e} class needs counts up to "
                f"degree {self.e - 1}, table stops at {table.max_solved_degree}"
            )
        terms: list[tuple[LatticeVector, LatticeVector, int, int]] = []
        for e1 in range(1, self.e):
            partners = candidate_vectors(self.r, self.e - e1)
            for c1 in candidate_classes(self.r, e1):
                g1 = c1.vector
                g2 = self.vector - g1
                if g2 not in partners:
                    continue
                p12 = pair(g1, g2)
                if p12 == 0:
                    continue
                w = table.count(g1) * table.count(g2) * p12
                if w:
                    terms.append((g1, g2, w, e1))
        self.terms = terms
        e = self.e
        self._b2 = [
            (binom0(e - 4, e1 - 2), binom0(e - 4, e1 - 1)) for _, _, _, e1 in terms
        ]
        self._b3 = [binom0(e - 3, e1 - 1) for _, _, _, e1 in terms]
        self._b4 = [binom0(e - 2, e1 - 1) for _, _, _, e1 in terms]
        self._dp: dict[LatticeVector, tuple[list[int], list[int], int]] = {}

    def _pairings(self, d: LatticeVector) -> tuple[list[int], list[int], int]:
        got = self._dp.get(d)
        if got is None:
            got = (
                [pair(d, g1) for g1, _, _, _ in self.terms],
                [pair(d, g2) for _, g2, _, _ in self.terms],
                pair(d, self.vector),
            )
            self._dp[d] = got
        return got

    def two_point(self, a: LatticeVector, b: LatticeVector) -> tuple[int, int]:
        if self.e < 4:
            raise ValueError(
                "the two-divisor relation needs degree >= 4; "
                "use the three- or four-divisor form"
            )
        pa1, _, _ = self._pairings(a)
        pb1, pb2, _ = self._pairings(b)
        rhs = 0
        for i, (_, _, w, _) in enumerate(self.terms):
            ca, cb = self._b2[i]
            rhs += w * pa1[i] * (pb2[i] * ca - pb1[i] * cb)
        return pair(a, b), rhs

    def three_point(
        self, a: LatticeVector, b: LatticeVector, c: LatticeVector
    ) -> tuple[int, int]:
        if self.e < 3:
            raise ValueError(
                "the three-divisor relation needs degree >= 3; "
                "use the four-divisor form"
            )
        pa1, _, pag = self._pairings(a)
        pb1, pb2, pbg = self._pairings(b)
        pc1, pc2, pcg = self._pairings(c)
        lhs = pair(a, b) * pcg - pair(a, c) * pbg
        rhs = 0
        for i, (_, _, w, _) in enumerate(self.terms):
            rhs += w * pa1[i] * (pc1[i] * pb2[i] - pb1[i] * pc2[i]) * self._b3[i]
        return lhs, rhs

    def four_point(
        self,
        a: LatticeVector,
        b: LatticeVector,
        c: LatticeVector,
        d: LatticeVector,
    ) -> tuple[int, int]:
        if self.e < 2:
            raise ValueError("the four-divisor relation needs degree >= 2")
        pa1, pa2, pag = self._pairings(a)
        pb1, pb2, pbg = self._pairings(b)
        pc1, pc2, pcg = self._pairings(c)
        pd1, pd2, pdg = self._pairings(d)
        lhs = (
            pair(a, b) * pcg * pdg
            + pair(c, d) * pag * pbg
            - pair(a, c) * pbg * pdg
            - pair(b, d) * pag * pcg
        )
        rhs = 0
        for i, (_, _, w, _) in enumerate(self.terms):
            rhs += (
                w
                * (
                    pa1[i] * pc1[i] * pb2[i] * pd2[i]
                    - pa1[i] * pb1[i] * pc2[i] * pd2[i]
                )
                * self._b4[i]
            )
        return lhs, rhs

    def evaluate(
        self, template: str, divisors: tuple[LatticeVector, ...]
    ) -> tuple[int, int]:
        if template == "R2":
            return self.two_point(*divisors)
        if template == "R3":
            return self.three_point(*divisors)
        if template == "R4":
            return self.four_point(*divisors)
        raise ValueError(f"unknown relation template {template!r}")

    def relation(
        self, template: str, divisors: tuple[LatticeVector, ...]
    ) -> WdvvRelation:
        lhs, rhs = self.evaluate(template, divisors)
        return WdvvRelation(template, self.vector, divisors, lhs, rhs)


def wdvv_relation_R2(
    target: CandidateClass,
    a: LatticeVector,
    b: LatticeVector,
    table: InvariantTable,
) -> WdvvRelation:
    return _WdvvSystem(target, table).relation("R2", (a, b))


def wdvv_relation_R3(
    target: CandidateClass,
    a: LatticeVector,
    b: LatticeVector,
    c: LatticeVector,
    table: InvariantTable,
) -> WdvvRelation:
    return _WdvvSystem(target, table).relation("R3", (a, b, c))


def wdvv_relation_R4(
    target: CandidateClass,
    a: LatticeVector,
    b: LatticeVector,
    c: LatticeVector,
    d: LatticeVector,
    table: InvariantTable,
) -> WdvvRelation:
    return _WdvvSystem(target, table).relation("R4", (a, b, c, d))


@lru_cache(maxsize=None)
def divisor_scan_set(r: int) -> tuple[LatticeVector, ...]:
    """Divisors used to generate relation instances.

    The basis vectors plus the anticanonical class span the lattice.  On
    the rank-1 lattice only ``l0`` yields valid instances (the blown-up
    point is not in general position there), and it already determines
    every plane count.
    """
    if r == ORACLE_RANK:
        return (basis_vector(1, 0),)
    return tuple(basis_vector(r, i) for i in range(r + 1)) + (
        -canonical_class(r),
    )


def _instances(
    e: int, scan: Sequence[LatticeVector]
) -> Iterator[tuple[str, tuple[LatticeVector, ...]]]:
    if e >= 4:
        for divs in product(scan, repeat=2):
            yield "R2", divs
    if e >= 3:
        for divs in product(scan, repeat=3):
            yield "R3", divs
    for divs in product(scan, repeat=4):
        yield "R4", divs


def _check_vacuous(system: _WdvvSystem, template: str,
                   divisors: tuple[LatticeVector, ...], rhs: int) -> None:
    if rhs != 0:
        raise IntegrityError(
            "relation with zero coefficient has nonzero right-hand side: "
            f"{WdvvRelation(template, system.vector, divisors, 0, rhs)}"
        )


def _solve_class(
    target: CandidateClass,
    table: InvariantTable,
    *,
    instance_cap: int,
    min_nonzero: int,
) -> int:
    """Solve one class and verify it against further instances.

    Every scanned instance is used: those with zero coefficient must have
    zero right-hand side, the first with nonzero coefficient determines
    the count, and later nonzero ones must agree.
    """
    system = _WdvvSystem(target, table)
    scan = divisor_scan_set(target.vector.rank)
    n_value: int | None = None
    verified = 0
    scanned = 0
    for template, divisors in _instances(target.degree, scan):
        if scanned >= instance_cap:
            break
        scanned += 1
        lhs, rhs = system.evaluate(template, divisors)
        if lhs == 0:
            _check_vacuous(system, template, divisors, rhs)
            continue
        if n_value is None:
            if rhs % lhs:
                raise IntegrityError(
                    "count is not an integer in "
                    f"{WdvvRelation(template, system.vector, divisors, lhs, rhs)}"
                )
            n_value = rhs // lhs
            if n_value < 0:
                raise IntegrityError(
                    f"negative count {n_value} from "
                    f"{WdvvRelation(template, system.vector, divisors, lhs, rhs)}"
                )
        elif lhs * n_value != rhs:
            raise IntegrityError(
                f"count {n_value} for {tuple(system.vector)} contradicts "
                f"{WdvvRelation(template, system.vector, divisors, lhs, rhs)}"
            )
        verified += 1
        if verified >= min_nonzero:
            return n_value
    if n_value is not None:
        raise UnderdeterminedClassError(
            f"class {tuple(target.vector)} solved but only {verified} of "
            f"{min_nonzero} requested nonzero-coefficient instances found "
            f"within the first {scanned} instances"
        )
    if target.degree == 2 and target.self_int == 0:
        # A degree-2 class of square zero moves in a pencil of conics;
        # exactly one member passes through a general point.
        logger.warning(
            "no usable relation instance for conic class %s; "
            "using the pencil count 1",
            tuple(target.vector),
        )
        return 1
    raise UnderdeterminedClassError(
        f"no relation instance with nonzero coefficient for "
        f"{tuple(target.vector)} within the first {scanned} instances"
    )


def check_class(
    target: CandidateClass,
    table: InvariantTable,
    *,
    required: int = 3,
) -> int:
    """Re-verify a stored count against ``required`` independent instances.

    Returns the number of nonzero-coefficient instances checked; raises
    :class:`IntegrityError` on any violated relation and
    :class:`UnderdeterminedClassError` if the full instance stream holds
    fewer than ``required`` usable instances.
    """
    n_value = table.count(target.vector)
    system = _WdvvSystem(target, table)
    scan = divisor_scan_set(target.vector.rank)
    verified = 0
    for template, divisors in _instances(target.degree, scan):
        lhs, rhs = system.evaluate(template, divisors)
        if lhs == 0:
            _check_vacuous(system, template, divisors, rhs)
            continue
        if lhs * n_value != rhs:
            raise IntegrityError(
                f"stored count {n_value} for {tuple(system.vector)} violates "
                f"{WdvvRelation(template, system.vector, divisors, lhs, rhs)}"
            )
        verified += 1
        if verified >= required:
            return verified
    raise UnderdeterminedClassError(
        f"only {verified} nonzero-coefficient instances exist for "
        f"{tuple(target.vector)}, needed {required}"
    )


@lru_cache(maxsize=None)
def chamber_orbits(r: int, e: int) -> tuple[tuple[LatticeVector, int], ...]:
    """Chamber representatives of the degree-``e`` candidates with the
    number of candidates each represents, sorted by representative."""
    groups: dict[LatticeVector, int] = {}
    for c in candidate_classes(r, e):
        rep = reduce_to_chamber(c.vector)[0] if r != ORACLE_RANK else c.vector
        groups[rep] = groups.get(rep, 0) + 1
    return tuple(sorted(groups.items(), key=lambda kv: kv[0].coeffs))


def solve_up_to(
    r: int,
    e_max: int,
    *,
    cache_path: str | os.PathLike[str] | None = None,
    instance_cap: int = DEFAULT_INSTANCE_CAP,
    extra_checks: int = DEFAULT_EXTRA_CHECKS,
    jobs: int = 1,
) -> InvariantTable:
    """Solve every candidate class of degree at most ``e_max``.

    Counts are constant on symmetry orbits, so one representative per
    chamber orbit is solved and the value is copied across the orbit.
    With ``cache_path`` the table is reloaded from and persisted to disk
    after each completed degree level.  ``jobs`` solves the
    representatives of a level concurrently; results are merged in a
    fixed order, so output is identical for any job count.
    """
    if r not in VALID_RANKS:
        raise RankMismatchError(f"unsupported rank {r}")
    if e_max < 1:
        raise ValueError("e_max must be positive")
    table = seed_table(r)
    if cache_path is not None:
        cached = load_cache(cache_path, r)
        if cached is not None:
            entries, solved_to = cached
            if solved_to >= table.max_solved_degree:
                table = InvariantTable(r, entries, solved_to)
    min_nonzero = 1 if r == ORACLE_RANK else 1 + extra_checks

    for e in range(table.max_solved_degree + 1, e_max + 1):
        groups = chamber_orbits(r, e)
        reps = [CandidateClass.from_vector(rep) for rep, _ in groups]

        def solve(rep: CandidateClass) -> int:
            return _solve_class(
                rep, table, instance_cap=instance_cap, min_nonzero=min_nonzero
            )

        if jobs > 1 and len(reps) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                values = list(pool.map(solve, reps))
        else:
            values = [solve(rep) for rep in reps]

        # Copy each representative value across its orbit.
        value_by_rep = {rep.vector: v for rep, v in zip(reps, values)}
        for c in candidate_classes(r, e):
            rep = (
                reduce_to_chamber(c.vector)[0]
                if r != ORACLE_RANK
                else c.vector
            )
            table.entries[c.vector] = value_by_rep[rep]
        table.max_solved_degree = e
        if cache_path is not None:
            save_cache(table, cache_path)
    return table


def save_cache(table: InvariantTable, path: str | os.PathLike[str]) -> None:
    """Write a table to disk atomically in a stable text format."""
    lines = [f"{CACHE_VERSION} r={table.r} solved_to={table.max_solved_degree}\n"]
    for v, n in table.sorted_entries():
        coeffs = ",".join(str(c) for c in v.coeffs)
        lines.append(f"{table.r}\t{coeffs}\t{degree(v)}\t{n}\n")
    directory = os.path.dirname(os.fspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="") as fh:
            fh.writelines(lines)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_cache(
    path: str | os.PathLike[str], r: int
) -> tuple[dict[LatticeVector, int], int] | None:
    """Load a cache file.

    Returns ``None`` when the file is absent or written for a different
    rank or format version (callers then recompute).  Structural damage
    raises :class:`CacheFormatError` instead of being silently dropped.
    """
    try:
        with open(path, "r", encoding="ascii", newline="") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        return None
    if not lines:
        raise CacheFormatError(f"cache file {path} is empty")
    header = lines[0]
    prefix = f"{CACHE_VERSION} r="
    if not header.startswith(CACHE_VERSION.split()[0]):
        raise CacheFormatError(f"cache file {path} has no recognizable header")
    if not header.startswith(prefix):
        return None  # other format version
    try:
        r_text, solved_text = header[len(prefix):].split(" solved_to=")
        header_r = int(r_text)
        solved_to = int(solved_text)
    except ValueError as exc:
        raise CacheFormatError(f"malformed cache header: {header!r}") from exc
    if header_r != r:
        return None
    entries: dict[LatticeVector, int] = {}
    for line in lines[1:]:
        parts = line.split("\t")
        if len(parts) != 4:
            raise CacheFormatError(f"malformed cache record: {line!r}")
        try:
            rec_r = int(parts[0])
            coeffs = tuple(int(x) for x in parts[1].split(","))
            rec_deg = int(parts[2])
            n = int(parts[3])
        except ValueError as exc:
            raise CacheFormatError(f"malformed cache record: {line!r}") from exc
        if rec_r != r or len(coeffs) != r + 1:
            raise CacheFormatError(f"cache record has wrong rank: {line!r}")
        v = LatticeVector(coeffs)
        if degree(v) != rec_deg:
            raise CacheFormatError(f"cache record degree mismatch: {line!r}")
        if n < 0:
            raise CacheFormatError(f"cache record has negative count: {line!r}")
        if rec_deg > solved_to:
            raise CacheFormatError(
                f"cache record beyond declared degree: {line!r}"
            )
        entries[v] = n
    return entries, solved_to
