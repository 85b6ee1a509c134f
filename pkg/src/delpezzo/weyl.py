"""Symmetries of the Picard lattice fixing the canonical direction.

The reflections through the simple roots

    alpha_0 = l0 - l1 - l2 - l3,
    alpha_i = l_i - l_{i+1}        (1 <= i <= r - 1)

generate a finite group acting on the lattice and fixing omega.  This
module provides reflections, orbit enumeration, reduction to the
fundamental chamber, group and stabilizer orders, and two structural
computations used by the verification suite: the dimension of the space
of invariant symmetric bilinear forms, and the saturated invariant
subgroup generated by the orbit of a vector.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    IntegrityError,
    OrbitCapExceededError,
    RankMismatchError,
    ReductionStepLimitError,
    RootError,
)
from .lattice import (
    SURFACE_RANKS,
    VALID_RANKS,
    LatticeVector,
    basis_vector,
    canonical_class,
    degree,
    pair,
)

#: Hard ceiling on orbit sizes; the largest orbit that actually occurs in
#: the solver (rank 7) has 2903040 / 2 elements, far below this.
DEFAULT_ORBIT_CAP = 10_000_000

_REDUCTION_STEP_LIMIT = 100_000


@lru_cache(maxsize=None)
def simple_roots(r: int) -> tuple[LatticeVector, ...]:
    """Simple roots indexed 0..r-1; empty for the rank-1 oracle lattice."""
    if r not in VALID_RANKS:
        raise RankMismatchError(f"unsupported rank {r}")
    if r == 1:
        return ()
    roots = [LatticeVector._make((1, -1, -1, -1) + (0,) * (r - 3))]
    for i in range(1, r):
        cs = [0] * (r + 1)
        cs[i] = 1
        cs[i + 1] = -1
        roots.append(LatticeVector._make(tuple(cs)))
    return tuple(roots)


@dataclass(frozen=True)
class WeylContext:
    r: int
    roots: tuple[LatticeVector, ...]

    @classmethod
    def for_rank(cls, r: int) -> "WeylContext":
        return cls(r, simple_roots(r))


def reflect(v: LatticeVector, root: LatticeVector) -> LatticeVector:
    """Reflection of ``v`` through a root (norm -2, degree 0)."""
    if pair(root, root) != -2 or degree(root) != 0:
        raise RootError(f"{root!r} is not a root")
    return v + pair(v, root) * root


def _orbit_bfs(
    start: LatticeVector,
    roots: Sequence[LatticeVector],
    cap: int,
) -> frozenset[LatticeVector]:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for root in roots:
            k = pair(v, root)
            if k == 0:
                continue
            w = v + k * root
            if w not in seen:
                if len(seen) >= cap:
                    raise OrbitCapExceededError(
                        f"orbit exceeded cap of {cap} vectors"
                    )
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def orbit(
    v: LatticeVector,
    ctx: WeylContext | None = None,
    cap: int = DEFAULT_ORBIT_CAP,
) -> frozenset[LatticeVector]:
    """The full orbit of ``v`` under the reflection group."""
    if ctx is None:
        ctx = WeylContext.for_rank(v.rank)
    if ctx.r != v.rank:
        raise RankMismatchError("vector rank does not match context")
    return _orbit_bfs(v, ctx.roots, cap)


def _dual_vector(roots: Sequence[LatticeVector], j: int) -> LatticeVector:
    """An integer vector orthogonal to omega pairing to a negative number
    with ``roots[j]`` and to zero with every other listed root.

    Solves the Gram system exactly over the rationals in the root basis,
    then clears denominators.
    """
    n = len(roots)
    gram = [[Fraction(pair(a, b)) for b in roots] for a in roots]
    rhs = [Fraction(-1) if i == j else Fraction(0) for i in range(n)]
    # Gaussian elimination; the Gram matrix of independent roots in a
    # negative-definite sublattice is invertible.
    for col in range(n):
        piv = next(row for row in range(col, n) if gram[row][col] != 0)
        gram[col], gram[piv] = gram[piv], gram[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / gram[col][col]
        gram[col] = [x * inv for x in gram[col]]
        rhs[col] *= inv
        for row in range(n):
            if row != col and gram[row][col] != 0:
                f = gram[row][col]
                gram[row] = [x - f * y for x, y in zip(gram[row], gram[col])]
                rhs[row] -= f * rhs[col]
    denom = 1
    for c in rhs:
        denom = denom * c.denominator // _gcd(denom, c.denominator)
    coords = [int(c * denom) for c in rhs]
    out = LatticeVector._make((0,) * (roots[0].rank + 1))
    for c, root in zip(coords, roots):
        out = out + c * root
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def _tower_order(roots: tuple[LatticeVector, ...]) -> int:
    """Order of the reflection group generated by ``roots``.

    Computed as orbit size times stabilizer order: pick a vector whose
    stabilizer is the group generated by all but the last root (it pairs
    to zero with those and nontrivially with the last), and recurse.
    """
    if not roots:
        return 1
    lam = _dual_vector(roots, len(roots) - 1)
    if pair(lam, roots[-1]) >= 0:
        raise IntegrityError("dual vector solved with the wrong sign")
    orb = _orbit_bfs(lam, roots, DEFAULT_ORBIT_CAP)
    return len(orb) * _tower_order(roots[:-1])


def group_order(ctx: WeylContext) -> int:
    """Order of the full reflection group for this rank."""
    if ctx.r == 1:
        return 1
    if ctx.r not in SURFACE_RANKS:
        raise RankMismatchError(f"unsupported rank {ctx.r}")
    return _tower_order(ctx.roots)


def in_chamber(v: LatticeVector) -> bool:
    """True when ``v`` pairs nonnegatively with every simple root."""
    return all(pair(v, root) >= 0 for root in simple_roots(v.rank))


def reduce_to_chamber(
    v: LatticeVector,
) -> tuple[LatticeVector, tuple[int, ...]]:
    """Move ``v`` into the fundamental chamber by simple reflections.

    Returns the chamber representative and the word of simple-root
    indices applied, in order.  Requires positive degree: each firing of
    alpha_0 strictly decreases the leading coordinate while the degree is
    preserved, which bounds the walk only on the positive-degree side.
    """
    if degree(v) <= 0:
        raise ValueError("chamber reduction needs a positive-degree vector")
    r = v.rank
    roots = simple_roots(r)
    word: list[int] = []
    steps = 0
    while True:
        fired = False
        # Sorting passes over the chain roots first keeps words short and
        # the alpha_0 test then sees the three smallest multiplicities.
        for i in range(1, r):
            if pair(v, roots[i]) < 0:
                v = reflect(v, roots[i])
                word.append(i)
                fired = True
                steps += 1
        if r >= 4 and pair(v, roots[0]) < 0:
            v = reflect(v, roots[0])
            word.append(0)
            fired = True
            steps += 1
        if not fired:
            return v, tuple(word)
        if steps > _REDUCTION_STEP_LIMIT:
            raise ReductionStepLimitError(
                f"no chamber representative after {steps} reflections"
            )


def stabilizer_order(v: LatticeVector, ctx: WeylContext | None = None) -> int:
    if ctx is None:
        ctx = WeylContext.for_rank(v.rank)
    total = group_order(ctx)
    n = len(orbit(v, ctx))
    if total % n:
        raise IntegrityError("orbit size does not divide the group order")
    return total // n


@dataclass(frozen=True)
class OrbitSummary:
    representative: LatticeVector
    orbit_size: int
    stabilizer_order: int


def orbit_summary(v: LatticeVector, ctx: WeylContext | None = None) -> OrbitSummary:
    if ctx is None:
        ctx = WeylContext.for_rank(v.rank)
    orb = orbit(v, ctx)
    rep = reduce_to_chamber(v)[0] if degree(v) > 0 else min(orb)
    total = group_order(ctx)
    if total % len(orb):
        raise IntegrityError("orbit size does not divide the group order")
    return OrbitSummary(rep, len(orb), total // len(orb))


def invariant_bilinear_dimension(
    ctx: WeylContext, *, full_lattice: bool = False
) -> int:
    """Dimension of the space of symmetric bilinear forms invariant under
    every generating reflection.

    With ``full_lattice=False`` the form lives on the span of the simple
    roots (the orthogonal complement of omega), where invariance pins it
    down up to scale.  With ``full_lattice=True`` it lives on the whole
    lattice and the omega-direction contributes one more degree of
    freedom.
    """
    roots = ctx.roots
    if not roots:
        # Rank 1: no generators, so every form is invariant; the root
        # span is the zero lattice.
        return 3 if full_lattice else 0
    if full_lattice:
        basis = [basis_vector(ctx.r, i) for i in range(ctx.r + 1)]
    else:
        basis = list(roots)
    n = len(basis)

    # Matrix of each generator in the chosen basis: s_j(basis_i) expanded
    # back over the basis.  For the root basis this expansion is integral
    # because s_j(alpha_i) = alpha_i + pair(alpha_i, alpha_j) * alpha_j.
    mats = []
    for j, root in enumerate(roots):
        cols = []
        for i, b in enumerate(basis):
            if full_lattice:
                img = reflect(b, root)
                cols.append(list(img.coeffs))
            else:
                col = [0] * n
                col[i] += 1
                col[j] += pair(basis[i], root)
                cols.append(col)
        # cols[i][k] = coefficient of basis_k in s_j(basis_i)
        mats.append(cols)

    # Unknowns: entries M[p][q] for p <= q.  Invariance S^T M S = M gives
    # one linear constraint per generator and matrix position.
    idx = {}
    for p in range(n):
        for q in range(p, n):
            idx[(p, q)] = len(idx)
    nvars = len(idx)

    def entry(p: int, q: int) -> int:
        return idx[(p, q)] if p <= q else idx[(q, p)]

    rows: list[list[Fraction]] = []
    for cols in mats:
        for p in range(n):
            for q in range(p, n):
                row = [Fraction(0)] * nvars
                # (S^T M S)[p][q] = sum_{k,m} S[k][p] M[k][m] S[m][q]
                for k in range(n):
                    skp = cols[p][k]
                    if not skp:
                        continue
                    for m in range(n):
                        smq = cols[q][m]
                        if smq:
                            row[entry(k, m)] += skp * smq
                row[entry(p, q)] -= 1
                if any(row):
                    rows.append(row)

    rank = _matrix_rank(rows, nvars)
    return nvars - rank


def _matrix_rank(rows: list[list[Fraction]], width: int) -> int:
    rank = 0
    col = 0
    rows = [row[:] for row in rows]
    while rank < len(rows) and col < width:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


class SaturationType(Enum):
    MULTIPLES_OF_OMEGA = "multiples_of_omega"
    FULL_LATTICE = "full_lattice"


class _Echelon:
    """Incremental integer echelon form over the rationals; tracks rank."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def add(self, vec: Iterable[int]) -> bool:
        """Insert a vector; return True when it enlarged the span."""
        row = [Fraction(x) for x in vec]
        for prow, pcol in zip(self.rows, self.pivots):
            if row[pcol]:
                f = row[pcol]
                row = [x - f * y for x, y in zip(row, prow)]
        pcol = next((i for i, x in enumerate(row) if x), None)
        if pcol is None:
            return False
        inv = 1 / row[pcol]
        self.rows.append([x * inv for x in row])
        self.pivots.append(pcol)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def saturated_invariant_subgroup(
    v: LatticeVector,
    ctx: WeylContext | None = None,
    cap: int = DEFAULT_ORBIT_CAP,
) -> SaturationType:
    """Classify the saturation of the subgroup generated by omega together
    with the orbit of ``v``.

    Because the generating set is stable under the reflection group and
    contains omega, its saturation is an invariant primitive sublattice;
    the only possibilities are the rank-one lattice of omega-multiples
    (exactly when ``v`` is itself proportional to omega) and the full
    lattice.
    """
    from .lattice import is_canonical_multiple  # local to avoid cycle noise

    if ctx is None:
        ctx = WeylContext.for_rank(v.rank)
    if ctx.r != v.rank:
        raise RankMismatchError("vector rank does not match context")
    ech = _Echelon(v.rank + 1)
    ech.add(canonical_class(v.rank).coeffs)

    seen = {v}
    queue = deque([v])
    ech.add(v.coeffs)
    if ech.rank == v.rank + 1:
        return SaturationType.FULL_LATTICE
    while queue:
        u = queue.popleft()
        for root in ctx.roots:
            k = pair(u, root)
            if k == 0:
                continue
            w = u + k * root
            if w not in seen:
                if len(seen) >= cap:
                    raise OrbitCapExceededError(
                        f"orbit exceeded cap of {cap} vectors"
                    )
                seen.add(w)
                queue.append(w)
                if ech.add(w.coeffs) and ech.rank == v.rank + 1:
                    return SaturationType.FULL_LATTICE
    if is_canonical_multiple(v):
        return SaturationType.MULTIPLES_OF_OMEGA
    raise IntegrityError(
        "orbit span is a proper invariant sublattice larger than the "
        "omega line; this contradicts irreducibility of the root system"
    )
