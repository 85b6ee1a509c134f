"""Picard lattices of blown-up projective planes.

The lattice of rank ``r + 1`` has an orthogonal basis ``l0, l1, ..., lr``
with ``l0 . l0 = 1`` and ``li . li = -1`` for ``i >= 1``.  Curve classes are
integer vectors in this basis.  The anticanonical direction is

    omega = -3*l0 + l1 + ... + lr,

whose self-intersection ``9 - r`` equals the degree of the surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import RankMismatchError

#: Ranks of the surfaces the solver fully supports (degree 9 - r in 2..5).
SURFACE_RANKS = (4, 5, 6, 7)

#: Rank used only for cross-checking against plane-curve counts.
ORACLE_RANK = 1

VALID_RANKS = (ORACLE_RANK,) + SURFACE_RANKS


class LatticeVector:
    """An integer vector ``a*l0 + b1*l1 + ... + br*lr``.

    Immutable and hashable; arithmetic stays inside the lattice of the
    operands and mixing ranks raises :class:`RankMismatchError`.
    """

    __slots__ = ("coeffs", "_hash")

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        cs = tuple(coeffs)
        if len(cs) - 1 not in VALID_RANKS:
            raise RankMismatchError(
                f"vector length {len(cs)} does not match a supported rank"
            )
        if not all(isinstance(c, int) for c in cs):
            raise TypeError("lattice coordinates must be ints")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "_hash", hash(cs))

    @classmethod
    def _make(cls, cs: tuple[int, ...]) -> "LatticeVector":
        # Fast path for internal call sites that already hold a valid tuple.
        v = object.__new__(cls)
        object.__setattr__(v, "coeffs", cs)
        object.__setattr__(v, "_hash", hash(cs))
        return v

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LatticeVector is immutable")

    @property
    def rank(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        a, b = self.coeffs, other.coeffs
        if len(a) != len(b):
            raise RankMismatchError("cannot add vectors of different ranks")
        return LatticeVector._make(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        a, b = self.coeffs, other.coeffs
        if len(a) != len(b):
            raise RankMismatchError("cannot subtract vectors of different ranks")
        return LatticeVector._make(tuple(x - y for x, y in zip(a, b)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector._make(tuple(-x for x in self.coeffs))

    def __mul__(self, k: int) -> "LatticeVector":
        if not isinstance(k, int):
            return NotImplemented
        return LatticeVector._make(tuple(k * x for x in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeVector):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __lt__(self, other: "LatticeVector") -> bool:
        # Lexicographic order on coordinates; used only to get stable output.
        return self.coeffs < other.coeffs

    def __hash__(self) -> int:
        return self._hash

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __repr__(self) -> str:
        return f"LatticeVector({list(self.coeffs)!r})"


def basis_vector(r: int, i: int) -> LatticeVector:
    """The ``i``-th basis vector of the rank ``r + 1`` lattice."""
    if r not in VALID_RANKS:
        raise RankMismatchError(f"unsupported rank {r}")
    if not 0 <= i <= r:
        raise IndexError(f"basis index {i} out of range for rank {r}")
    return LatticeVector._make(tuple(1 if j == i else 0 for j in range(r + 1)))


@lru_cache(maxsize=None)
def canonical_class(r: int) -> LatticeVector:
    """``omega = -3*l0 + l1 + ... + lr`` (the canonical direction)."""
    if r not in VALID_RANKS:
        raise RankMismatchError(f"unsupported rank {r}")
    return LatticeVector._make((-3,) + (1,) * r)


def pair(u: LatticeVector, v: LatticeVector) -> int:
    """Intersection pairing: ``u0*v0 - u1*v1 - ... - ur*vr``."""
    a, b = u.coeffs, v.coeffs
    if len(a) != len(b):
        raise RankMismatchError("cannot pair vectors of different ranks")
    total = a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        total -= x * y
    return total


def degree(v: LatticeVector) -> int:
    """Anticanonical degree ``-omega . v = 3*a + b1 + ... + br``."""
    cs = v.coeffs
    return 3 * cs[0] + sum(cs[1:])


def self_intersection(v: LatticeVector) -> int:
    return pair(v, v)


def discriminant(v: LatticeVector) -> int:
    """``degree(v)**2 - (9 - r) * v.v``.

    Equals ``-(9 - r)`` times the self-intersection of the component of
    ``v`` orthogonal to omega, so it is nonnegative and vanishes exactly
    on rational multiples of omega.
    """
    d = degree(v)
    return d * d - (9 - v.rank) * pair(v, v)


def is_canonical_multiple(v: LatticeVector) -> bool:
    """True when ``v`` is proportional to omega (including the zero vector)."""
    # v = t*omega forces t = -degree(v) / (9 - r); clear denominators and
    # compare coordinatewise so everything stays in integers.
    r = v.rank
    d = degree(v)
    omega = canonical_class(r)
    return all((9 - r) * x == -d * w for x, w in zip(v.coeffs, omega.coeffs))


@dataclass(frozen=True)
class PicardLattice:
    """Rank, surface degree, and canonical direction bundled together."""

    r: int
    d: int
    omega: LatticeVector

    def __post_init__(self) -> None:
        if self.r not in VALID_RANKS:
            raise RankMismatchError(f"unsupported rank {self.r}")
        if self.d != 9 - self.r:
            raise ValueError(f"degree {self.d} inconsistent with rank {self.r}")
        if self.omega != canonical_class(self.r):
            raise ValueError("wrong canonical direction")

    @classmethod
    def for_rank(cls, r: int) -> "PicardLattice":
        return cls(r, 9 - r, canonical_class(r))

    @classmethod
    def for_degree(cls, d: int) -> "PicardLattice":
        return cls.for_rank(9 - d)

    def basis(self) -> tuple[LatticeVector, ...]:
        return tuple(basis_vector(self.r, i) for i in range(self.r + 1))

    def gram_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.r + 1
        return tuple(
            tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n))
            for i in range(n)
        )


def max_interpolation_points(n: int, e: int) -> int:
    """Largest number of general points a degree-``e`` rational curve family
    in ``P^n`` can be asked to pass through.

    The family of such curves has dimension ``(n + 1)e + n - 3`` and each
    point condition costs ``n - 1``, but for ``n = 2`` one point is lost to
    the curve moving inside a pencil; the uniform value is
    ``((n - 1)e - 2) // (n - 1) + 1``.
    """
    if n < 2 or e < 1:
        raise ValueError("need n >= 2 and e >= 1")
    return e if n >= 3 else e - 1


def normal_bundle_splitting(n: int, e: int) -> tuple[int, ...]:
    """Splitting type of the normal bundle of a general rational curve of
    degree ``e`` in ``P^n`` (``n >= 3``), as twists of O(1)... totalling
    ``(n - 1)e - 2``.
    """
    if n < 3 or e < 1:
        raise ValueError("need n >= 3 and e >= 1")
    return (e - 1, e - 1) + (e,) * (n - 3)
