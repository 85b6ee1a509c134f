"""Enumeration of candidate rational-curve classes.

A class ``v`` of anticanonical degree ``e`` can carry irreducible rational
curves only if it is exceptional (``e = 1``, ``v.v = -1``) or satisfies

    e >= 2,  v.v >= e - 2,  v . c >= 0 for every exceptional class c.

Both families are finite; they are enumerated from the bound that the
multiplicity vector (the negated ``l1..lr`` coordinates) must satisfy
Cauchy-Schwarz against the constraints on its sum and sum of squares.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator

from .errors import RankMismatchError
from .lattice import (
    ORACLE_RANK,
    SURFACE_RANKS,
    LatticeVector,
    basis_vector,
    degree,
    pair,
    self_intersection,
)


@dataclass(frozen=True)
class CandidateClass:
    """A curve class together with its degree and self-intersection."""

    vector: LatticeVector
    degree: int
    self_int: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("candidate classes have positive degree")
        if (self.degree + self.self_int) % 2:
            raise ValueError("degree and self-intersection must have equal parity")
        if self.degree == 1 and self.self_int != -1:
            raise ValueError("degree-one candidates are exceptional classes")
        if self.degree >= 2 and self.self_int < self.degree - 2:
            raise ValueError("self-intersection below the rational-curve bound")

    @classmethod
    def from_vector(cls, v: LatticeVector) -> "CandidateClass":
        return cls(v, degree(v), self_intersection(v))


def _signed_multiplicity_vectors(
    slots: int, total: int, sq_total: int
) -> Iterator[tuple[int, ...]]:
    """All integer tuples with the given length, sum, and sum of squares."""
    if slots == 0:
        if total == 0 and sq_total == 0:
            yield ()
        return
    # Cauchy-Schwarz: the remaining sum cannot exceed what the remaining
    # square budget allows.
    if total * total > slots * sq_total:
        return
    bound = isqrt(sq_total)
    for m in range(-bound, bound + 1):
        for rest in _signed_multiplicity_vectors(
            slots - 1, total - m, sq_total - m * m
        ):
            yield (m,) + rest


def _nonneg_multiplicity_vectors(
    slots: int, total: int, sq_budget: int
) -> Iterator[tuple[int, ...]]:
    """Nonnegative tuples with exact sum ``total`` and sum of squares at
    most ``sq_budget``."""
    if total < 0 or sq_budget < 0:
        return
    if slots == 0:
        if total == 0:
            yield ()
        return
    if total * total > slots * sq_budget:
        return
    top = min(total, isqrt(sq_budget))
    for m in range(top + 1):
        for rest in _nonneg_multiplicity_vectors(
            slots - 1, total - m, sq_budget - m * m
        ):
            yield (m,) + rest


@lru_cache(maxsize=None)
def exceptional_classes(r: int) -> tuple[CandidateClass, ...]:
    """All classes with degree 1 and self-intersection -1, sorted."""
    if r not in SURFACE_RANKS:
        raise RankMismatchError(f"exceptional classes need rank in {SURFACE_RANKS}")
    found = []
    # deg = 3a - sum(m) = 1 and a^2 - sum(m^2) = -1 force, via
    # Cauchy-Schwarz, (9 - r)a^2 - 6a + (1 - r) <= 0.
    a_top = (3 + isqrt(9 + (9 - r) * (r - 1))) // (9 - r)
    for a in range(0, a_top + 1):
        if (9 - r) * a * a - 6 * a + (1 - r) > 0:
            continue
        for ms in _signed_multiplicity_vectors(r, 3 * a - 1, a * a + 1):
            found.append(
                LatticeVector._make((a,) + tuple(-m for m in ms))
            )
    found.sort(key=lambda v: v.coeffs)
    return tuple(CandidateClass.from_vector(v) for v in found)


@lru_cache(maxsize=None)
def candidate_classes(r: int, e: int) -> tuple[CandidateClass, ...]:
    """Candidate curve classes of anticanonical degree ``e``, sorted.

    For the rank-1 cross-check lattice the only candidates are the
    multiples of ``l0`` (plane curves), present when 3 divides ``e``.
    """
    if e < 1:
        raise ValueError("degree must be positive")
    if r == ORACLE_RANK:
        if e % 3:
            return ()
        k = e // 3
        return (CandidateClass(k * basis_vector(1, 0), e, k * k),)
    if r not in SURFACE_RANKS:
        raise RankMismatchError(f"unsupported rank {r}")
    if e == 1:
        return exceptional_classes(r)

    exceptional = [c.vector for c in exceptional_classes(r)]
    found = []
    # Nonnegativity against the l_i exceptional classes forces m_i >= 0,
    # so enumerate those directly; the remaining constraints are
    # sum(m) = 3a - e and sum(m^2) <= a^2 - e + 2 (from v.v >= e - 2).
    # Cauchy-Schwarz then bounds a by (3e + sqrt(disc)) / (9 - r) with
    # disc = 9e^2 - (9 - r)(e^2 + re - 2r); the integer floor below is
    # exact because the numerator is an integer plus a proper fraction.
    disc = 9 * e * e - (9 - r) * (e * e + r * e - 2 * r)
    if disc < 0:
        return ()
    a_top = (3 * e + isqrt(disc)) // (9 - r)
    for a in range((e + 2) // 3, a_top + 1):
        sq_budget = a * a - e + 2
        for ms in _nonneg_multiplicity_vectors(r, 3 * a - e, sq_budget):
            v = LatticeVector._make((a,) + tuple(-m for m in ms))
            if all(pair(v, c) >= 0 for c in exceptional):
                found.append(v)
    found.sort(key=lambda v: v.coeffs)
    return tuple(CandidateClass.from_vector(v) for v in found)


@lru_cache(maxsize=None)
def candidate_vectors(r: int, e: int) -> frozenset[LatticeVector]:
    """The candidate classes of degree ``e`` as a set of lattice vectors."""
    return frozenset(c.vector for c in candidate_classes(r, e))
