import random
from fractions import Fraction

import pytest

from delpezzo import (
    basis_vector,
    candidate_classes,
    canonical_class,
    chamber_orbits,
    kappa,
    lines_through_point_closed_form,
    lines_through_point_lattice,
    orbit,
    pencil_incidence_count,
    seed_table,
    threefold_invariant,
)

LINE_COUNTS = {2: 12, 3: 6, 4: 4, 5: 3}


def test_line_counts_both_routes():
    for d, n in LINE_COUNTS.items():
        assert lines_through_point_closed_form(d) == n
        assert lines_through_point_lattice(d) == n


def test_kappa_values():
    assert kappa(2) == Fraction(1, 14)
    assert kappa(3) == Fraction(1, 18)
    assert kappa(4) == Fraction(1, 20)
    assert kappa(5) == Fraction(1, 20)
    with pytest.raises(ValueError):
        kappa(6)


def test_degree_one_reduction_is_the_line_count():
    for d, n in LINE_COUNTS.items():
        report = threefold_invariant(d, 1, seed_table(9 - d))
        assert report.value == n
        assert len(report.breakdown) == 1
        part = report.breakdown[0]
        assert part.orbit_size == len(candidate_classes(9 - d, 1))
        assert part.discriminant == d + 1
        assert part.surface_count == 1


def test_invariants_low_degrees(tables):
    expected = {
        (5, 1): 3, (5, 2): 1, (5, 3): 1, (5, 4): 3,
        (4, 1): 4, (4, 2): 2, (4, 3): 4,
        (3, 1): 6, (3, 2): 6, (3, 3): 24,
        (2, 1): 12, (2, 2): 36,
    }
    for (d, e), value in expected.items():
        assert threefold_invariant(d, e, tables[9 - d]).value == value


def test_breakdown_sums_to_value(tables):
    for d in (2, 3, 4, 5):
        for e in (1, 2, 3, 4):
            report = threefold_invariant(d, e, tables[9 - d])
            total = sum((c.contribution for c in report.breakdown), Fraction(0))
            assert total == report.value
            assert report.value >= 0


def test_requires_matching_table(tables):
    with pytest.raises(ValueError):
        threefold_invariant(2, 1, tables[4])
    with pytest.raises(LookupError, match="solve_up_to"):
        threefold_invariant(5, 9, tables[4])
    with pytest.raises(ValueError):
        threefold_invariant(7, 1, tables[4])


def test_pencil_incidence_for_lines_and_omega():
    for d, n in LINE_COUNTS.items():
        r = 9 - d
        line = candidate_classes(r, 1)[0].vector
        assert pencil_incidence_count(d, line) == n
        for k in (1, 2):
            assert pencil_incidence_count(d, k * canonical_class(r)) == 0


def test_pencil_incidence_is_orbit_invariant():
    rng = random.Random(13)
    for d in (3, 5):
        r = 9 - d
        for e in (2, 3):
            for rep, _ in chamber_orbits(r, e):
                members = sorted(orbit(rep))
                picks = rng.sample(members, min(3, len(members)))
                values = {pencil_incidence_count(d, v) for v in picks}
                assert values == {pencil_incidence_count(d, rep)}


def test_pencil_incidence_integrality(tables):
    from delpezzo import discriminant

    for d in (2, 3, 4, 5):
        r = 9 - d
        for e in (1, 2, 3, 4):
            for rep, size in chamber_orbits(r, e):
                value = pencil_incidence_count(d, rep)
                assert isinstance(value, int) and value >= 0
                assert Fraction(value) == kappa(d) * discriminant(rep) * size


def test_invariant_rejects_bad_degrees(tables):
    with pytest.raises(ValueError):
        threefold_invariant(5, 0, tables[4])
    with pytest.raises(ValueError):
        lines_through_point_closed_form(1)
