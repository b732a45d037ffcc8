from fractions import Fraction

import pytest

from services.enumeration.golden import build_surface, golden_pair, golden_row
from services.errors import NonLogCanonical, SingularSystem
from services.intersection_theory import linear_algebra, service
from services.intersection_theory.models import Divisor
from services.pair_predicates.models import LogPair

F = Fraction


def test_solve_exact():
    matrix = linear_algebra.as_fraction_array([[2, 1], [1, 3]])
    assert list(linear_algebra.solve(matrix, [3, 5])) == [F(4, 5), F(7, 5)]


def test_solve_singular():
    with pytest.raises(SingularSystem):
        linear_algebra.solve(linear_algebra.as_fraction_array([[1, 2], [2, 4]]), [1, 1])


def test_determinant_and_definiteness():
    a2 = linear_algebra.as_fraction_array([[-2, 1], [1, -2]])
    assert linear_algebra.determinant(a2) == 3
    assert linear_algebra.is_negative_definite(a2)
    assert not linear_algebra.is_negative_definite(linear_algebra.as_fraction_array([[-1, 2], [2, -1]]))
    assert not linear_algebra.is_negative_definite(linear_algebra.as_fraction_array([[0]]))


def test_divisor_arithmetic():
    d = Divisor({"C": 1, "L": F(1, 2)}, canonical=1)
    assert (d - d).components == {}
    assert (2 * d).coefficient("L") == 1
    assert (d + Divisor({"C": -1})).support == ["L"]


def test_canonical_degree_by_adjunction(seed):
    g = seed.graph
    assert service.canonical_degree(g, "C") == -8
    assert service.canonical_degree(g, "S") == 0
    assert service.canonical_degree(g, "F1") == -2


def test_crepant_pullback_of_a1(chain_pair):
    crepant = service.crepant_pullback(chain_pair(2, 1))
    assert crepant.coefficient("E1") == F(3, 7)
    assert crepant.log_discrepancy("E1") == F(4, 7)


def test_crepant_pullback_of_7_3(chain_pair):
    crepant = service.crepant_pullback(chain_pair(7, 3))
    assert crepant.log_discrepancy("E1") == F(11, 49)


def test_crepant_pullback_non_lc(make_graph):
    g = make_graph([("C", 4), ("A", -2)], [("C", "A", 3)])
    p = LogPair(g)
    assert service.crepant_pullback(p).non_log_canonical == ["A"]
    with pytest.raises(NonLogCanonical):
        service.crepant_pullback(p, raise_non_lc=True)


def test_pushforward_self_intersection_on_row_3():
    p = LogPair(build_surface("G1"))
    assert service.pushforward_self_intersection(p, "E2") == F(1, 6)
    assert service.pushforward_self_intersection(p, "C") == 6


def test_is_cartier(chain_pair):
    p = chain_pair(2, 1)
    assert not service.is_cartier(p, Divisor({"C": 1}))
    assert service.is_cartier(p, Divisor({"C": 2}))


def test_relations_of_row_3():
    report = service.verify_relations(
        LogPair(build_surface("G1")),
        [
            ("-K", Divisor({}, canonical=-1), F(1)),
            ("C", Divisor({"C": 1}), F(1)),
            ("C2", Divisor({"E2": 1}), F(1, 6)),
        ],
    )
    assert report.h_squared == 6
    assert report.consistent


def test_relations_detect_wrong_fraction():
    report = service.verify_relations(
        LogPair(build_surface("G1")),
        [("C", Divisor({"C": 1}), F(1)), ("C2", Divisor({"E2": 1}), F(1, 5))],
    )
    assert not report.consistent


def test_relations_of_row_5():
    row = golden_row(5)
    p = golden_pair(row, row.options[0])
    report = service.verify_relations(
        p,
        [
            ("-K", Divisor({}, canonical=-1), F(9, 15)),
            ("C", Divisor({"C": 1}), F(10, 15)),
            ("C2", Divisor({row.vertex_of("C2"): 1}), F(1, 15)),
        ],
    )
    assert report.consistent
