from fractions import Fraction

import pytest

from services.enumeration import exclusions
from services.enumeration import service
from services.enumeration.golden import build_surface
from services.enumeration.models import RejectionLog, SearchState, SectionPattern
from services.errors import ClassificationError, OutOfRange
from services.graph_core import service as graph_service
from services.intersection_theory import service as intersection_service
from services.pair_predicates import service as pair_service
from services.pair_predicates.models import SIX_SEVENTHS, LogPair

F = Fraction


def test_seed(seed):
    assert seed.c_squared == 8
    assert seed.s_c_label == service.SEED_LABEL
    assert service.assess(seed) is None


def test_initial_fibre_moves(seed):
    first, second, third = service.initial_fibre_moves(seed)
    assert first.s_c_label == "A1+A2"
    assert second.s_c_label == service.TYPE_II_LABEL
    assert first.c_squared == 6 and second.c_squared == 7 and third.c_squared == 8
    assert service.assess(first) is None
    assert service.assess(second) is None
    assert service.assess(third) == service.REASON_NON_LC


def test_initial_moves_reproduce_table_surfaces(seed):
    first, second, _ = service.initial_fibre_moves(seed)
    assert graph_service.canonical_form(first.graph) == graph_service.canonical_form(build_surface("G1"))
    assert graph_service.canonical_form(second.graph) == graph_service.canonical_form(build_surface("R2"))


def test_type1_extension_labels(seed):
    first = service.initial_fibre_moves(seed)[0]
    children = service.extend_type1(first)
    assert [child.s_c_label for child in children] == ["A4"]
    assert children[0].c_squared == 5


def test_pruned_extensions_record_rejections(seed):
    log = RejectionLog()
    first = service.initial_fibre_moves(seed)[0]
    kept = service.extend_type2(first, prune=True, log=log)
    assert all(service.assess(child) is None for child in kept)
    assert sum(log.counts.values()) + len(kept) == len(service.extend_type2(first))


def test_assess_rejects_exceptional_curves_that_are_not_negative_definite(make_graph):
    g = make_graph([("C", 6), ("A", -2), ("B", -2)], [("A", "B", 2)], blowup_count=1)
    st = SearchState(LogPair(g), ("two (-2)-curves meeting twice",))
    assert service.assess(st) == service.REASON_NOT_NEGATIVE_DEFINITE


def test_search_accepts_21_states(search_result):
    assert len(search_result.accepted) == 21
    assert search_result.accepted[0].provenance == ("seed F2",)
    assert search_result.rejections.counts[service.REASON_NON_LC] > 0


def test_search_states_are_consistent(search_result):
    for st in search_result.accepted:
        g = st.graph
        if g.black_ids():
            assert intersection_service.exceptional_matrix(g).is_negative_definite()
        lhs, rhs = pair_service.zhang_count(st.pair)
        assert lhs == rhs
        assert pair_service.lemma22_bounds(st.pair) == []


def test_search_is_independent_of_parallelism(search_result):
    parallel = service.search(parallelism=3)
    forms = [graph_service.canonical_form(st.graph) for st in search_result.accepted]
    assert [graph_service.canonical_form(st.graph) for st in parallel.accepted] == forms


def test_search_state_bound():
    with pytest.raises(ClassificationError) as exc:
        service.search(max_states=5)
    assert exc.value.code == "state_bound"


def test_search_visits_are_accounted_for(search_result):
    rejected = sum(search_result.rejections.counts.values())
    assert search_result.visited == len(search_result.accepted) + rejected
    assert search_result.duplicates > 0


def test_search_counts_are_reproducible(search_result):
    parallel = service.search(parallelism=2)
    assert parallel.visited == search_result.visited
    assert parallel.duplicates == search_result.duplicates
    assert parallel.rejections.counts == search_result.rejections.counts


def _built_by_chain_moves(st: SearchState) -> bool:
    moves = st.provenance[1:]
    return bool(moves) and all(m.startswith("(I)") or m.startswith("type 1") for m in moves)


def test_case1_surfaces_are_the_six_gorenstein_resolutions(search_result):
    found = {graph_service.canonical_form(st.graph) for st in search_result.accepted if _built_by_chain_moves(st)}
    expected = {graph_service.canonical_form(build_surface(f"G{i}")) for i in range(1, 7)}
    assert found == expected
    labels = {st.s_c_label for st in search_result.accepted if _built_by_chain_moves(st)}
    assert labels == {"A1+A2", "A4", "D5", "E6", "A3+2A1", "A5+A1"}


def test_zhang_count_holds_at_every_generated_child(search_result):
    for st in search_result.accepted:
        for child in service.expand(st):
            lhs, rhs = pair_service.zhang_count(child.pair)
            assert lhs == rhs, child.provenance


def _negative_definite(g) -> bool:
    return not g.black_ids() or intersection_service.exceptional_matrix(g).is_negative_definite()


def test_max_b_reaches_six_sevenths_exactly_when_ex1_holds(search_result):
    checked = set()
    for st in search_result.accepted:
        for child in [st] + service.expand(st):
            if not _negative_definite(child.graph):
                continue
            p = child.pair
            assert (pair_service.max_b(p) >= SIX_SEVENTHS) == pair_service.check_ex1(p)
            checked.add(pair_service.check_ex1(p))
    assert checked == {True, False}


def test_emitted_pairs_push_curves_forward_to_non_negative_squares(search_result):
    for st in search_result.accepted[1:]:
        for p in service.assign_boundaries(st):
            for v in p.graph.ids:
                if v not in p.exceptional_ids:
                    assert intersection_service.pushforward_self_intersection(p, v) >= 0, (st.provenance, v)


def test_assign_boundaries_over_s_a1_a2():
    st = SearchState(LogPair(build_surface("G1")), ("G1",), "A1+A2")
    pairs = service.assign_boundaries(st)
    assert sorted(p.boundary["E2"] for p in pairs) == [F(1, 2), F(2, 3), F(3, 4), F(4, 5), F(5, 6)]


def test_assign_boundaries_skips_the_seed(seed):
    assert service.assign_boundaries(seed) == []


def test_smooth_fibre_gives_positive_degree():
    st = SearchState(LogPair(build_surface("G1")))
    assert service.smooth_fibre_degree(st) > 0


# Exceptional sections


def test_section_coefficient_bound():
    assert exclusions.section_coefficient_bound(1) == F(2, 7)
    assert exclusions.section_coefficient_bound(2) == F(1, 7)
    with pytest.raises(OutOfRange):
        exclusions.section_coefficient_bound(0)


def test_blowups_on_c():
    assert exclusions.blowups_on_c(SectionPattern((4,))) == 4
    assert exclusions.blowups_on_c(SectionPattern((3, 1))) == 5
    assert exclusions.blowups_on_c(SectionPattern((1, 1, 1, 1))) == 8
    assert exclusions.separation_blowups([SectionPattern((4,)), SectionPattern((4,))]) == 6


def test_section_state_checks_contacts():
    with pytest.raises(OutOfRange):
        exclusions.section_state([SectionPattern((3,))])
    with pytest.raises(OutOfRange):
        SectionPattern((0, 4))


def _decision(*patterns):
    return exclusions.case2_case3_filters(exclusions.section_state(list(patterns)))


def test_three_one_contact_cannot_reach_3a2():
    decision = _decision(SectionPattern((3, 1)))
    assert not decision.accepted
    assert decision.reason == exclusions.REASON_3A2
    assert decision.c_squared == 3


def test_two_two_contact_violates_ex4():
    decision = _decision(SectionPattern((2, 2)))
    assert not decision.accepted
    assert decision.reason == exclusions.REASON_EX4
    assert decision.c_squared == 4


def test_multiplicity_four_reduces():
    decision = _decision(SectionPattern((4,)))
    assert decision.reason == exclusions.REASON_REDUCES
    assert decision.reduced.s_c_label == "A3+2A1"
    assert decision.reduced.c_squared == 4


def test_case3_and_multisections():
    assert _decision(SectionPattern((4,)), SectionPattern((4,))).reason == exclusions.REASON_CASE3
    assert _decision(SectionPattern((8,), degree=2)).reason == exclusions.REASON_MULTISECTION
    assert _decision(SectionPattern((6,), meets_sigma=True)).reason == exclusions.REASON_MULTISECTION
    assert _decision(SectionPattern((2, 1, 1))).reason == exclusions.REASON_THREE_POINTS


def test_case2_states_are_all_rejected():
    decisions = [exclusions.case2_case3_filters(st) for st in exclusions.case2_states()]
    assert len(decisions) == 8
    assert not any(d.accepted for d in decisions)


def test_plane_exclusion():
    report = exclusions.verify_p2_exclusion()
    assert report.degree == F(-3, 7)
    assert report.star_bound == F(3, 7)
    assert report.two_points_lower == F(1, 2)
    assert report.first_blowup_coefficient == F(2, 7)
    assert report.crepant_coefficients == (F(6, 7), F(3, 7))
    assert report.excluded
