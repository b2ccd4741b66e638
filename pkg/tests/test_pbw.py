import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import enumerated, make_sf4
from ybe.oracle import monoid_classes
from ybe.pbw import (
    NotConfluentError, OrderingError, RewriteSystem, find_good_enumeration, identity_enumeration,
    normal_form_monoid, relations_of, rewrite, solution_from_rewrite_system,
)
from ybe.solution import SolutionError, from_left_action, relabel, trivial, word


def test_trivial_rules():
    rs = relations_of(trivial(3), (2, 0, 1))
    assert rs.rules == {(j, i): (i, j) for j in range(3) for i in range(j)}
    assert rs.ok


def test_sf4_rules():
    rs = relations_of(make_sf4())
    expected = {(2, 0): (1, 3), (3, 0): (1, 2), (2, 1): (0, 3),
                (3, 1): (0, 2), (1, 0): (0, 1), (3, 2): (2, 3)}
    assert rs.rules == expected
    assert rs.flags() == {"a": True, "b": True, "c": True}


def test_bad_enumeration_flags():
    sf4 = make_sf4()
    flags = {e: relations_of(sf4, e).flags() for e in itertools.permutations(range(4))}
    assert any(not f["a"] for f in flags.values())
    assert all(f["c"] is False for f in flags.values() if not f["a"])


def test_good_enumeration_examples():
    assert find_good_enumeration(trivial(4)) == identity_enumeration(4)
    assert find_good_enumeration(make_sf4()) == identity_enumeration(4)
    with pytest.raises(SolutionError):
        find_good_enumeration(from_left_action([[1, 0], [0, 1]]))
    with pytest.raises(OrderingError):
        find_good_enumeration(trivial(3), bound=2)


def test_good_enumeration_is_lex_least():
    for s in enumerated(4):
        e = find_good_enumeration(s)
        for f in itertools.permutations(range(s.n)):
            if f == e:
                break
            assert not relations_of(s, f).ok


def test_normal_form_examples():
    rs = relations_of(make_sf4())
    assert normal_form_monoid(rs, word(1, 0)) == (1, 1, 0, 0)
    assert normal_form_monoid(rs, word(2, 0)) == (0, 1, 0, 1)
    assert normal_form_monoid(rs, word(0, 1, 1, 3)) == (1, 2, 0, 1)
    _, steps = rewrite(rs.rules, [0, 1, 1, 3])
    assert steps == 0
    with pytest.raises(ValueError):
        normal_form_monoid(rs, ((0, -1),))


def test_normal_form_requires_good_system():
    sf4 = make_sf4()
    bad = next(relations_of(sf4, e) for e in itertools.permutations(range(4))
               if not relations_of(sf4, e).ok)
    with pytest.raises(NotConfluentError):
        normal_form_monoid(bad, word(0))


def test_rewrite_reaches_ordered_words():
    rs = relations_of(make_sf4())
    for w in itertools.product(range(4), repeat=6):
        nf, steps = rewrite(rs.rules, w)
        assert nf == sorted(nf) and len(nf) == 6
        assert (steps == 0) == (list(w) == sorted(w))


def test_roundtrip_examples():
    s = solution_from_rewrite_system(relations_of(trivial(3)))
    assert s.left == trivial(3).left
    assert solution_from_rewrite_system(relations_of(make_sf4())).left == make_sf4().left
    for s in enumerated(4):
        e = find_good_enumeration(s)
        assert solution_from_rewrite_system(relations_of(s, e)).left == relabel(s, e).left


def test_violating_a_raises():
    sf4 = make_sf4()
    rules = dict(relations_of(sf4).rules)
    rules[2, 0] = (3, 1)
    rs = RewriteSystem(4, rules, identity_enumeration(4), False, True, False)
    with pytest.raises(NotConfluentError):
        solution_from_rewrite_system(rs)


@pytest.mark.parametrize("length", [2, 3, 4, 5])
def test_normal_forms_match_congruence_oracle(length):
    for s in enumerated(4):
        e = find_good_enumeration(s)
        t = relabel(s, e)
        rs = relations_of(s, e)
        classes = monoid_classes(t, length)
        nf = {w: normal_form_monoid(rs, tuple((x, 1) for x in w)) for w in classes}
        for w, rep in classes.items():
            assert nf[w] == nf[rep]
        # distinct classes get distinct normal forms
        assert len(set(nf.values())) == len(set(classes.values()))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=12))
def test_normal_form_is_content_preserving_in_length(w):
    rs = relations_of(make_sf4())
    gamma = normal_form_monoid(rs, tuple((x, 1) for x in w))
    assert sum(gamma) == len(w)
    # normal forms are fixed points
    ordered = tuple((x, 1) for x in range(4) for _ in range(gamma[x]))
    assert normal_form_monoid(rs, ordered) == gamma
