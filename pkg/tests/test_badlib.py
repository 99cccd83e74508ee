import pytest
from hypothesis import given, settings, strategies as st

from dkl.badlib import (
    BadTag, build_wn, classify_bad, ends_in_noncommuting, enumerate_bad,
    special_elements, u_n, v_n, wn_intervals, wn_length, wn_reduced_word, x_n,
)
from dkl.coxgroup import (
    CoxeterSystem, Side, SignedPermutation, canonical_word, compose, descents, expand_intervals,
    from_word, identity, inverse, is_commuting_product, iota_embed, length, mul_gen,
)
from dkl.fcstar import is_fully_commutative

import oracles


def W(system, *win):
    return SignedPermutation(win, system)


def test_pattern_example():
    D7 = CoxeterSystem("D", 7)
    # (2,-3,-6,1,4,-5,7) has three negatives; flip one sign away from the 321 triple
    w = W(D7, 2, -3, -6, 1, 4, 5, 7)
    assert ends_in_noncommuting(w, Side.Right)
    # some reduced word ends in s t with m(s,t) = 3
    assert any(D7.m(s, t) == 3
               for t in descents(w, Side.Right)
               for s in descents(mul_gen(w, t, Side.Right), Side.Right))


def test_ends_examples(D4):
    assert not ends_in_noncommuting(identity(D4), Side.Right)
    w4 = W(D4, 1, -4, 3, -2)
    assert not ends_in_noncommuting(w4, Side.Left) and not ends_in_noncommuting(w4, Side.Right)


def test_classify_examples(D4):
    assert classify_bad(from_word(D4, [1, 2, 4])).tag is BadTag.WeaklyBadCommuting
    assert classify_bad(from_word(D4, [1, 2, 3])).tag is BadTag.NotBad
    c = classify_bad(from_word(D4, [1, 2, 4, 3, 1, 2, 4]))
    assert (c.tag, c.m, c.u) == (BadTag.Bad, 4, ())


def test_classify_decomposition(D6):
    c = classify_bad(compose(build_wn(D6, 4), from_word(D6, [6])))
    assert (c.tag, c.m, c.u) == (BadTag.Bad, 4, (6,))


def test_build_wn_examples(D4, D6):
    assert build_wn(D4, 4).window == (1, -4, 3, -2)
    assert build_wn(D6, 6).window == (-1, -6, 3, -4, 5, -2)
    assert build_wn(D6, 5).window == (1, -4, 3, -2, 5, 6)
    with pytest.raises(ValueError):
        build_wn(D6, 3)
    with pytest.raises(ValueError):
        build_wn(D4, 6)


def test_wn_length_examples():
    assert wn_length(4) == 7 and wn_length(6) == 15 and wn_length(8) == 26
    assert wn_length(7) == 15


def test_wn_words():
    assert wn_intervals(4) == [(2, 0), (4, 0), (4, 4)]
    assert wn_intervals(6) == [(2, 0), (4, 0), (6, 0), (5, 4), (6, 6)]
    assert len(wn_reduced_word(4)) == 7
    assert len(wn_reduced_word(8)) == 26


@pytest.mark.parametrize("n", range(4, 13))
def test_wn_consistency(n):
    D = CoxeterSystem("D", n)
    w = build_wn(D, n)
    assert compose(w, w) == identity(D)
    assert length(w) == wn_length(n)
    if n % 2 == 0:
        word = wn_reduced_word(n)
        assert len(word) == wn_length(n) and from_word(D, word) == w


def test_special_element_windows():
    s4, s6, s8 = special_elements(4), special_elements(6), special_elements(8)
    assert s4.x_n.window == (-1, -2, 4, 3)
    assert s4.v_n is None and s6.u_n is None
    assert s6.v_n.window == (1, -6, 3, -2, 5, 4)
    assert s8.u_n.window == (1, -4, 3, -2, 5, 8, 7, 6)
    assert s6.x_n == from_word(CoxeterSystem("D", 6), [1, 2, 4, 6])
    with pytest.raises(ValueError):
        special_elements(5)


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_v_n_window_formula(n):
    D = CoxeterSystem("D", n)
    win = [(-1) ** ((n - 2) // 2), -n]
    for i in range(3, n - 1):
        win.append(i if i % 2 else -(n - i))
    win += [n - 1, n - 2]
    # the entry at position n-2 is -2 for the even tail of w_{n-2}
    assert v_n(D).window == tuple(win)
    assert v_n(D) == from_word(D, [n, n - 1, n]) * build_wn(D, n - 2)


@pytest.mark.parametrize("n", [8, 10, 12])
def test_u_n_window_formula(n):
    D = CoxeterSystem("D", n)
    expect = list(build_wn(D, n - 4).window[: n - 4]) + [n - 3, n, n - 1, n - 2]
    assert u_n(D).window == tuple(expect)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_x_n_is_commuting_product(n):
    D = CoxeterSystem("D", n)
    assert is_commuting_product(x_n(D)) and length(x_n(D)) == n // 2 + 1


def _definition_bad(system, w, words):
    """Bad straight from the definition, given all reduced words."""
    if is_commuting_product(w):
        return False
    for word in words:
        if len(word) >= 2 and (system.m(word[0], word[1]) == 3 or system.m(word[-2], word[-1]) == 3):
            return False
    return True


def test_bad_definition_oracle_D4(D4, D4_elements):
    lengths = oracles.bfs_lengths(D4)
    for w in D4_elements:
        words = oracles.all_reduced_words(D4, w.window, lengths)
        starts = any(len(x) >= 2 and D4.m(x[0], x[1]) == 3 for x in words)
        ends = any(len(x) >= 2 and D4.m(x[-2], x[-1]) == 3 for x in words)
        assert ends_in_noncommuting(w, Side.Right) == ends
        assert ends_in_noncommuting(w, Side.Left) == starts
        expect = _definition_bad(D4, w, words)
        assert (classify_bad(w).tag is BadTag.Bad) == expect


def test_enumerate_examples(D4, D5, D6):
    assert enumerate_bad(D4) == [build_wn(D4, 4)]
    assert enumerate_bad(D5) == [build_wn(D5, 4)]
    w4 = build_wn(D6, 4)
    assert set(enumerate_bad(D6)) == {build_wn(D6, 6), w4, compose(w4, from_word(D6, [6]))}


@pytest.mark.parametrize("rank", [4, 5, 6])
def test_enumeration_matches_brute_force(rank):
    D = CoxeterSystem("D", rank)
    bad = [w for w in D.elements() if classify_bad(w).tag is BadTag.Bad]
    assert bad == enumerate_bad(D)
    for w in bad:
        assert classify_bad(inverse(w)).tag is BadTag.Bad


@pytest.mark.parametrize("rank", [4, 5, 6, 7, 8])
def test_bad_elements_not_fully_commutative(rank):
    for w in enumerate_bad(CoxeterSystem("D", rank)):
        assert not is_fully_commutative(w)
        c = classify_bad(w)
        assert c.tag is BadTag.Bad and all(s >= c.m + 2 for s in c.u)
        assert length(w) == length(build_wn(w.system, c.m)) + len(c.u)


@pytest.mark.parametrize("rank", [4, 5])
def test_positive_windows_never_bad(rank):
    for w in CoxeterSystem("D", rank).elements():
        if min(w.window) > 0:
            assert classify_bad(w).tag is not BadTag.Bad


def test_type_a_embedded_elements_never_bad():
    A4 = CoxeterSystem("A", 4)
    for w in A4.elements():
        assert classify_bad(iota_embed(w)).tag is not BadTag.Bad


@settings(max_examples=100, deadline=None)
@given(st.integers(7, 12), st.data())
def test_enumerated_elements_classify_bad(n, data):
    D = CoxeterSystem("D", n)
    found = enumerate_bad(D)
    assert len(found) == len(set(found))
    w = data.draw(st.sampled_from(found))
    assert classify_bad(w).tag is BadTag.Bad
    assert classify_bad(inverse(w)).tag is BadTag.Bad
