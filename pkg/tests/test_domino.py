import itertools

import pytest
from hypothesis import given, settings

from dkl.badlib import build_wn, u_n, v_n
from dkl.coxgroup import CoxeterSystem, Side, from_word, identity, inverse
from dkl.domino import (
    INF, DominoTableau, alpha_insert, canonical_form, cycles, delta, equivalent, kappa,
    move_through, orbit, p_prime, rho, shuffle_A, tableau, tableau_cells, _r_value,
)
from dkl.klpoly import CellKind, KLContext, cells
from dkl.verify import W4_FIGURE, W6_FIGURE

from test_coxgroup import elements


def _valid(T):
    T.validate()
    return T


@pytest.fixture(scope="module")
def T6():
    return DominoTableau(W6_FIGURE)


@pytest.fixture(scope="module")
def D4_tableaux(D4_elements):
    return {tableau(w, s) for w in D4_elements for s in Side}


def test_rho_kappa():
    box = {(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2)}
    assert rho(box, 1) == 4 and kappa(box, 1) == 2
    assert rho(set(), 1) == 0 and kappa(set(), 3) == 0
    assert rho({(1, 1)}, 1) == 1 and kappa({(1, 1)}, 1) == 1


def test_shuffle_cases():
    J = {(1, 1), (1, 2), (1, 3)}
    assert shuffle_A(J, ((1, 4), (1, 5))) == ((1, 4), (1, 5))
    with pytest.raises(ValueError):
        shuffle_A(J, ((1, 7), (1, 8)))


def test_shuffle_bumps_to_next_row(T6):
    T7 = T6.with_domino(7, ((1, 6), (1, 7)))
    assert shuffle_A(T7, ((1, 6), (1, 7))) == ((2, 4), (2, 5))


def test_alpha_first_case(T6):
    assert alpha_insert(T6, 7, 1).position(7) == ((1, 6), (1, 7))
    assert alpha_insert(T6, 7, -1).position(7) == ((5, 1), (6, 1))
    assert alpha_insert(DominoTableau(), 3, 1).position(3) == ((1, 1), (1, 2))


def test_alpha_second_case(T6):
    T = T6.with_domino(8, ((1, 6), (1, 7)))
    out = _valid(alpha_insert(T, 7, 1))
    assert out.position(7) == ((1, 6), (1, 7))
    assert out.position(8) == ((2, 4), (2, 5))
    with pytest.raises(ValueError):
        alpha_insert(T, 8, 1)


def test_delta(D4, D6):
    assert delta(build_wn(D4, 4)) == {(1, 1, 1), (2, 4, -1), (3, 3, 1), (4, 2, -1)}
    assert delta(build_wn(D6, 6)) == {(1, 1, -1), (6, 2, -1), (3, 3, 1), (4, 4, -1),
                                      (5, 5, 1), (2, 6, -1)}
    assert delta(identity(D4)) == {(i, i, 1) for i in range(1, 5)}


def test_tableau_figures(D4, D6):
    assert dict(tableau(build_wn(D6, 6)).items()) == W6_FIGURE
    assert dict(tableau(build_wn(D4, 4)).items()) == W4_FIGURE
    assert dict(tableau(identity(D6)).items()) == {
        k: ((1, 2 * k - 1), (1, 2 * k)) for k in range(1, 7)}


def test_tableau_rejects_type_a():
    with pytest.raises(ValueError):
        tableau(identity(CoxeterSystem("A", 3)))


def test_p_prime_and_r_values(T6):
    assert p_prime(T6, 1) == ((1, 1), (1, 2))
    assert p_prime(T6, 6) == ((3, 2), (3, 3))
    assert [_r_value(T6, k) for k in range(1, 7)] == [0, 4, 0, 3, 0, INF]
    with pytest.raises(KeyError):
        p_prime(T6, 9)


def test_cycle_examples(T6, D6):
    cs = {c.labels: c.is_open for c in cycles(T6)}
    assert cs == {frozenset({1, 2, 3, 5}): True, frozenset({4, 6}): False}
    single = DominoTableau({1: ((1, 1), (1, 2))})
    assert [(c.labels, c.is_open) for c in cycles(single)] == [(frozenset({1}), True)]


@pytest.mark.parametrize("n", [6, 8, 10])
def test_wn_has_expected_open_cycle(n):
    D = CoxeterSystem("D", n)
    c1 = frozenset([1, 2, 3] + list(range(5, n, 2)))
    found = [c for c in cycles(tableau(build_wn(D, n))) if c.labels == c1]
    assert found and found[0].is_open
    assert move_through(tableau(build_wn(D, n)), c1) == tableau(v_n(D))


@pytest.mark.parametrize("n", [8, 10])
def test_right_move_to_un(n):
    D = CoxeterSystem("D", n)
    c2 = [1, 2, 3] + list(range(5, n - 2, 2)) + [n - 2]
    assert move_through(tableau(v_n(D), Side.Right), c2) == tableau(u_n(D), Side.Right)


def test_move_figure(T6):
    E = move_through(T6, {1, 2, 3, 5})
    assert dict(E.items()) == {1: ((1, 1), (1, 2)), 3: ((1, 3), (1, 4)), 5: ((1, 5), (1, 6)),
                               2: ((2, 1), (3, 1)), 4: ((2, 2), (3, 2)), 6: ((2, 3), (3, 3))}
    assert move_through(T6, {1, 2, 3, 5}, {4, 6}) == move_through(T6, {4, 6}, {1, 2, 3, 5})
    with pytest.raises(ValueError):
        move_through(T6, {1, 2})


def test_w4_moves_to_s1s2s4(D4):
    assert move_through(tableau(build_wn(D4, 4)), {1, 2, 3}, {4}) == \
        tableau(from_word(D4, [1, 2, 4]))


def test_v6_right_move(D6):
    assert move_through(tableau(v_n(D6), Side.Right), {1, 2, 3, 4}) == \
        tableau(from_word(D6, [1, 2, 6, 5, 6]), Side.Right)


def test_w6_left_equivalent_to_v6(D6):
    assert equivalent(tableau(build_wn(D6, 6)), tableau(v_n(D6)))


def test_w6_two_sided_with_s1s2s6s5s6(D6):
    # w6 ~L v6 and v6 ~R s1s2s6s5s6
    target = from_word(D6, [1, 2, 6, 5, 6])
    assert equivalent(tableau(build_wn(D6, 6)), tableau(v_n(D6)))
    assert equivalent(tableau(v_n(D6), Side.Right), tableau(target, Side.Right))


def test_move_properties_on_D4(D4_tableaux):
    for T in D4_tableaux:
        cs = cycles(T)
        fixed = {sq: T.label_at(sq) for sq in T.squares() if sum(sq) % 2 == 0}
        for c in cs:
            E = _valid(move_through(T, c))
            assert all(E.label_at(sq) == k for sq, k in fixed.items())
            if c.is_open:
                assert len(E.squares() ^ T.squares()) == 2
                assert any(move_through(E, c2) == T for c2 in cycles(E) if c2.is_open)
            else:
                assert E.shape() == T.shape()
        for c1, c2 in itertools.combinations(cs, 2):
            assert move_through(T, c1, c2) == move_through(T, c2, c1)


def test_equivalence_is_symmetric_on_D4(D4_tableaux):
    for T in D4_tableaux:
        for U in orbit(T):
            assert T in orbit(U)
            assert canonical_form(U) == canonical_form(T)


def test_injective_and_right_via_inverse(D4_elements):
    pairs = {(tableau(w), tableau(w, Side.Right)) for w in D4_elements}
    assert len(pairs) == len(D4_elements)
    for w in D4_elements:
        assert tableau(w, Side.Right) == tableau(inverse(w))


@pytest.mark.extended
def test_injective_D5(D5):
    els = list(D5.elements())
    assert len({(tableau(w), tableau(w, Side.Right)) for w in els}) == len(els) == 1920


@settings(max_examples=60, deadline=None)
@given(elements("D", [4, 5, 6, 7]))
def test_every_tableau_valid(w):
    for side in Side:
        T = _valid(tableau(w, side))
        assert sorted(T.labels) == list(range(1, w.system.n + 1))
        for U in orbit(T):
            _valid(U)


@settings(max_examples=60, deadline=None)
@given(elements("D", [4, 5, 6]))
def test_json_roundtrip(w):
    T = tableau(w)
    assert DominoTableau.from_json(T.to_json()) == T


def test_invalid_tableau_rejected():
    with pytest.raises(ValueError):
        DominoTableau({1: ((1, 1), (1, 2)), 2: ((1, 2), (1, 3))})
    with pytest.raises(ValueError):
        DominoTableau({1: ((1, 1), (1, 3))})
    with pytest.raises(ValueError):
        DominoTableau({2: ((1, 1), (1, 2)), 1: ((1, 3), (1, 4))}).validate()


@pytest.mark.parametrize("kind", list(CellKind))
def test_cells_match_kl_route_D4(kind, D4, D4_elements):
    ctx = KLContext(D4)
    assert tableau_cells(D4_elements, kind).as_sets() == cells(ctx, None, kind).as_sets()


def test_identity_singleton(D4_elements, D4):
    part = tableau_cells(D4_elements, CellKind.Left)
    assert part.block_of(identity(D4)) == (identity(D4),)


def test_threads_do_not_change_result(D4_elements, monkeypatch):
    one = tableau_cells(D4_elements, CellKind.TwoSided, threads=1)
    monkeypatch.setenv("DKL_THREADS", "4")
    assert tableau_cells(D4_elements, CellKind.TwoSided).blocks == one.blocks


@pytest.mark.extended
@pytest.mark.parametrize("kind", list(CellKind))
def test_cells_match_kl_route_D5(kind, D5):
    ctx = KLContext(D5)
    els = list(D5.elements())
    assert tableau_cells(els, kind).as_sets() == cells(ctx, None, kind).as_sets()
