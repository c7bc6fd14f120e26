# coding: utf-8
import logging
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qfock.coeff import q
from qfock.crystal import (
    PHI, A1Level, D2, Elem, Weight, _warn_extrapolated, affine_type, elem_from_json, elem_to_json, signature_rule,
)
from qfock.exceptions import UsageError


MINIMAL = [('a1', 1, 1), ('a2even', 1, 1), ('b1', 3, 1), ('a2odd', 3, 1), ('d1', 4, 1), ('d2', 2, 1),
           ('a1k', 1, 2), ('a1k', 1, 3)]
LARGER = [('a1', 3, 1), ('a2even', 2, 1), ('b1', 4, 1), ('a2odd', 4, 1), ('d1', 5, 1), ('d2', 4, 1)]


def _ids(cases):
    return ['{}-{}-{}'.format(*c) for c in cases]


@pytest.fixture(params=MINIMAL + LARGER, ids=_ids(MINIMAL + LARGER), scope='module')
def atype(request):
    tag, rank, level = request.param
    return affine_type(tag, rank, level)


@pytest.fixture(params=MINIMAL, ids=_ids(MINIMAL), scope='module')
def small(request):
    tag, rank, level = request.param
    return affine_type(tag, rank, level)


def test_cartan_diagonal(atype):
    assert all(atype.cartan[i][i] == 2 for i in atype.index)


def test_marks_and_comarks_annihilate_cartan(atype):
    A = atype.cartan
    for i in atype.index:
        assert sum(A[i][j] * atype.marks[j] for j in atype.index) == 0
    for j in atype.index:
        assert sum(atype.comarks[i] * A[i][j] for i in atype.index) == 0


def test_bilinear_form_is_symmetric(atype):
    for i in atype.index:
        for j in atype.index:
            assert atype.bilinear(i, j) == atype.bilinear(j, i)


def test_null_root(atype):
    assert atype.null_root() == Weight((0,) * len(atype.index), Fraction(1))


def test_arrows_shift_weight_by_simple_root(atype):
    for i, src, dst in atype.graph_edges():
        assert atype.wt(src) - atype.wt(dst) == atype.alpha(i)


def test_e_inverts_f(atype):
    for b in atype.elements(1):
        for i in atype.index:
            target = atype.f(i, b)
            if target is not None:
                assert atype.e(i, target) == b
                assert atype.eps(i, target) == atype.eps(i, b) + 1


def test_string_lengths_match_weight(atype):
    for letter in atype.letters:
        b = Elem(letter)
        for i in atype.index:
            assert atype.phi(i, b) - atype.eps(i, b) == atype.wt(b).pairing(i)
            assert atype.eps(i, b) >= 0


def test_grade_rises_along_e(atype):
    for b in atype.elements(1):
        for i in atype.index:
            target = atype.e(i, b)
            if target is not None:
                assert atype.grade_l(target) == atype.grade_l(b) + 1


def test_grade_under_z(atype):
    b = Elem(atype.letters[0])
    assert atype.grade_l(b.shift(1)) - atype.grade_l(b) == atype.coxeter


def test_kashiwara_examples():
    a1 = affine_type('a1', 2)
    assert a1.f(1, Elem(0)) == Elem(1)
    assert a1.f(0, Elem(2)) == Elem(0, -1)
    assert a1.f(1, Elem(1)) is None

    a2 = affine_type('a2even', 2)
    assert a2.f(2, Elem(0, 3)) == Elem(-2, 3)
    assert a2.f(0, Elem(-1)) == Elem(1, -1)
    assert a2.e(0, Elem(1, -1)) == Elem(-1)


def test_unknown_operator_and_index():
    a2 = affine_type('a2even', 1)
    with pytest.raises(UsageError):
        a2.kashiwara('g', 0, Elem(0))
    with pytest.raises(UsageError):
        a2.f(5, Elem(0))
    with pytest.raises(UsageError):
        a2.f(0, Elem(7))


def test_energy_extremal_and_shift(atype):
    top = 0 if atype.tag in ('a1', 'a1k') else 1
    b = Elem(top)
    assert atype.energy(b, b) == 0
    for j in atype.letters:
        h = atype.energy(b, Elem(j))
        assert atype.energy(b.shift(2), Elem(j, -1)) == h - 3


def test_level_two_energy_rows():
    a1k = affine_type('a1k', level=2)
    rows = [[a1k.energy(Elem(i), Elem(j)) for j in range(3)] for i in range(3)]
    assert rows == [[0, 0, 0], [1, 1, 0], [2, 1, 0]]
    assert a1k.energy(Elem(2, 1), Elem(0, -1)) == 2 - 1 - 1


def test_d2_phi_energy():
    d2 = affine_type('d2', 2)
    for k in d2.letters:
        if k != PHI:
            assert d2.energy(Elem(PHI), Elem(k)) == 1
            assert d2.energy(Elem(k), Elem(PHI)) == 1
    assert d2.energy(Elem(PHI), Elem(PHI)) == 2
    assert d2.energy(Elem(0), Elem(0)) == 2


def test_energy_constant_along_arrows(small):
    for i1 in small.letters:
        for i2 in small.letters:
            word = (Elem(i1), Elem(i2))
            h = small.energy(*word)
            for i in small.index:
                for op in ('e', 'f'):
                    moved = small.tensor_kashiwara(op, i, word)
                    if moved is not None:
                        assert small.energy(*moved) == h, (op, i, word, moved)


def test_condition_l(small):
    elems = small.elements(2)
    for b1 in elems:
        for b2 in elems:
            if small.energy(b1, b2) <= 0:
                assert small.grade_l(b1) >= small.grade_l(b2)


def test_tensor_length_one_is_kashiwara(small):
    for letter in small.letters:
        for i in small.index:
            assert small.tensor_kashiwara('f', i, [Elem(letter)]) == _maybe_word(small.f(i, Elem(letter)))


def _maybe_word(b):
    return None if b is None else (b,)


def test_tensor_eps_rule(small):
    for i1 in small.letters:
        for i2 in small.letters:
            b1, b2 = Elem(i1), Elem(i2)
            for i in small.index:
                expected = max(small.eps(i, b1) - small.pairing(i, b2), small.eps(i, b2))
                assert small.tensor_eps(i, [b1, b2]) == expected


TYPES = [affine_type(tag, rank, level) for tag, rank, level in MINIMAL]


@st.composite
def words(draw):
    atype = draw(st.sampled_from(TYPES))
    size = draw(st.integers(1, 5))
    letters = st.sampled_from(atype.letters)
    word = tuple(Elem(draw(letters), draw(st.integers(-2, 2))) for _ in range(size))
    i = draw(st.sampled_from(atype.index))
    return atype, word, i


@settings(max_examples=200, deadline=None)
@given(words(), st.sampled_from(['e', 'f']))
def test_tensor_rule_matches_signature_rule(case, op):
    atype, word, i = case
    assert atype.tensor_kashiwara(op, i, word) == signature_rule(atype, op, i, word)


@settings(max_examples=100, deadline=None)
@given(words())
def test_tensor_f_then_e(case):
    atype, word, i = case
    moved = atype.tensor_kashiwara('f', i, word)
    if moved is not None:
        assert atype.tensor_kashiwara('e', i, moved) == word
        assert atype.tensor_wt(moved) == atype.tensor_wt(word) - atype.alpha(i)
        assert atype.tensor_eps(i, moved) == atype.tensor_eps(i, word) + 1


def test_ground_states(small):
    for kappa in small.kappas:
        assert small.ground(kappa).check()


@pytest.mark.parametrize("tag,rank", [('a1', 3), ('b1', 4), ('d1', 5), ('d2', 3), ('a2odd', 4)])
def test_ground_states_larger_rank(tag, rank):
    atype = affine_type(tag, rank)
    for kappa in atype.kappas:
        assert atype.ground(kappa).check()


def test_a2even_ground_weights():
    a2 = affine_type('a2even', 2)
    gs = a2.ground()
    for m in range(-2, 3):
        b, lam = gs(m)
        assert b == Elem(0)
        assert lam == Weight((0, 0, 1), Fraction(0))


def test_b1_kappa_one_weights():
    gs = affine_type('b1', 3).ground(1)
    assert gs.lam(2) == Weight((0, 1, 0, 0), Fraction(-1))
    assert gs.lam(4) == Weight((0, 1, 0, 0), Fraction(-2))
    assert gs.b(1) == Elem(-1, 1)


def test_d1_ground_weights():
    d1 = affine_type('d1', 4)
    gs = d1.ground(0)
    assert gs.lam(0).cl == (0, 0, 0, 0, 1)
    assert gs.lam(1).cl == (0, 0, 0, 1, 0)


def test_level_k_ground_state():
    k = 3
    a1k = affine_type('a1k', level=k)
    for kappa in a1k.kappas:
        gs = a1k.ground(kappa)
        for ell in range(-1, 3):
            assert gs.b(2 * ell - 1) == Elem(kappa, -ell * (k - 2))
            assert gs.b(2 * ell) == Elem(k - kappa, -ell * (k - 2) - kappa + 1)
        assert gs.period == 2 and gs.shift == -(k - 2)


def test_a1_ground_state():
    a1 = affine_type('a1', 2)
    gs = a1.ground()
    assert [gs.b(m) for m in range(4)] == [Elem(0), Elem(2, 1), Elem(1, 1), Elem(0, 1)]


def test_invalid_kappa():
    with pytest.raises(UsageError):
        affine_type('a2even', 1).ground(1)
    with pytest.raises(UsageError):
        affine_type('a1k', level=2).ground(3)


def test_perfect(small):
    report = small.check_perfect()
    assert report['perfect'], report


def test_perfect_larger_ranks():
    for tag, rank, level in LARGER:
        assert affine_type(tag, rank, level).check_perfect()['perfect']


def test_d1_minimal_elements():
    report = affine_type('d1', 4).check_perfect()
    assert sorted(report['minimal']) == [-4, -1, 1, 4]


@pytest.mark.parametrize("tag,rank,sign", [('a1', 2, 1), ('a2even', 1, -1), ('b1', 3, 1),
                                            ('a2odd', 3, -1), ('d1', 4, 1)])
def test_xi_is_power_of_p(tag, rank, sign):
    atype = affine_type(tag, rank)
    assert atype.xi == sign * atype.p ** atype.dual_coxeter


def test_dual_coxeter_values():
    assert affine_type('a2even', 1).dual_coxeter == 3
    assert affine_type('b1', 3).dual_coxeter == 5
    assert affine_type('a2odd', 3).dual_coxeter == 6
    assert affine_type('d1', 4).dual_coxeter == 6
    assert affine_type('d2', 2).dual_coxeter == 4


def test_d2_xi_squared():
    d2 = affine_type('d2', 3)
    assert d2.xi ** 2 == d2.p ** d2.dual_coxeter
    assert d2.xi == q ** 6


def test_d2_even_component():
    d2 = D2(2, even=True)
    assert d2.admits(Elem(1, 2))
    assert not d2.admits(Elem(1, 1))
    assert d2.admits(Elem(PHI, -1))
    assert not d2.admits(Elem(PHI, 0))
    for b in d2.elements(2):
        for i in d2.index:
            target = d2.f(i, b)
            if target is not None and d2.admits(b):
                assert d2.admits(target)
    assert D2(2) != d2


def test_d2_even_ground_state():
    d2 = D2(2, even=True)
    ground = d2.ground(0)
    assert ground.b(0) == ground.b(5) == Elem(0)
    assert d2.energy(Elem(0), Elem(0)) == 2
    with pytest.raises(UsageError):
        d2.ground(PHI)


def test_d2_small_rank_is_extrapolated(caplog):
    _warn_extrapolated.cache_clear()
    with caplog.at_level(logging.WARNING, logger='qfock.crystal'):
        d2 = affine_type('d2', 2)
    assert d2.extrapolated
    assert 'extrapolated' in caplog.text
    assert d2.check_perfect()['extrapolated']
    assert not affine_type('d2', 4).extrapolated


def test_d2_extrapolation_warns_once_per_rank(caplog):
    _warn_extrapolated.cache_clear()
    with caplog.at_level(logging.WARNING, logger='qfock.crystal'):
        for _ in range(3):
            assert affine_type('d2', 2).extrapolated
        affine_type('d2', 3)
    messages = [r.getMessage() for r in caplog.records if 'extrapolated' in r.getMessage()]
    assert len(messages) == 2
    assert 'rank 2' in messages[0] and 'rank 3' in messages[1]


def test_affine_type_errors():
    with pytest.raises(UsageError):
        affine_type('e8')
    with pytest.raises(UsageError):
        affine_type('b1', 2)
    with pytest.raises(UsageError):
        affine_type('a1k', 2, 2)
    with pytest.raises(UsageError):
        affine_type('b1', 3, 2)
    with pytest.raises(UsageError):
        A1Level(0)


def test_default_rank():
    assert affine_type('d1').n == 4
    assert affine_type('a1k', level=4).level == 4


def test_elem_json():
    assert elem_from_json(elem_to_json(Elem(PHI, -2))) == Elem(PHI, -2)
    assert elem_to_json(Elem(-3, 1)) == [-3, 1]
    with pytest.raises(UsageError):
        elem_from_json(['x', 0])
    with pytest.raises(UsageError):
        elem_from_json([1])


def test_tables_dump():
    tables = affine_type('a2even', 1).tables()
    assert tables['cartan'] == [[2, -1], [-4, 2]]
    assert [0, [-1, 0], [1, -1]] in tables['edges']
    assert tables['ground']['0']['states'] == [[0, 0]]
    assert len(tables['energy']) == 9


def test_root_coordinates(atype):
    for j in atype.index:
        unit = tuple(1 if k == j else 0 for k in atype.index)
        assert atype.root_coordinates(atype.alpha(j)) == unit
    assert atype.root_coordinates(atype.null_root()) == atype.marks
    assert atype.root_coordinates(Weight.zero(atype.n)) == (0,) * len(atype.index)


def test_root_coordinates_outside_lattice():
    a1 = affine_type('a1', 1)
    assert a1.root_coordinates(Weight((1, -1))) is None
    assert a1.root_coordinates(Weight((0, 0), Fraction(1, 2))) is None
