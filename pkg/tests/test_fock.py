# coding: utf-8
from fractions import Fraction

import pytest

from qfock.coeff import ONE, at_q0, q, valuation
from qfock.crystal import Elem, Weight, affine_type
from qfock.exceptions import UsageError
from qfock.fock import FockSpace, FockVector, fock_space, gamma, vacuum
from qfock.wedge import Generator, VaffVector


A2 = affine_type('a2even', 1)
LEVEL2 = affine_type('a1k', 1, 2)


def v(letter, z=0):
    return Elem(letter, z)


@pytest.fixture(scope='module')
def a2():
    return FockSpace(A2)


@pytest.fixture(scope='module')
def level2():
    return FockSpace(LEVEL2, 1)


def vec(space, m, *entries):
    return FockVector(space, m, {tuple(p): c for p, c in entries})


# vacua and the wedge

def test_vacuum_weight(a2):
    assert a2.vacuum(0).weight() == Weight((0, 1))
    assert len(a2.vacuum(3)) == 1
    assert a2.bracket(a2.vacuum(3), 3) == ONE


def test_b1_branch_vacuum_weight():
    space = FockSpace(affine_type('b1', 3), 1)
    assert space.vacuum(2).weight() == Weight((0, 1, 0, 0), Fraction(-1))
    assert space.vacuum(0).weight() == Weight((0, 1, 0, 0))


def test_ground_letter_is_absorbed(a2):
    assert a2.wedge_left(VaffVector.basis(v(0)), a2.vacuum(1)) == a2.vacuum(0)


@pytest.mark.parametrize("n", [1, 2])
def test_raised_ground_letter_vanishes(a2, n):
    assert not a2.wedge_left(VaffVector.basis(v(0, n)), a2.vacuum(1))


def test_lowest_letter_survives(a2):
    assert a2.wedge_left(VaffVector.basis(v(-1)), a2.vacuum(1)) == vec(a2, 0, ([v(-1)], ONE))


def test_swapped_order_is_straightened(a2):
    assert a2.wedge_word((v(0), v(-1)), a2.vacuum(2)) == vec(a2, 0, ([v(-1)], -q ** 2))


def test_bracket_needs_matching_charge(a2):
    with pytest.raises(UsageError):
        a2.bracket(a2.vacuum(0), 1)


def test_mixing_charges(a2):
    with pytest.raises(UsageError):
        a2.vacuum(0) + a2.vacuum(1)


def test_json_round_trip(a2):
    F = vec(a2, 0, ([v(-1)], 1 + q), ([v(1, -1), v(-1)], q ** 3))
    assert FockVector.from_json(a2, F.to_json()) == F


def test_json_input_is_straightened(a2):
    data = {'m': 0, 'terms': [{'prefix': [[0, 0], [-1, 0]], 'coeff': {'num': [[0, 1, 1]], 'den': [[0, 1, 1]]}}]}
    assert FockVector.from_json(a2, data) == vec(a2, 0, ([v(-1)], -q ** 2))


# U_q action

def test_e_kills_vacuum(a2, level2):
    for space in (a2, level2):
        for i in space.atype.index:
            assert not space.e_act(i, space.vacuum(0))


def test_e_returns_to_vacuum(a2):
    assert a2.e_act(1, vec(a2, 0, ([v(-1)], ONE))) == a2.vacuum(0)


def test_t_on_vacuum(a2):
    for i in A2.index:
        k = a2.ground.lam(0).lam[i]
        assert a2.t_act(i, a2.vacuum(0)) == a2.vacuum(0) * A2.qi(i) ** k
        assert a2.t_act(i, a2.vacuum(0), inverse=True) == a2.vacuum(0) * A2.qi(i) ** -k


@pytest.mark.parametrize("n", [1, 2])
def test_f_n_on_vacuum(n):
    space = fock_space(affine_type('a2even', n))
    assert space.f_act(n, space.vacuum(0)) == vec(space, 0, ([v(-n)], ONE))


def test_level2_f_on_vacuum(level2):
    assert level2.f_act(1, level2.vacuum(0)) == vec(level2, 0, ([v(2)], ONE))


@pytest.mark.parametrize("tag,rank,level,kappa", [
    ('a2even', 1, 1, 0), ('a1', 1, 1, 0), ('a1k', 1, 2, 0), ('a1k', 1, 2, 1), ('a1k', 1, 2, 2),
])
def test_divided_powers_of_f(tag, rank, level, kappa):
    space = fock_space(affine_type(tag, rank, level), kappa)
    for m in range(space.ground.period):
        assert space.divided_power_check(m) == []


@pytest.mark.parametrize("tag,rank,level,kappa", [('a2even', 1, 1, 0), ('a1k', 1, 2, 1), ('a1', 2, 1, 0)])
def test_kern(tag, rank, level, kappa):
    space = fock_space(affine_type(tag, rank, level), kappa)
    assert space.kern_check(0, 1) == []


def test_act_dispatch(a2):
    F = a2.vacuum(0)
    assert a2.act(Generator('f', 1), F) == a2.f_act(1, F)
    assert a2.act(Generator('tinv', 0), F) == a2.t_act(0, F, inverse=True)
    with pytest.raises(UsageError):
        a2.act(Generator('z', 1), F)


def _low_basis(space, m, depth):
    lam = space.ground.lam(m)
    vectors = []
    for coords in space.character_count(m, depth):
        mu = lam
        for j, n in zip(space.atype.index, coords):
            mu = mu - space.atype.alpha(j).scale(n)
        vectors += [vec(space, m, (p, ONE)) for p in space.weight_basis(m, mu)]
    return vectors


@pytest.mark.parametrize("tag,level,kappa", [('a2even', 1, 0), ('a1k', 2, 1)])
def test_ef_commutator_on_basis(tag, level, kappa):
    space = fock_space(affine_type(tag, 1, level), kappa)
    for F in _low_basis(space, 0, 1):
        assert space.ef_commutator_check(F) == []


def test_serre_relations(a2):
    for F in (a2.vacuum(0), vec(a2, 0, ([v(-1)], ONE)), vec(a2, 0, ([v(1, -1)], ONE))):
        assert a2.serre_check(F) == []


def test_serre_relations_level2(level2):
    for F in _low_basis(level2, 0, 1)[:4]:
        assert level2.serre_check(F) == []


# bosons

def test_positive_boson_kills_vacuum(a2):
    assert not a2.boson_act(2, a2.vacuum(0))


def test_boson_zero_rejected(a2):
    with pytest.raises(UsageError):
        a2.boson_act(0, a2.vacuum(0))
    with pytest.raises(UsageError):
        a2.gamma(0)


def test_gamma_a2():
    assert gamma(A2, 0, 1) == (1 - q ** 6) / (1 - q ** 4)
    assert gamma(A2, 0, 2) == 2 * (1 + q ** 12) / (1 - q ** 8)


@pytest.mark.parametrize("kappa", [0, 1])
@pytest.mark.parametrize("n", [1, 2])
def test_gamma_level2(kappa, n):
    k = 2
    expected = n * (1 - q ** (4 * n)) / (1 - q ** (2 * n) - q ** (4 * n) + q ** (2 * (k + 1) * n))
    assert gamma(LEVEL2, kappa, n) == expected


def test_gamma_level1_type_a():
    assert gamma(affine_type('a1', 1), 0, 1) == 1 + q ** 2
    assert gamma(affine_type('a1k', 1, 1), 0, 1) == 1 + q ** 2


@pytest.mark.parametrize("tag,rank,kappa", [('a2even', 1, 0), ('b1', 3, 0), ('a2odd', 3, 1), ('d2', 2, 0)])
def test_gamma_at_q0(tag, rank, kappa):
    g = gamma(affine_type(tag, rank), kappa, 1)
    assert valuation(g) >= 0
    assert at_q0(g) == 1


def test_bosons_commute_otherwise(a2):
    assert not a2.commutator(1, 1)
    assert not a2.commutator(-1, -2)
    assert not a2.commutator(1, -2)


def test_gamma_independent_of_charge(level2):
    assert level2.gamma(1, 0) == level2.gamma(1, 1)


def test_boson_lowers_by_delta_mod_q(a2):
    image = a2.boson_vacuum(-1, 0)
    assert image.weight() == Weight((0, 1), Fraction(-1))
    limit = {p: at_q0(c) for p, c in image.items() if at_q0(c)}
    assert limit == {(v(0, -1),): 1}


def test_boson_image_is_singular(a2):
    image = a2.boson_act(-1, a2.vacuum(0))
    assert image
    for i in A2.index:
        assert not a2.e_act(i, image)


def test_boson_commutes_with_uq(a2):
    for n in (1, -1):
        assert a2.boson_commutes_check(n, a2.vacuum(0)) == []
        assert a2.boson_commutes_check(n, vec(a2, 0, ([v(-1)], ONE))) == []


# weight spaces

def test_vacuum_weight_space(a2, level2):
    for space in (a2, level2):
        assert space.weight_basis(0, space.ground.lam(0)) == [()]


@pytest.mark.parametrize("tag,rank,level,kappa", [('a2even', 1, 1, 0), ('a1k', 1, 2, 1), ('b1', 3, 1, 1)])
def test_string_weight_spaces(tag, rank, level, kappa):
    space = fock_space(affine_type(tag, rank, level), kappa)
    lam = space.ground.lam(0)
    for i in space.atype.index:
        top = lam.lam[i]
        for n in range(top + 2):
            basis = space.weight_basis(0, lam - space.atype.alpha(i).scale(n))
            assert len(basis) == (1 if n <= top else 0)


@pytest.mark.parametrize("tag,level,kappa", [('a2even', 1, 0), ('a1k', 2, 1)])
def test_character_matches_weight_basis(tag, level, kappa):
    space = fock_space(affine_type(tag, 1, level), kappa)
    lam = space.ground.lam(0)
    table = space.character_count(0, 3)
    for coords, dim in table.items():
        mu = lam
        for j, n in zip(space.atype.index, coords):
            mu = mu - space.atype.alpha(j).scale(n)
        basis = space.weight_basis(0, mu)
        assert len(basis) == dim
        for prefix in basis:
            assert not prefix or prefix[0] != space.ground.b(0)


def test_factorize_round_trip(a2):
    path = (v(-1),)
    prefix = a2.shifted(0, path, (2, 1))
    assert prefix == (v(-1, -2), v(0, -1))
    assert a2.factorize(0, prefix) == (path, (2, 1))


def test_module_helpers():
    assert vacuum(A2, 0, 2) == fock_space(A2, 0).vacuum(2)
