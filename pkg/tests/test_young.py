# coding: utf-8
import logging

import pytest

from qfock.coeff import ONE, q
from qfock.crystal import Elem
from qfock.exceptions import UsageError
from qfock.young import Diagram, YoungModel, bij_from_wedge, diagrams, inner_norm, reduce_q1, young_act
from qfock.wedge import Generator


@pytest.fixture(scope='module')
def model():
    return YoungModel(1)


@pytest.fixture(scope='module')
def model2():
    return YoungModel(2)


def D(*rows):
    return Diagram(rows, 3)


# diagrams

def test_repeated_multiples_of_h_are_allowed():
    assert D(3, 3, 2) == (3, 3, 2)
    assert D(3, 3).multiplicity(3) == 2
    assert D(6, 3, 3, 1).size == 13


@pytest.mark.parametrize("rows,h", [((2, 2), 3), ((1, 2), 3), ((3, 0), 3), ((5,), 4), ((5,), 1)])
def test_invalid_diagram(rows, h):
    with pytest.raises(UsageError):
        Diagram(rows, h)


def test_diagram_counts():
    assert [len(diagrams(3, d)) for d in range(7)] == [1, 1, 1, 2, 2, 3, 5]
    assert diagrams(3, 6)[0] == (6,)
    assert D(3, 3) in diagrams(3, 6)


def test_counts_match_fock_weight_spaces(model):
    table = model.space.character_count(0, 4)
    for d in range(5):
        assert sum(c for coords, c in table.items() if sum(coords) == d) == len(diagrams(3, d))


# rows and letters

def test_letter_of_row(model):
    assert model.letter_of_row(1) == Elem(-1, 0)
    assert model.letter_of_row(2) == Elem(1, -1)
    assert model.letter_of_row(3) == Elem(0, -1)
    assert model.letter_of_row(4) == Elem(-1, -1)


def test_letter_of_row_rank_two(model2):
    assert [model2.letter_of_row(y) for y in range(1, 6)] == [
        Elem(-2, 0), Elem(-1, 0), Elem(1, -1), Elem(2, -1), Elem(0, -1)]


@pytest.mark.parametrize("size", range(7))
def test_rows_and_wedges_correspond(model, size):
    for Y in model.diagrams(size):
        assert model.bij_from_wedge(model.wedge_from_diagram(Y)) == Y
        assert model.space.atype.is_normal(model.wedge_from_diagram(Y))


def test_letter_outside_vaff_plus():
    with pytest.raises(UsageError):
        bij_from_wedge((Elem(1, 0),))
    with pytest.raises(UsageError):
        bij_from_wedge((Elem(0, 0),))


# the action

def test_f_on_empty_diagram(model):
    assert model.act(Generator('f', 1), D()) == {D(1): ONE}
    assert model.act(Generator('f', 0), D()) == {}


def test_t_on_empty_diagram(model):
    assert model.act(Generator('t', 1), D()) == {D(): q}
    assert model.act(Generator('t', 0), D()) == {D(): ONE}
    assert model.act(Generator('tinv', 1), D()) == {D(): 1 / q}


def test_f_small_diagrams(model):
    assert model.act(Generator('f', 1), D(1)) == {}
    assert model.act(Generator('f', 0), D(1)) == {D(2): ONE}
    assert model.act(Generator('f', 1), D(2)) == {D(3): q, D(2, 1): ONE}


def test_f_on_block(model):
    assert model.act(Generator('f', 1), D(3)) == {D(4): 1 + q ** 2, D(3, 1): ONE}
    assert model.act(Generator('f', 1), D(3, 3)) == {D(4, 3): (1 + q ** 2) * (1 - q ** 2), D(3, 3, 1): ONE}


def test_e_removes_boxes(model):
    assert model.act(Generator('e', 1), D(1)) == {D(): ONE}
    assert model.act(Generator('e', 1), D(3)) == {D(2): q + 1 / q}
    assert model.act(Generator('e', 1), D(3, 3)) == {D(3, 2): (q + 1 / q) * (1 - q ** 2)}
    assert model.act(Generator('e', 0), D()) == {}


def test_f_joins_block_above(model):
    assert D(3, 3) in model.act(Generator('f', 1), D(3, 2))


@pytest.mark.parametrize("size", range(6))
def test_matches_fock_action(model, size):
    for Y in model.diagrams(size):
        for gen in model.generators():
            assert model.act(gen, Y) == model.fock_act(gen, Y), (gen, Y)


def test_matches_fock_action_rank_two(model2):
    assert model2.transport_check(5) == []


def test_transport_check(model):
    assert model.transport_check(4) == []


def test_bad_generator(model):
    with pytest.raises(UsageError):
        model.act(Generator('f', 2), D())
    with pytest.raises(UsageError):
        model.act(Generator('z', 1), D())


def test_young_act_checks_h():
    with pytest.raises(UsageError):
        young_act(Generator('f', 1), Diagram((1,), 5), 1)
    assert young_act(Generator('f', 2), Diagram((), 5), 2) == {Diagram((1,), 5): ONE}


# the form

def test_norms():
    assert inner_norm(D()) == ONE
    assert inner_norm(D(2, 1)) == ONE
    assert inner_norm(D(3)) == 1 + q ** 2
    assert inner_norm(D(3, 3)) == (1 + q ** 2) * (1 - q ** 4)
    assert inner_norm(D(6, 3, 3)) == (1 + q ** 2) ** 2 * (1 - q ** 4)


def test_contravariant_form(model):
    assert model.adjoint_check(5) == []


def test_contravariant_form_rank_two(model2):
    assert model2.adjoint_check(4) == []


def test_reduce_at_one():
    assert reduce_q1(8) == [1, 1, 1, 2, 2, 3, 4, 5, 6]


def test_reduced_dimensions_count_surviving_norms(model):
    dims = model.reduce_q1(8)
    for d, dim in enumerate(dims):
        assert dim == len(model.diagrams(d)) - len(model.radical_q1(d))


def test_radical_is_stable(model):
    assert model.radical_q1(6) == [D(3, 3)]
    assert model.reduced_action_check(7) == []


def test_boson_adjointness_is_reported(model, caplog):
    with caplog.at_level(logging.WARNING, logger='qfock.young'):
        ok = model.boson_adjoint_check(1, 2)
    assert isinstance(ok, bool)
    assert ok or caplog.records


def test_boson_index(model):
    with pytest.raises(UsageError):
        model.boson_adjoint_check(0, 2)


def test_json(model):
    report = model.to_json(Generator('f', 1), D(2))
    assert report['h'] == 3
    assert report['generator'] == 'f1'
    assert [entry['diagram'] for entry in report['result']] == [[3], [2, 1]]


def test_contravariant_form_single_index(model):
    assert model.adjoint_check(4, 0) == []
    with pytest.raises(UsageError):
        model.adjoint_check(2, 5)
