# coding: utf-8
"""
The level-1 Fock space of A^(2)_2n realised on h-restricted diagrams,
h = 2n + 1: partitions in which only multiples of h may repeat.

A diagram y_1 >= y_2 >= ... >= y_l > 0 is the wedge of the letters with
grade_l = -y_k in front of the vacuum b_0 ^ b_0 ^ ...  Rows divisible by h
are the letters z^-a b_0, the only ones allowed to repeat.
"""
import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import partitions

from qfock.coeff import ONE, ZERO, RatQ, at_value, q, qint, ratq_to_json
from qfock.crystal import A2Even, Elem
from qfock.exceptions import UsageError
from qfock.fock import FockVector, fock_space
from qfock.wedge import Generator, Word, accumulate


logger = logging.getLogger(__name__)

# v_n ^ b_0 = -q^2 b_0 ^ v_n and b_0 ^ v_-n = -q^2 v_-n ^ b_0
SWAP = -q ** 2


class Diagram(tuple):
    """
    A weakly decreasing tuple of positive rows in which only multiples of
    ``h`` repeat.
    """

    def __new__(cls, rows: Iterable[int] = (), h: int = 3):
        rows = tuple(int(y) for y in rows)
        if h < 3 or h % 2 == 0:
            raise UsageError('h must be odd and at least 3, got {}'.format(h))
        if any(y <= 0 for y in rows):
            raise UsageError('rows must be positive: {}'.format(list(rows)))
        for a, b in zip(rows, rows[1:]):
            if a < b:
                raise UsageError('rows must decrease: {}'.format(list(rows)))
            if a == b and a % h:
                raise UsageError('row {} repeats but is not divisible by {}'.format(a, h))
        self = super().__new__(cls, rows)
        self.h = h
        return self

    def __getnewargs__(self):
        return tuple(self), self.h

    def __repr__(self):
        return 'Diagram({}, h={})'.format(list(self), self.h)

    @property
    def size(self) -> int:
        return sum(self)

    def multiplicity(self, y: int) -> int:
        return self.count(y)

    def to_json(self) -> list:
        return list(self)


def diagrams(h: int, size: int) -> List[Diagram]:
    found = []
    for p in partitions(size):
        if any(mult > 1 and part % h for part, mult in p.items()):
            continue
        rows = sorted((part for part, mult in p.items() for _ in range(mult)), reverse=True)
        found.append(Diagram(rows, h))
    found.sort(reverse=True)
    return found


def _dict_to_json(terms: Mapping[Diagram, RatQ]) -> list:
    return [{'diagram': Y.to_json(), 'coeff': ratq_to_json(c)} for Y, c in sorted(terms.items(), reverse=True)]


class YoungModel(object):
    """
    U_q(A^(2)_2n) acting on the span of h-restricted diagrams, matched
    with F_0 of the A^(2)_2n Fock space through ``to_fock``.
    """

    def __init__(self, n: int):
        self.n = n
        self.h = 2 * n + 1
        self.atype = A2Even(n)
        self.space = fock_space(self.atype)
        self._tail = self.space.ground.lam(0).lam

    def __repr__(self):
        return 'YoungModel(n={})'.format(self.n)

    def diagram(self, rows: Iterable[int]) -> Diagram:
        return Diagram(rows, self.h)

    def diagrams(self, size: int) -> List[Diagram]:
        return diagrams(self.h, size)

    # rows and letters

    def letter_of_row(self, y: int) -> Elem:
        n, h = self.n, self.h
        a, r = divmod(y, h)
        if r == 0:
            return Elem(0, -a)
        if r <= n:
            return Elem(-(n + 1 - r), -a)
        return Elem(r - n, -(a + 1))

    def row_of_letter(self, b: Elem) -> int:
        return -self.atype.grade_l(b)

    def bij_from_wedge(self, prefix: Word) -> Diagram:
        """
        The diagram of a normally ordered prefix of F_0; every letter must
        lie strictly below the vacuum letter b_0.
        """
        rows = []
        for b in prefix:
            y = self.row_of_letter(b)
            if y <= 0:
                raise UsageError('{!r} is not in V_aff^+'.format(b))
            rows.append(y)
        return self.diagram(rows)

    def wedge_from_diagram(self, Y: Diagram) -> Word:
        return tuple(self.letter_of_row(y) for y in Y)

    def to_fock(self, Y: Diagram) -> FockVector:
        return FockVector(self.space, 0, {self.wedge_from_diagram(Y): ONE})

    def from_fock(self, F: FockVector) -> Dict[Diagram, RatQ]:
        if F.m:
            raise UsageError('diagrams describe F_0, not F_{}'.format(F.m))
        return {self.bij_from_wedge(p): c for p, c in F.items()}

    # the action

    def _beta(self, i: int, y: int) -> int:
        return self.atype.pairing(i, self.letter_of_row(y))

    def _blocks(self, Y: Diagram) -> Iterable[Tuple[int, int]]:
        start = 0
        while start < len(Y):
            end = start
            while end + 1 < len(Y) and Y[end + 1] == Y[start]:
                end += 1
            yield start, end
            start = end + 1

    def _block_factor(self, alpha: int) -> RatQ:
        return sum((SWAP ** p for p in range(alpha)), ZERO)

    def f_act(self, i: int, Y: Diagram) -> Dict[Diagram, RatQ]:
        atype, h = self.atype, self.h
        qi = atype.qi(i)
        e = atype.qi_exp(i)
        result: Dict[Diagram, RatQ] = {}
        for start, end in self._blocks(Y):
            y = Y[start]
            b = self.letter_of_row(y)
            if atype.kashiwara('f', i, b) is None:
                continue
            if start and Y[start - 1] == y + 1 and (y + 1) % h:
                continue
            after = sum(self._beta(i, x) for x in Y[end + 1:]) + self._tail[i]
            coef = qint(1 + atype.eps(i, b), e) * self._block_factor(end - start + 1) * qi ** after
            rows = Y[:start] + (y + 1,) + Y[start + 1:]
            accumulate(result, self.diagram(rows), coef)
        if i == self.n and (not Y or Y[-1] != 1):
            accumulate(result, self.diagram(Y + (1,)), ONE)
        return result

    def e_act(self, i: int, Y: Diagram) -> Dict[Diagram, RatQ]:
        atype, h = self.atype, self.h
        qi = atype.qi(i)
        e = atype.qi_exp(i)
        result: Dict[Diagram, RatQ] = {}
        for start, end in self._blocks(Y):
            y = Y[start]
            b = self.letter_of_row(y)
            if atype.kashiwara('e', i, b) is None:
                continue
            if end + 1 < len(Y) and Y[end + 1] == y - 1 and (y - 1) % h:
                continue
            before = sum(self._beta(i, x) for x in Y[:start])
            coef = qint(1 + atype.phi(i, b), e) * self._block_factor(end - start + 1) * qi ** -before
            # the vacuum letter b_0 is absorbed into the tail
            rows = Y[:end] + ((y - 1,) if y > 1 else ()) + Y[end + 1:]
            accumulate(result, self.diagram(rows), coef)
        return result

    def t_act(self, i: int, Y: Diagram, inverse: bool = False) -> Dict[Diagram, RatQ]:
        total = sum(self._beta(i, y) for y in Y) + self._tail[i]
        return {Y: self.atype.qi(i) ** (-total if inverse else total)}

    def act(self, gen: Generator, Y: Diagram) -> Dict[Diagram, RatQ]:
        kind, i = gen
        if i not in self.atype.index and kind != 'z':
            raise UsageError('no generator {}{} for {}'.format(kind, i, self.atype))
        if kind == 'e':
            return self.e_act(i, Y)
        if kind == 'f':
            return self.f_act(i, Y)
        if kind in ('t', 'tinv'):
            return self.t_act(i, Y, inverse=kind == 'tinv')
        raise UsageError('{!r} does not act on diagrams'.format(gen))

    def act_sum(self, gen: Generator, terms: Mapping[Diagram, RatQ]) -> Dict[Diagram, RatQ]:
        result: Dict[Diagram, RatQ] = {}
        for Y, c in terms.items():
            for Z, d in self.act(gen, Y).items():
                accumulate(result, Z, c * d)
        return result

    def fock_act(self, gen: Generator, Y: Diagram) -> Dict[Diagram, RatQ]:
        return self.from_fock(self.space.act(gen, self.to_fock(Y)))

    def boson_act(self, k: int, Y: Diagram) -> Dict[Diagram, RatQ]:
        return self.from_fock(self.space.boson_act(k, self.to_fock(Y)))

    def generators(self) -> List[Generator]:
        return [Generator(kind, i) for i in self.atype.index for kind in ('e', 'f', 't')]

    # the bilinear form

    def inner_norm(self, Y: Diagram) -> RatQ:
        """
        (Y, Y): each block of alpha rows equal to a multiple of h gives
        prod_{i <= alpha} (1 - (-q^2)^i).  Distinct diagrams are orthogonal.
        """
        norm = ONE
        for y in set(Y):
            if y % self.h == 0:
                for k in range(1, Y.multiplicity(y) + 1):
                    norm *= 1 - SWAP ** k
        return norm

    def pairing(self, X: Mapping[Diagram, RatQ], Z: Mapping[Diagram, RatQ]) -> RatQ:
        return sum((c * Z[Y] * self.inner_norm(Y) for Y, c in X.items() if Y in Z), ZERO)

    # checks

    def transport_check(self, size: int) -> List[Tuple[Generator, Diagram]]:
        """
        Generators and diagrams of size <= ``size`` on which the diagram
        action differs from the Fock space action.
        """
        failures = []
        for d in range(size + 1):
            for Y in self.diagrams(d):
                for gen in self.generators():
                    if self.act(gen, Y) != self.fock_act(gen, Y):
                        failures.append((gen, Y))
        if failures:
            logger.warning('%s: %d transport failures, first %s', self, len(failures), failures[0])
        return failures

    def adjoint_check(self, degree: int, index: Optional[int] = None) -> List[Tuple[int, Diagram, Diagram]]:
        """
        (f_i X, Z) = (X, q_i e_i t_i Z) for |X| < degree and |Z| = |X| + 1,
        for one index or all of them.
        """
        if index is not None and index not in self.atype.index:
            raise UsageError('no generator index {} for {}'.format(index, self.atype))
        indices = self.atype.index if index is None else [index]
        failures = []
        for d in range(degree):
            for i in indices:
                for X in self.diagrams(d):
                    fX = self.f_act(i, X)
                    for Z in self.diagrams(d + 1):
                        right = self.act_sum(Generator('e', i), self.t_act(i, Z))
                        lhs = self.pairing(fX, {Z: ONE})
                        rhs = self.atype.qi(i) * self.pairing({X: ONE}, right)
                        if lhs != rhs:
                            failures.append((i, X, Z))
        if failures:
            logger.warning('%s: form is not contravariant at %s', self, failures[0])
        return failures

    def radical_q1(self, size: int) -> List[Diagram]:
        return [Y for Y in self.diagrams(size) if at_value(self.inner_norm(Y), 1) == 0]

    def reduce_q1(self, degree: int) -> List[int]:
        """
        Graded dimensions of the quotient by the radical at q = 1, sizes
        0..degree.  The form is taken diagonal in the diagram basis with
        entries ``inner_norm``, so each rank counts the diagrams whose norm
        survives at q = 1; ``adjoint_check`` is what confirms that this
        diagonal form is contravariant.
        """
        dims = []
        for d in range(degree + 1):
            basis = self.diagrams(d)
            values = [at_value(self.inner_norm(Y), 1) for Y in basis]
            gram = DomainMatrix.diag([QQ(v.numerator, v.denominator) for v in values], QQ)
            dims.append(gram.rank())
        logger.debug('%s: reduced dimensions %s', self, dims)
        return dims

    def reduced_action_check(self, degree: int) -> List[Tuple[Generator, Diagram]]:
        """
        At q = 1 the radical of the form is stable under e_i and f_i.
        """
        failures = []
        for d in range(degree + 1):
            for X in self.radical_q1(d):
                for gen in self.generators():
                    if gen.kind == 't':
                        continue
                    for Z, c in self.act(gen, X).items():
                        if at_value(self.inner_norm(Z), 1) != 0 and at_value(c, 1) != 0:
                            failures.append((gen, X))
                            break
        return failures

    def boson_adjoint_check(self, k: int, degree: int) -> bool:
        """
        (B_-k X, Z) = (X, B_k Z) for |X| <= degree.  Reported, not enforced.
        """
        if k <= 0:
            raise UsageError('boson index must be positive, got {}'.format(k))
        ok = True
        for d in range(degree + 1):
            for X in self.diagrams(d):
                raised = self.boson_act(-k, X)
                for Z in self.diagrams(d + k * self.h):
                    lhs = self.pairing(raised, {Z: ONE})
                    rhs = self.pairing({X: ONE}, self.boson_act(k, Z))
                    if lhs != rhs:
                        logger.warning('%s: B_%d is not adjoint to B_-%d at %s, %s', self, k, k, X, Z)
                        ok = False
        return ok

    def to_json(self, gen: Generator, Y: Diagram) -> dict:
        return {'n': self.n, 'h': self.h, 'generator': '{}{}'.format(*gen), 'diagram': Y.to_json(),
                'result': _dict_to_json(self.act(gen, Y)), 'norm': ratq_to_json(self.inner_norm(Y))}


@lru_cache(maxsize=None)
def young_model(n: int) -> YoungModel:
    return YoungModel(n)


def bij_from_wedge(prefix: Word, n: int = 1) -> Diagram:
    return young_model(n).bij_from_wedge(prefix)


def young_act(gen: Generator, Y: Diagram, n: int = 1) -> Dict[Diagram, RatQ]:
    model = young_model(n)
    if Y.h != model.h:
        raise UsageError('{!r} is not a diagram for h={}'.format(Y, model.h))
    return model.act(gen, Y)


def inner_norm(Y: Diagram) -> RatQ:
    return young_model((Y.h - 1) // 2).inner_norm(Y)


def reduce_q1(degree: int, n: int = 1) -> List[int]:
    return young_model(n).reduce_q1(degree)
