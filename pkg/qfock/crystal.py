# coding: utf-8
"""
Affine Cartan data and the level-l perfect crystals used by the Fock space
construction.

Every family is described by its f-arrows on the letters of B; an arrow
of colour 0 always multiplies by z^-1.  Everything else (string lengths,
weights, Cartan pairings, the tensor rule) is read off the graph.
"""
import logging
from collections import deque
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from qfock.coeff import RatQ, q, to_fraction
from qfock.exceptions import UsageError


logger = logging.getLogger(__name__)

PHI = 'phi'

Letter = Union[int, str]


class Elem(NamedTuple):
    """
    The affinized crystal element z^z b_letter.
    """
    letter: Letter
    z: int = 0

    def shift(self, a: int) -> "Elem":
        return Elem(self.letter, self.z + a)

    def __repr__(self):
        return 'z^{}b[{}]'.format(self.z, self.letter)


def letter_key(letter: Letter):
    return (1, 0) if letter == PHI else (0, letter)


def elem_key(b: Elem):
    return (b.z, letter_key(b.letter))


def letter_to_json(letter: Letter):
    return letter


def letter_from_json(value) -> Letter:
    if value == PHI:
        return PHI
    if isinstance(value, bool) or not isinstance(value, int):
        raise UsageError('bad letter {!r}'.format(value))
    return value


def elem_to_json(b: Elem) -> list:
    return [letter_to_json(b.letter), b.z]


def elem_from_json(value) -> Elem:
    try:
        letter, z = value
    except (TypeError, ValueError) as exc:
        raise UsageError('bad crystal element {!r}'.format(value)) from exc
    if isinstance(z, bool) or not isinstance(z, int):
        raise UsageError('bad z-power in {!r}'.format(value))
    return Elem(letter_from_json(letter), z)


class Weight(NamedTuple):
    """
    sum lam[i] Lambda_i + delta * delta.
    """
    lam: Tuple[int, ...]
    delta: Fraction = Fraction(0)

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.lam, other.lam)), self.delta + other.delta)

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.lam, other.lam)), self.delta - other.delta)

    def __neg__(self):
        return Weight(tuple(-a for a in self.lam), -self.delta)

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.lam), k * self.delta)

    def pairing(self, i: int) -> int:
        return self.lam[i]

    def level(self, comarks: Sequence[int]) -> int:
        return sum(a * c for a, c in zip(comarks, self.lam))

    @property
    def cl(self) -> Tuple[int, ...]:
        return self.lam

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * (rank + 1), Fraction(0))

    def to_json(self) -> dict:
        return {"lam": list(self.lam), "delta": str(self.delta)}


class GroundState(object):
    """
    A ground state sequence b°_m together with the weights lambda_m of the
    vacua |m>.  ``period`` and ``shift`` satisfy b°_{m+N} = z^c b°_m.
    """

    def __init__(self, atype: "AffineType", kappa, elem_fn, period: int, shift: int):
        self.atype = atype
        self.kappa = kappa
        self._elem_fn = elem_fn
        self.period = period
        self.shift = shift

    def b(self, m: int) -> Elem:
        return self._elem_fn(m)

    def lam(self, m: int) -> Weight:
        """
        lambda_m = wt(b°_m) + lambda_{m+1}, pinned by delta(lambda_0) = 0.
        """
        if m >= 0:
            delta = -sum(self.b(k).z for k in range(0, m))
        else:
            delta = sum(self.b(k).z for k in range(m, 0))
        return Weight(self.atype.phi_vec(self.b(m)), Fraction(delta))

    def __call__(self, m: int) -> Tuple[Elem, Weight]:
        return self.b(m), self.lam(m)

    def check(self) -> bool:
        """
        Defining properties over one full period.
        """
        t = self.atype
        for m in range(self.period + 1):
            b, nxt = self.b(m), self.b(m + 1)
            if Weight(t.eps_vec(b)).level(t.comarks) != t.level:
                return False
            if t.eps_vec(b) != t.phi_vec(nxt):
                return False
            if t.energy(b, nxt) != 1:
                return False
            if self.lam(m) != t.wt(b) + self.lam(m + 1):
                return False
            if self.b(m + self.period) != b.shift(self.shift):
                return False
        return True

    def __repr__(self):
        return 'GroundState({}, kappa={!r})'.format(self.atype, self.kappa)


class AffineType(object):
    """
    Base class of the seven families.  Subclasses provide the letters, the
    f-arrows, the printed marks/comarks and (alpha_i, alpha_i), the energy
    table on B (x) B, the constant part of the grading l and the ground
    state sequences.
    """
    tag = ''
    min_rank = 1
    kappas: Tuple = (0,)

    def __init__(self, n: int, k: int = 1):
        if n < self.min_rank:
            raise UsageError('{} needs rank >= {}, got {}'.format(self.tag, self.min_rank, n))
        self.n = n
        self.level = k
        self.extrapolated = False
        self.index = tuple(range(n + 1))
        self.letters = tuple(self._letters())
        self._letter_set = frozenset(self.letters)
        self._f: Dict[int, Dict[Letter, Tuple[Letter, int]]] = {i: {} for i in self.index}
        self._e: Dict[int, Dict[Letter, Tuple[Letter, int]]] = {i: {} for i in self.index}
        for i, src, dst in self._arrows():
            dz = -1 if i == 0 else 0
            self._f[i][src] = (dst, dz)
            self._e[i][dst] = (src, -dz)
        self._cartan = None
        logger.debug('built crystal %s with %d letters', self, len(self.letters))

    def __repr__(self):
        if self.level != 1:
            return '{}(n={}, k={})'.format(type(self).__name__, self.n, self.level)
        return '{}(n={})'.format(type(self).__name__, self.n)

    def __eq__(self, other):
        return type(self) is type(other) and (self.n, self.level) == (other.n, other.level)

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.level))

    # family data

    def _letters(self) -> Iterable[Letter]:
        raise NotImplementedError

    def _arrows(self) -> Iterable[Tuple[int, Letter, Letter]]:
        raise NotImplementedError

    def _table(self, i: Letter, j: Letter) -> int:
        raise NotImplementedError

    def _grade(self, j: Letter) -> int:
        raise NotImplementedError

    def _ground(self, kappa) -> GroundState:
        raise NotImplementedError

    norms: Tuple[int, ...] = ()
    marks: Tuple[int, ...] = ()
    comarks: Tuple[int, ...] = ()
    coxeter = 0
    p: Optional[RatQ] = None
    xi: Optional[RatQ] = None

    @property
    def dual_coxeter(self) -> int:
        return sum(self.comarks)

    # Kashiwara operators

    def _check_index(self, i):
        if i not in self._f:
            raise UsageError('index {!r} outside I for {}'.format(i, self))

    def _check_letter(self, b: Elem):
        if b.letter not in self._letter_set:
            raise UsageError('letter {!r} is not in the crystal of {}'.format(b.letter, self))

    def kashiwara(self, op: str, i: int, b: Elem) -> Optional[Elem]:
        self._check_index(i)
        self._check_letter(b)
        if op == 'f':
            arrows = self._f[i]
        elif op == 'e':
            arrows = self._e[i]
        else:
            raise UsageError('unknown Kashiwara operator {!r}'.format(op))
        target = arrows.get(b.letter)
        if target is None:
            return None
        letter, dz = target
        return Elem(letter, b.z + dz)

    def f(self, i: int, b: Elem) -> Optional[Elem]:
        return self.kashiwara('f', i, b)

    def e(self, i: int, b: Elem) -> Optional[Elem]:
        return self.kashiwara('e', i, b)

    def _string(self, arrows, letter) -> int:
        count = 0
        while letter in arrows:
            letter = arrows[letter][0]
            count += 1
        return count

    def eps(self, i: int, b: Elem) -> int:
        self._check_index(i)
        return self._string(self._e[i], b.letter)

    def phi(self, i: int, b: Elem) -> int:
        self._check_index(i)
        return self._string(self._f[i], b.letter)

    def eps_vec(self, b: Elem) -> Tuple[int, ...]:
        return tuple(self.eps(i, b) for i in self.index)

    def phi_vec(self, b: Elem) -> Tuple[int, ...]:
        return tuple(self.phi(i, b) for i in self.index)

    def wt(self, b: Elem) -> Weight:
        return Weight(tuple(p - e for p, e in zip(self.phi_vec(b), self.eps_vec(b))), Fraction(b.z))

    def pairing(self, i: int, b: Elem) -> int:
        return self.phi(i, b) - self.eps(i, b)

    # Cartan data read off the graph

    @property
    def cartan(self) -> Tuple[Tuple[int, ...], ...]:
        """
        cartan[i][j] = <h_i, alpha_j>.
        """
        if self._cartan is None:
            columns = [self.alpha(j).lam for j in self.index]
            self._cartan = tuple(tuple(columns[j][i] for j in self.index) for i in self.index)
        return self._cartan

    def alpha(self, j: int) -> Weight:
        self._check_index(j)
        for letter in self.letters:
            b = Elem(letter)
            target = self.f(j, b)
            if target is not None:
                return self.wt(b) - self.wt(target)
        raise UsageError('no {}-arrow in {}'.format(j, self))

    def null_root(self) -> Weight:
        total = Weight.zero(len(self.index) - 1)
        for a, j in zip(self.marks, self.index):
            total = total + self.alpha(j).scale(a)
        return total

    def root_coordinates(self, weight: Weight) -> Optional[Tuple[int, ...]]:
        """
        The integers n_i with weight = sum n_i alpha_i, or None when weight
        is not in the root lattice.  alpha_0 is the only simple root with a
        delta component.
        """
        n0 = weight.delta
        if n0.denominator != 1:
            return None
        cartan = self.cartan
        finite = self.index[1:]
        rows = [[QQ(cartan[i][j]) for j in finite] for i in finite]
        rhs = [[QQ(weight.lam[i] - int(n0) * cartan[i][0])] for i in finite]
        size = len(finite)
        solution = DomainMatrix(rows, (size, size), QQ).lu_solve(DomainMatrix(rhs, (size, 1), QQ))
        coords = [int(n0)]
        for (value,) in solution.to_list():
            value = to_fraction(value)
            if value.denominator != 1:
                return None
            coords.append(int(value))
        if sum(cartan[0][j] * n for j, n in zip(self.index, coords)) != weight.lam[0]:
            return None
        return tuple(coords)

    def qi(self, i: int) -> RatQ:
        return q ** (self.norms[i] // 2)

    def qi_exp(self, i: int) -> int:
        return self.norms[i] // 2

    def bilinear(self, i: int, j: int) -> int:
        """
        (alpha_i, alpha_j).
        """
        return self.norms[i] * self.cartan[i][j] // 2

    # energy and grading

    def energy(self, b1: Elem, b2: Elem) -> int:
        return self._table(b1.letter, b2.letter) - b1.z + b2.z

    def grade_l(self, b: Elem) -> int:
        return self.coxeter * b.z + self._grade(b.letter)

    def is_normal(self, word: Sequence[Elem]) -> bool:
        return all(self.energy(a, b) > 0 for a, b in zip(word, word[1:]))

    # ground states

    def ground(self, kappa=None) -> GroundState:
        if kappa is None:
            kappa = self.kappas[0]
        if kappa not in self.kappas:
            raise UsageError('kappa {!r} not valid for {}; choose from {!r}'.format(kappa, self, self.kappas))
        return self._ground(kappa)

    # tensor products, with the rule of the coproduct whose factors are
    # exchanged relative to Kashiwara's convention

    def tensor_eps(self, i: int, word: Sequence[Elem]) -> int:
        result = 0
        for b in word:
            result = max(self.eps(i, b), result - self.pairing(i, b))
        return result

    def tensor_phi(self, i: int, word: Sequence[Elem]) -> int:
        return self.tensor_eps(i, word) + sum(self.pairing(i, b) for b in word)

    def tensor_wt(self, word: Sequence[Elem]) -> Weight:
        total = Weight.zero(len(self.index) - 1)
        for b in word:
            total = total + self.wt(b)
        return total

    def tensor_kashiwara(self, op: str, i: int, word: Sequence[Elem]) -> Optional[Tuple[Elem, ...]]:
        if not word:
            raise UsageError('empty word')
        word = list(word)
        for pos in reversed(range(len(word))):
            b = word[pos]
            left = self.tensor_eps(i, word[:pos])
            if op == 'f':
                here = self.phi(i, b) > left
            else:
                here = self.phi(i, b) >= left
            if here or pos == 0:
                changed = self.kashiwara(op, i, b)
                if changed is None:
                    return None
                word[pos] = changed
                return tuple(word)
        return None

    # enumeration and reports

    def elements(self, window: int) -> List[Elem]:
        return [Elem(letter, z) for z in range(-window, window + 1) for letter in self.letters]

    def graph_edges(self) -> List[Tuple[int, Elem, Elem]]:
        edges = []
        for i in self.index:
            for src, (dst, dz) in sorted(self._f[i].items(), key=lambda kv: letter_key(kv[0])):
                edges.append((i, Elem(src), Elem(dst, dz)))
        return edges

    def energy_table(self) -> Dict[Tuple[Letter, Letter], int]:
        return {(i, j): self._table(i, j) for i in self.letters for j in self.letters}

    def dominant_weights(self) -> List[Tuple[int, ...]]:
        """
        (P+_cl)_l for l = level.
        """
        bounds = [range(self.level // c + 1) for c in self.comarks]
        return [lam for lam in product(*bounds) if sum(a * c for a, c in zip(lam, self.comarks)) == self.level]

    def check_perfect(self) -> dict:
        """
        Minimal elements, the eps/phi bijections onto level-l dominant
        weights, and connectivity of B (x) B.
        """
        levels = {letter: Weight(self.eps_vec(Elem(letter))).level(self.comarks) for letter in self.letters}
        minimal = sorted((j for j, lv in levels.items() if lv == self.level), key=letter_key)
        dominant = set(self.dominant_weights())
        eps_image = [self.eps_vec(Elem(j)) for j in minimal]
        phi_image = [self.phi_vec(Elem(j)) for j in minimal]
        report = {
            'family': self.tag,
            'rank': self.n,
            'level': self.level,
            'min_level_ok': min(levels.values()) == self.level,
            'minimal': [letter_to_json(j) for j in minimal],
            'eps_bijective': len(set(eps_image)) == len(eps_image) and set(eps_image) == dominant,
            'phi_bijective': len(set(phi_image)) == len(phi_image) and set(phi_image) == dominant,
            'permutation': [[list(a), list(b)] for a, b in zip(phi_image, eps_image)],
            'connected': self._tensor_square_connected(),
            'extrapolated': self.extrapolated,
        }
        report['perfect'] = all(report[k] for k in ('min_level_ok', 'eps_bijective', 'phi_bijective', 'connected'))
        return report

    def _tensor_square_connected(self) -> bool:
        start = (Elem(self.letters[0]), Elem(self.letters[0]))
        seen = {start}
        todo = deque([start])
        while todo:
            pair = todo.popleft()
            for i in self.index:
                for op in ('e', 'f'):
                    moved = self.tensor_kashiwara(op, i, pair)
                    if moved is None:
                        continue
                    moved = tuple(Elem(b.letter) for b in moved)
                    if moved not in seen:
                        seen.add(moved)
                        todo.append(moved)
        return len(seen) == len(self.letters) ** 2

    def tables(self) -> dict:
        ground = {}
        for kappa in self.kappas:
            gs = self.ground(kappa)
            ground[str(kappa)] = {
                'period': gs.period,
                'shift': gs.shift,
                'states': [elem_to_json(gs.b(m)) for m in range(gs.period)],
                'weights': [gs.lam(m).to_json() for m in range(gs.period)],
            }
        return {
            'family': self.tag,
            'rank': self.n,
            'level': self.level,
            'cartan': [list(row) for row in self.cartan],
            'marks': list(self.marks),
            'comarks': list(self.comarks),
            'edges': [[i, elem_to_json(a), elem_to_json(b)] for i, a, b in self.graph_edges()],
            'energy': [[letter_to_json(i), letter_to_json(j), h] for (i, j), h in self.energy_table().items()],
            'grade': [[letter_to_json(j), self._grade(j)] for j in self.letters],
            'ground': ground,
        }


def signature_rule(atype: AffineType, op: str, i: int, word: Sequence[Elem]) -> Optional[Tuple[Elem, ...]]:
    """
    Kashiwara operator on a word by sign cancellation, reading the factors
    from right to left.
    """
    signs: List[Tuple[str, int]] = []
    for pos in reversed(range(len(word))):
        b = word[pos]
        signs += [('-', pos)] * atype.eps(i, b) + [('+', pos)] * atype.phi(i, b)
    reduced: List[Tuple[str, int]] = []
    for sign in signs:
        if sign[0] == '-' and reduced and reduced[-1][0] == '+':
            reduced.pop()
        else:
            reduced.append(sign)
    if op == 'f':
        pluses = [pos for s, pos in reduced if s == '+']
        if not pluses:
            return None
        pos = pluses[0]
    else:
        minuses = [pos for s, pos in reduced if s == '-']
        if not minuses:
            return None
        pos = minuses[-1]
    word = list(word)
    word[pos] = atype.kashiwara(op, i, word[pos])
    return tuple(word)


def _precedes(order: Sequence[Letter]):
    rank = {letter: pos for pos, letter in enumerate(order)}

    def precedes(i, j):
        # i < j in the printed order, the first letter being the largest
        return rank[i] > rank[j]

    return precedes


def _alternating(even: Elem, odd: Elem):
    return lambda m: even if m % 2 == 0 else odd


class A1(AffineType):
    """
    A^(1)_n at level 1 on B = {b_0, ..., b_n}.
    """
    tag = 'a1'

    def __init__(self, n: int):
        self.norms = (2,) * (n + 1)
        self.marks = (1,) * (n + 1)
        self.comarks = (1,) * (n + 1)
        self.coxeter = n + 1
        self.p = q
        self.xi = q ** (n + 1)
        super().__init__(n)

    def _letters(self):
        return range(self.n + 1)

    def _arrows(self):
        for i in range(1, self.n + 1):
            yield i, i - 1, i
        yield 0, self.n, 0

    def _table(self, i, j):
        return 1 if i > j else 0

    def _grade(self, j):
        return -j

    def _ground(self, kappa):
        h = self.coxeter

        def elem(m):
            a = -(-m // h)
            return Elem(a * h - m, a)

        return GroundState(self, kappa, elem, h, 1)


class A2Even(AffineType):
    """
    A^(2)_2n at level 1.
    """
    tag = 'a2even'

    def __init__(self, n: int):
        self.norms = (8,) + (4,) * (n - 1) + (2,)
        self.marks = (1,) + (2,) * n
        self.comarks = (2,) * n + (1,)
        self.coxeter = 2 * n + 1
        self.p = q ** 2
        self.xi = -q ** (2 * (2 * n + 1))
        super().__init__(n)
        self._before = _precedes(list(range(1, n + 1)) + [0] + list(range(-n, 0)))

    def _letters(self):
        return range(-self.n, self.n + 1)

    def _arrows(self):
        n = self.n
        for i in range(1, n):
            yield i, i, i + 1
            yield i, -(i + 1), -i
        yield n, n, 0
        yield n, 0, -n
        yield 0, -1, 1

    def _table(self, i, j):
        return 1 if self._before(i, j) or i == j == 0 else 0

    def _grade(self, j):
        return _grade_with_zero(self.n, j)

    def _ground(self, kappa):
        return GroundState(self, kappa, lambda m: Elem(0), 1, 0)


def _grade_with_zero(n, j):
    if j == 0 or j == PHI:
        return 0
    if j > 0:
        return n + 1 - j
    return -(n + 1 + j)


class B1(AffineType):
    """
    B^(1)_n at level 1; kappa selects the ground state through b_0 or b_1.
    """
    tag = 'b1'
    min_rank = 3
    kappas = (0, 1)

    def __init__(self, n: int):
        self.norms = (4,) * n + (2,)
        self.marks = (1, 1) + (2,) * (n - 1)
        self.comarks = (1, 1) + (2,) * (n - 2) + (1,)
        self.coxeter = 2 * n
        self.p = q ** 2
        self.xi = q ** (2 * (2 * n - 1))
        super().__init__(n)
        self._before = _precedes(list(range(1, n + 1)) + [0] + list(range(-n, 0)))

    def _letters(self):
        return range(-self.n, self.n + 1)

    def _arrows(self):
        n = self.n
        for i in range(1, n):
            yield i, i, i + 1
            yield i, -(i + 1), -i
        yield n, n, 0
        yield n, 0, -n
        yield 0, -1, 2
        yield 0, -2, 1

    def _table(self, i, j):
        if (i, j) == (-1, 1):
            return 2
        return 1 if self._before(i, j) or i == j == 0 else 0

    def _grade(self, j):
        return _grade_with_zero(self.n, j)

    def _ground(self, kappa):
        if kappa == 0:
            return GroundState(self, kappa, lambda m: Elem(0), 1, 0)
        return GroundState(self, kappa, _alternating(Elem(1), Elem(-1, 1)), 2, 0)


class A2Odd(AffineType):
    """
    A^(2)_{2n-1} at level 1.
    """
    tag = 'a2odd'
    min_rank = 3
    kappas = (1,)

    def __init__(self, n: int):
        self.norms = (2,) * n + (4,)
        self.marks = (1, 1) + (2,) * (n - 2) + (1,)
        self.comarks = (1, 1) + (2,) * (n - 1)
        self.coxeter = 2 * n - 1
        self.p = q
        self.xi = -q ** (2 * n)
        super().__init__(n)
        self._before = _precedes(list(range(1, n + 1)) + list(range(-n, 0)))

    def _letters(self):
        return [j for j in range(-self.n, self.n + 1) if j]

    def _arrows(self):
        n = self.n
        for i in range(1, n):
            yield i, i, i + 1
            yield i, -(i + 1), -i
        yield n, n, -n
        yield 0, -1, 2
        yield 0, -2, 1

    def _table(self, i, j):
        if (i, j) == (-1, 1):
            return 2
        return 1 if self._before(i, j) else 0

    def _grade(self, j):
        return self.n - j if j > 0 else -(self.n + 1 + j)

    def _ground(self, kappa):
        return GroundState(self, kappa, _alternating(Elem(1), Elem(-1, 1)), 2, 0)


class D1(AffineType):
    """
    D^(1)_n at level 1.  The Coxeter number entering l is 2n-2.
    """
    tag = 'd1'
    min_rank = 4
    kappas = (1, 0)

    def __init__(self, n: int):
        self.norms = (2,) * (n + 1)
        self.marks = (1, 1) + (2,) * (n - 3) + (1, 1)
        self.comarks = self.marks
        self.coxeter = 2 * n - 2
        self.p = q
        self.xi = q ** (2 * n - 2)
        super().__init__(n)
        self._before = _precedes(list(range(1, n + 1)) + list(range(-n, 0)))

    def _letters(self):
        return [j for j in range(-self.n, self.n + 1) if j]

    def _arrows(self):
        n = self.n
        for i in range(1, n):
            yield i, i, i + 1
        for i in range(1, n - 1):
            yield i, -(i + 1), -i
        yield n - 1, -n, 1 - n
        yield n, n - 1, -n
        yield n, n, 1 - n
        yield 0, -1, 2
        yield 0, -2, 1

    def _table(self, i, j):
        if (i, j) == (-1, 1):
            return 2
        return 1 if self._before(i, j) or (i, j) == (self.n, -self.n) else 0

    def _grade(self, j):
        return self.n - j if j > 0 else -(self.n + j)

    def _ground(self, kappa):
        if kappa == 1:
            return GroundState(self, kappa, _alternating(Elem(1), Elem(-1, 1)), 2, 0)
        return GroundState(self, kappa, _alternating(Elem(self.n), Elem(-self.n)), 2, 0)


@lru_cache(maxsize=None)
def _warn_extrapolated(n: int):
    # once per rank; the flag stays on every instance
    logger.warning('D2 at rank %d lies below the drawn Dynkin range; results are extrapolated', n)


class D2(AffineType):
    """
    D^(2)_{n+1} at level 1 on B = {b_-n, ..., b_n, b_phi}.  With
    ``even=True`` only the component V_0 (x) z^2Z + v_phi (x) z^(2Z+1) is
    admitted.
    """
    tag = 'd2'
    min_rank = 2
    kappas = (0, PHI)

    def __init__(self, n: int, even: bool = False):
        self.norms = (2,) + (4,) * (n - 1) + (2,)
        self.marks = (1,) * (n + 1)
        self.comarks = (1,) + (2,) * (n - 1) + (1,)
        self.coxeter = n + 1
        self.p = q ** 2
        self.xi = q ** (2 * n)
        self.even = even
        super().__init__(n)
        if n < 4:
            self.extrapolated = True
            _warn_extrapolated(n)
        self._before = _precedes(list(range(1, n + 1)) + [0] + list(range(-n, 0)) + [PHI])

    def __eq__(self, other):
        return super().__eq__(other) and self.even == other.even

    def __hash__(self):
        return hash((super().__hash__(), self.even))

    def _letters(self):
        return list(range(-self.n, self.n + 1)) + [PHI]

    def _arrows(self):
        n = self.n
        for i in range(1, n):
            yield i, i, i + 1
            yield i, -(i + 1), -i
        yield n, n, 0
        yield n, 0, -n
        yield 0, -1, PHI
        yield 0, PHI, 1

    def admits(self, b: Elem) -> bool:
        if not self.even:
            return True
        return b.z % 2 == (1 if b.letter == PHI else 0)

    def _table(self, i, j):
        if i == j and i in (0, PHI):
            return 2
        if PHI in (i, j):
            return 0 if i == j else 1
        return 2 if self._before(i, j) else 0

    def _grade(self, j):
        return _grade_with_zero(self.n, j)

    def _ground(self, kappa):
        if self.even:
            # H(b_0 (x) b_0) = 2 is the ground condition on the even component
            if kappa != 0:
                raise UsageError('the even component of {} has only the kappa=0 ground state'.format(self))
            return GroundState(self, kappa, lambda m: Elem(0), 1, 0)
        return GroundState(self, kappa, lambda m: Elem(kappa, -m), 1, -1)


class A1Level(AffineType):
    """
    A^(1)_1 at level k on B = {b_0, ..., b_k}, the crystal of the (k+1)
    dimensional representation.
    """
    tag = 'a1k'

    def __init__(self, k: int):
        if k < 1:
            raise UsageError('level must be positive, got {}'.format(k))
        self.norms = (2, 2)
        self.marks = (1, 1)
        self.comarks = (1, 1)
        self.coxeter = 2
        self.p = q
        self.kappas = tuple(range(k + 1))
        super().__init__(1, k)

    def _letters(self):
        return range(self.level + 1)

    def _arrows(self):
        for j in range(self.level):
            yield 1, j, j + 1
            yield 0, j + 1, j

    def _table(self, i, j):
        return min(i, self.level - j)

    def _grade(self, j):
        return -j

    def _ground(self, kappa):
        k = self.level

        def elem(m):
            if m % 2:
                ell = (m + 1) // 2
                return Elem(kappa, -ell * (k - 2))
            ell = m // 2
            return Elem(k - kappa, -ell * (k - 2) - kappa + 1)

        return GroundState(self, kappa, elem, 2, -(k - 2))


FAMILY_CLASSES = {
    'a1': A1,
    'a2even': A2Even,
    'b1': B1,
    'a2odd': A2Odd,
    'd1': D1,
    'd2': D2,
    'a1k': A1Level,
}

MINIMAL_RANKS = {tag: cls.min_rank for tag, cls in FAMILY_CLASSES.items()}


def affine_type(tag: str, rank: Optional[int] = None, level: int = 1) -> AffineType:
    """
    Build the crystal data of a family; ``rank`` defaults to the smallest
    supported one.
    """
    try:
        cls = FAMILY_CLASSES[tag]
    except KeyError:
        raise UsageError('unknown family {!r}; choose from {}'.format(tag, ', '.join(FAMILY_CLASSES)))
    if cls is A1Level:
        if rank not in (None, 1):
            raise UsageError('a1k is only defined at rank 1')
        return A1Level(level)
    if level != 1:
        raise UsageError('{} is only supported at level 1'.format(tag))
    return cls(cls.min_rank if rank is None else rank)
