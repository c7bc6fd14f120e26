# coding: utf-8
"""
The Fock spaces F_m: semi-infinite normally ordered wedges
G(b_m) ^ G(b_{m+1}) ^ ... with b_k = b°_k for k >> 0, and the actions of
e_i, f_i, t_i and of the bosons B_n on them.

A basis vector is stored as its finite prefix (b_m, ..., b_{s-1}); the
tail |s> is understood.  The prefix never ends in b°_{s-1}, so every
vector has exactly one representation.
"""
import logging
from collections import deque
from functools import lru_cache
from itertools import count
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.utilities.iterables import partitions

from qfock.coeff import ONE, ZERO, K, RatQ, qfact, qint, ratq, ratq_from_json, ratq_to_json
from qfock.crystal import AffineType, Elem, Weight, elem_from_json, elem_key, elem_to_json
from qfock.exceptions import TheoremViolation, UsageError
from qfock.wedge import Generator, VaffVector, Word, accumulate, act_words, relation_table


logger = logging.getLogger(__name__)

DOMAIN = K.to_domain()

Coords = Tuple[int, ...]


def _partitions(k: int) -> Iterator[Tuple[int, ...]]:
    for p in partitions(k):
        yield tuple(sorted((part for part, mult in p.items() for _ in range(mult)), reverse=True))


def _shift_slots(terms: Mapping[Word, RatQ], n: int) -> Dict[Word, RatQ]:
    """
    sum_k z^n acting on the k-th letter.
    """
    result: Dict[Word, RatQ] = {}
    for word, c in terms.items():
        for k, b in enumerate(word):
            accumulate(result, word[:k] + (b.shift(n),) + word[k + 1:], c)
    return result


class FockVector(object):
    """
    sum c * prefix ^ |m + len(prefix)> in F_m.
    """

    def __init__(self, space: "FockSpace", m: int, terms: Optional[Mapping[Word, object]] = None):
        self.space = space
        self.m = m
        self.terms: Dict[Word, RatQ] = {}
        for prefix, c in (terms or {}).items():
            accumulate(self.terms, tuple(prefix), ratq(c))

    def items(self):
        return self.terms.items()

    def coeff(self, prefix: Word) -> RatQ:
        return self.terms.get(tuple(prefix), ZERO)

    def weight(self) -> Optional[Weight]:
        weights = {self.space.term_weight(self.m, prefix) for prefix in self.terms}
        if not weights:
            return None
        if len(weights) > 1:
            raise TheoremViolation('Fock vector mixes the weights {}'.format(sorted(weights)))
        return weights.pop()

    def _check(self, other: "FockVector"):
        if not isinstance(other, FockVector) or other.space != self.space or other.m != self.m:
            raise UsageError('cannot combine vectors of different Fock spaces')

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return (self.space, self.m, self.terms) == (other.space, other.m, other.terms)

    def __add__(self, other):
        self._check(other)
        result = dict(self.terms)
        for prefix, c in other.terms.items():
            accumulate(result, prefix, c)
        return FockVector(self.space, self.m, result)

    def __sub__(self, other):
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        scalar = ratq(scalar)
        return FockVector(self.space, self.m, {p: c * scalar for p, c in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return 'FockVector(m={}, {!r})'.format(self.m, self.terms)

    def to_json(self) -> dict:
        terms = sorted(self.terms.items(), key=lambda kv: [elem_key(b) for b in kv[0]])
        return {
            'm': self.m,
            'terms': [{'prefix': [elem_to_json(b) for b in p], 'coeff': ratq_to_json(c)} for p, c in terms],
        }

    @classmethod
    def from_json(cls, space: "FockSpace", data: dict) -> "FockVector":
        """
        Prefixes need not be normally ordered; they are straightened on
        the way in.
        """
        try:
            m = data['m']
            entries = data['terms']
        except (KeyError, TypeError) as exc:
            raise UsageError('malformed Fock vector') from exc
        if isinstance(m, bool) or not isinstance(m, int):
            raise UsageError('bad charge m={!r}'.format(m))
        terms: Dict[Word, RatQ] = {}
        for entry in entries:
            prefix = tuple(elem_from_json(b) for b in entry['prefix'])
            accumulate(terms, prefix, ratq_from_json(entry['coeff']))
        return space.attach(m, terms)


class FockSpace(object):
    """
    The family of spaces F_m for one affine type and ground state branch,
    with the caches of weight-space bases and of the vacuum images f_i|m>
    and B_-n|m> (one per residue of m modulo the period).
    """

    def __init__(self, atype: AffineType, kappa=None):
        self.atype = atype
        self.ground = atype.ground(kappa)
        self.kappa = self.ground.kappa
        self.table = relation_table(atype)
        self._paths: Dict[Tuple, Dict[Word, Coords]] = {}
        self._bases: Dict[Tuple, List[Word]] = {}
        self._vacuum_images: Dict[Tuple, FockVector] = {}

    def __repr__(self):
        return 'FockSpace({!r}, kappa={!r})'.format(self.atype, self.kappa)

    def __eq__(self, other):
        return isinstance(other, FockSpace) and (self.atype, self.kappa) == (other.atype, other.kappa)

    def __hash__(self):
        return hash((self.atype, self.kappa))

    # canonical form

    def ground_word(self, m: int, length: int) -> Word:
        return tuple(self.ground.b(m + k) for k in range(length))

    def _absorb(self, m: int, word: Word) -> Word:
        while word and word[-1] == self.ground.b(m + len(word) - 1):
            word = word[:-1]
        return word

    def attach(self, m: int, terms: Mapping[Word, RatQ]) -> FockVector:
        """
        sum c * word ^ |m + len(word)> as a vector of F_m: the words are
        straightened, terms whose last letter b has H(b (x) b°_s) <= 0
        against the tail |s> vanish, and ground-state tails are absorbed.
        """
        energy = self.atype.energy
        result: Dict[Word, RatQ] = {}
        for word, c in self.table.normal_form(terms).items():
            if word and energy(word[-1], self.ground.b(m + len(word))) <= 0:
                continue
            accumulate(result, self._absorb(m, word), c)
        return FockVector(self, m, result)

    def vacuum(self, m: int) -> FockVector:
        return FockVector(self, m, {(): ONE})

    def zero(self, m: int) -> FockVector:
        return FockVector(self, m)

    def shift(self, F: FockVector, periods: int) -> FockVector:
        """
        The isomorphism F_m -> F_{m+jN} induced by b°_{k+N} = z^c b°_k.
        """
        if not periods:
            return F
        a = periods * self.ground.shift
        return FockVector(self, F.m + periods * self.ground.period,
                          {tuple(b.shift(a) for b in p): c for p, c in F.items()})

    def term_weight(self, m: int, prefix: Word) -> Weight:
        total = self.ground.lam(m + len(prefix))
        for b in prefix:
            total = total + self.atype.wt(b)
        return total

    def bracket(self, F: FockVector, m: Optional[int] = None) -> RatQ:
        """
        <m|F>, the coefficient of the vacuum.
        """
        if m is not None and m != F.m:
            raise UsageError('<{}| applied to a vector of F_{}'.format(m, F.m))
        return F.coeff(())

    def wedge_left(self, v: VaffVector, F: FockVector) -> FockVector:
        terms: Dict[Word, RatQ] = {}
        for b, c in v.items():
            for p, d in F.items():
                accumulate(terms, (b,) + p, c * d)
        return self.attach(F.m - 1, terms)

    def wedge_word(self, word: Word, F: FockVector) -> FockVector:
        word = tuple(word)
        return self.attach(F.m - len(word), {word + p: c for p, c in F.items()})

    # U_q action

    def e_act(self, i: int, F: FockVector) -> FockVector:
        return self.attach(F.m, act_words(self.atype, Generator('e', i), F.terms))

    def t_act(self, i: int, F: FockVector, inverse: bool = False) -> FockVector:
        qi = self.atype.qi(i)
        sign = -1 if inverse else 1
        return FockVector(self, F.m, {p: c * qi ** (sign * self.term_weight(F.m, p).lam[i])
                                      for p, c in F.items()})

    def f_act(self, i: int, F: FockVector) -> FockVector:
        """
        f_i(v ^ |s>) = f_i v ^ t_i|s> + v ^ f_i|s>.
        """
        qi = self.atype.qi(i)
        gen = Generator('f', i)
        terms: Dict[Word, RatQ] = {}
        for p, c in F.items():
            s = F.m + len(p)
            if p:
                tail = qi ** self.ground.lam(s).lam[i]
                for word, d in act_words(self.atype, gen, {p: c * tail}).items():
                    accumulate(terms, word, d)
            for p2, d in self.f_vacuum(i, s).items():
                accumulate(terms, p + p2, c * d)
        return self.attach(F.m, terms)

    def f_divided(self, i: int, k: int, F: FockVector) -> FockVector:
        if k < 0:
            raise UsageError('divided power of negative order {}'.format(k))
        for _ in range(k):
            F = self.f_act(i, F)
        return F * (1 / qfact(k, self.atype.qi_exp(i)))

    def e_divided(self, i: int, k: int, F: FockVector) -> FockVector:
        if k < 0:
            raise UsageError('divided power of negative order {}'.format(k))
        for _ in range(k):
            F = self.e_act(i, F)
        return F * (1 / qfact(k, self.atype.qi_exp(i)))

    def act(self, gen: Generator, F: FockVector) -> FockVector:
        kind, i = gen
        if kind == 'e':
            return self.e_act(i, F)
        if kind == 'f':
            return self.f_act(i, F)
        if kind in ('t', 'tinv'):
            return self.t_act(i, F, inverse=kind == 'tinv')
        raise UsageError('{!r} does not act on the Fock space'.format(gen))

    # bosons

    def boson_act(self, n: int, F: FockVector) -> FockVector:
        """
        B_n(v ^ |s>) = (sum_k z^n in slot k) v ^ |s> + v ^ B_n|s>.
        """
        if not n:
            raise UsageError('B_0 is not a boson')
        terms = _shift_slots(F.terms, n)
        if n < 0:
            for p, c in F.items():
                for p2, d in self.boson_vacuum(n, F.m + len(p)).items():
                    accumulate(terms, p + p2, c * d)
        return self.attach(F.m, terms)

    def boson_vacuum(self, n: int, m: int) -> FockVector:
        if n > 0:
            return self.zero(m)

        def head(m0):
            return self.attach(m0, _shift_slots({self.ground_word(m0, self.ground.period): ONE}, n))

        def target(m0):
            lam = self.ground.lam(m0)
            return Weight(lam.lam, lam.delta + n)

        return self._periodic(('B', n), m, head, target)

    def f_vacuum(self, i: int, m: int) -> FockVector:
        """
        f_i|m>.
        """
        gen = Generator('f', i)
        N = self.ground.period

        def head(m0):
            tail = self.atype.qi(i) ** self.ground.lam(m0 + N).lam[i]
            return self.attach(m0, act_words(self.atype, gen, {self.ground_word(m0, N): tail}))

        def target(m0):
            return self.ground.lam(m0) - self.atype.alpha(i)

        return self._periodic(('f', i), m, head, target)

    def _periodic(self, key, m: int, head: Callable[[int], FockVector],
                  target: Callable[[int], Weight]) -> FockVector:
        periods, m0 = divmod(m, self.ground.period)
        image = self._vacuum_images.get((key, m0))
        if image is None:
            image = self._solve(m0, target(m0), head(m0))
            self._vacuum_images[(key, m0)] = image
        return self.shift(image, periods)

    def _solve(self, m: int, target: Weight, head: FockVector) -> FockVector:
        """
        The X in (F_m)_target with X - W ^ shift(X) = head, where
        W = b°_m ^ ... ^ b°_{m+N-1}.
        """
        basis = self.weight_basis(m, target)
        index = {p: k for k, p in enumerate(basis)}
        for p in head.terms:
            if p not in index:
                raise TheoremViolation('{!r} lies outside the weight space {} of F_{}'.format(p, target, m))
        size = len(basis)
        if not size:
            return self.zero(m)
        word = self.ground_word(m, self.ground.period)
        c = self.ground.shift
        rows = [[ZERO] * size for _ in range(size)]
        for col, p in enumerate(basis):
            rows[col][col] += ONE
            image = self.attach(m, {word + tuple(b.shift(c) for b in p): ONE})
            for p2, d in image.items():
                if p2 not in index:
                    raise TheoremViolation('{!r} lies outside the weight space {} of F_{}'.format(p2, target, m))
                rows[index[p2]][col] -= d
        rhs = [[head.coeff(p)] for p in basis]
        logger.debug('%s: fixed point at m=%d on a weight space of dimension %d', self, m, size)
        try:
            solution = DomainMatrix(rows, (size, size), DOMAIN).lu_solve(DomainMatrix(rhs, (size, 1), DOMAIN))
        except DMNonInvertibleMatrixError as exc:
            raise TheoremViolation('1 - T is singular on the weight space {} of F_{}'.format(target, m)) from exc
        return FockVector(self, m, {p: value for p, (value,) in zip(basis, solution.to_list())})

    def gamma(self, n: int, m: int = 0) -> RatQ:
        """
        gamma_n with [B_n, B_-n]|m> = gamma_n |m>.
        """
        if n <= 0:
            raise UsageError('gamma_n needs n > 0, got {}'.format(n))
        image = self.boson_act(n, self.boson_vacuum(-n, m))
        return self._scalar(image)

    def commutator(self, n: int, n2: int, m: int = 0) -> FockVector:
        """
        [B_n, B_n2]|m>.
        """
        vac = self.vacuum(m)
        return self.boson_act(n, self.boson_act(n2, vac)) - self.boson_act(n2, self.boson_act(n, vac))

    def _scalar(self, F: FockVector) -> RatQ:
        if any(p for p in F.terms):
            raise TheoremViolation('{!r} is not proportional to the vacuum'.format(F))
        return F.coeff(())

    # weight spaces

    def highest_weight_paths(self, m: int, allowed: Callable[[Coords], bool]) -> Dict[Word, Coords]:
        """
        The paths of B(lambda_m), i.e. the sequences with H = 1 at every
        junction, reached from the vacuum by f~_i while ``allowed`` accepts
        the root coordinates of lambda_m - wt.
        """
        atype = self.atype
        found: Dict[Word, Coords] = {(): (0,) * len(atype.index)}
        todo = deque([()])
        while todo:
            prefix = todo.popleft()
            coords = found[prefix]
            word = prefix + (self.ground.b(m + len(prefix)),)
            for i in atype.index:
                step = tuple(n + (1 if k == i else 0) for k, n in enumerate(coords))
                if not allowed(step):
                    continue
                moved = atype.tensor_kashiwara('f', i, word)
                if moved is None:
                    continue
                path = self._absorb(m, moved)
                if path in found:
                    continue
                self._check_path(m, path)
                found[path] = step
                todo.append(path)
        return found

    def _check_path(self, m: int, path: Word):
        full = path + (self.ground.b(m + len(path)),)
        if any(self.atype.energy(a, b) != 1 for a, b in zip(full, full[1:])):
            raise TheoremViolation('f~ left the ground-state component at {!r}'.format(path))

    def _paths_below(self, m: int, bound: Coords) -> Dict[Word, Coords]:
        key = (m, bound)
        if key not in self._paths:
            self._paths[key] = self.highest_weight_paths(
                m, lambda step: all(a <= b for a, b in zip(step, bound)))
        return self._paths[key]

    def shifted(self, m: int, path: Word, parts: Tuple[int, ...]) -> Word:
        """
        (z^-a_m p_m, z^-a_{m+1} p_{m+1}, ...) for a partition a.
        """
        word = []
        for k in range(max(len(path), len(parts))):
            b = path[k] if k < len(path) else self.ground.b(m + k)
            word.append(b.shift(-parts[k]) if k < len(parts) else b)
        return self._absorb(m, tuple(word))

    def factorize(self, m: int, prefix: Word) -> Tuple[Word, Tuple[int, ...]]:
        """
        Inverse of ``shifted``: the path and the partition of a normally
        ordered prefix.
        """
        energy = self.atype.energy
        nxt = self.ground.b(m + len(prefix))
        a = 0
        letters, parts = [], []
        for b in reversed(prefix):
            h = energy(b, nxt)
            if h <= 0:
                raise UsageError('{!r} is not normally ordered'.format(prefix))
            a += h - 1
            letters.append(b.shift(a))
            parts.append(a)
            nxt = b
        parts = tuple(a for a in reversed(parts) if a)
        return self._absorb(m, tuple(reversed(letters))), parts

    def weight_basis(self, m: int, mu: Weight) -> List[Word]:
        """
        The normally ordered basis of (F_m)_mu: paths of B(lambda_m) shifted
        by partitions of the delta-defect.
        """
        key = (m, mu)
        if key in self._bases:
            return self._bases[key]
        coords = self.atype.root_coordinates(self.ground.lam(m) - mu)
        basis: List[Word] = []
        if coords is not None and min(coords) >= 0:
            paths = self._paths_below(m, coords)
            for k in count():
                rest = tuple(n - k * a for n, a in zip(coords, self.atype.marks))
                if min(rest) < 0:
                    break
                for path, where in paths.items():
                    if where == rest:
                        basis.extend(self.shifted(m, path, parts) for parts in _partitions(k))
        basis.sort(key=lambda p: (len(p), [elem_key(b) for b in p]))
        logger.debug('%s: weight space %s of F_%d has dimension %d', self, mu, m, len(basis))
        self._bases[key] = basis
        return basis

    def character_count(self, m: int, depth: int) -> Dict[Coords, int]:
        """
        Dimensions of (F_m)_{lambda_m - sum n_i alpha_i} for n_0 <= depth,
        keyed by (n_0, ..., n_n).  Every counted sequence is checked to
        factor uniquely as a path shifted by a partition.
        """
        paths = self.highest_weight_paths(m, lambda step: step[0] <= depth)
        table: Dict[Coords, int] = {}
        seen = set()
        for path, coords in paths.items():
            for k in range(depth - coords[0] + 1):
                for parts in _partitions(k):
                    prefix = self.shifted(m, path, parts)
                    if prefix in seen or self.factorize(m, prefix) != (path, parts):
                        raise TheoremViolation('{!r} does not factor uniquely'.format(prefix))
                    seen.add(prefix)
                    where = tuple(n + k * a for n, a in zip(coords, self.atype.marks))
                    table[where] = table.get(where, 0) + 1
        return table

    # checks

    def ef_commutator_check(self, F: FockVector) -> List[Tuple[int, int]]:
        """
        Pairs (i, j) where [e_i, f_j] F differs from delta_ij [<h_i, wt F>]_i F.
        """
        weight = F.weight()
        failures = []
        for i in self.atype.index:
            for j in self.atype.index:
                bracket = self.e_act(i, self.f_act(j, F)) - self.f_act(j, self.e_act(i, F))
                expected = self.zero(F.m)
                if i == j and weight is not None:
                    expected = F * qint(weight.lam[i], self.atype.qi_exp(i))
                if bracket != expected:
                    failures.append((i, j))
        return failures

    def serre_check(self, F: FockVector) -> List[Tuple[str, int, int]]:
        divided = {'e': self.e_divided, 'f': self.f_divided}
        single = {'e': self.e_act, 'f': self.f_act}
        failures = []
        for kind in ('e', 'f'):
            for i in self.atype.index:
                for j in self.atype.index:
                    if i == j:
                        continue
                    top = 1 - self.atype.cartan[i][j]
                    total = self.zero(F.m)
                    for k in range(top + 1):
                        inner = single[kind](j, divided[kind](i, top - k, F))
                        total = total + divided[kind](i, k, inner) * (-1) ** k
                    if total:
                        failures.append((kind, i, j))
        return failures

    def boson_commutes_check(self, n: int, F: FockVector) -> List[str]:
        failures = []
        for i in self.atype.index:
            for gen in (Generator('e', i), Generator('f', i), Generator('t', i)):
                lhs = self.boson_act(n, self.act(gen, F))
                rhs = self.act(gen, self.boson_act(n, F))
                if lhs != rhs:
                    failures.append('{}{}'.format(*gen))
        return failures

    def kern_check(self, m: int, window: int, periods: int = 1) -> List[Elem]:
        """
        Letters b with H(b (x) b°_m) <= 0 for which b ^ b°_m ^ ... ^ b°_{m+L-1}
        ^ |m+L>, L a whole number of periods, does not straighten to zero.
        """
        word = self.ground_word(m, periods * self.ground.period)
        failures = []
        for b in self.atype.elements(window):
            if self.atype.energy(b, self.ground.b(m)) > 0:
                continue
            if self.attach(m - 1, {(b,) + word: ONE}):
                failures.append(b)
        return failures

    def divided_power_check(self, m: int) -> List[Tuple[int, int]]:
        """
        Pairs (i, k), 0 <= k <= <h_i, lambda_m>, where f_i^(k)|m> differs from
        G(f~_i^k b°_m) ^ |m+1>.
        """
        failures = []
        b = self.ground.b(m)
        for i in self.atype.index:
            letter = b
            for k in range(self.atype.phi(i, b) + 1):
                if k:
                    letter = self.atype.f(i, letter)
                expected = self.attach(m, {(letter,): ONE})
                if self.f_divided(i, k, self.vacuum(m)) != expected:
                    failures.append((i, k))
        return failures


@lru_cache(maxsize=None)
def fock_space(atype: AffineType, kappa=None) -> FockSpace:
    return FockSpace(atype, kappa)


def vacuum(atype: AffineType, kappa, m: int) -> FockVector:
    return fock_space(atype, kappa).vacuum(m)


def gamma(atype: AffineType, kappa, n: int, m: int = 0) -> RatQ:
    return fock_space(atype, kappa).gamma(n, m)
