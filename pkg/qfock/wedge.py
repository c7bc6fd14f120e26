# coding: utf-8
"""
V_aff with its lower global base G(z^a b), the relations C_{i,j} that span
the kernel N of V_aff (x) V_aff -> V_aff ^ V_aff, and straightening of
finite q-wedges into normally ordered wedges.

A relation is stored as a dict {(b1, b2): coefficient}; its leading pair
is (b_i, z^-H(i,j) b_j) with coefficient 1 and every other pair is
normally ordered.
"""
import logging
from collections import deque
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from qfock.coeff import ONE, ZERO, RatQ, q, qbinom, qint, ratq, ratq_from_json, ratq_to_json
from qfock.crystal import PHI, AffineType, Elem, elem_from_json, elem_key, elem_to_json
from qfock.exceptions import TheoremViolation, UsageError


logger = logging.getLogger(__name__)

Word = Tuple[Elem, ...]
Pair = Tuple[Elem, Elem]
Tensor = Dict[Pair, RatQ]

STRATEGIES = ('insert', 'leftmost', 'rightmost')


def accumulate(target: dict, key, c):
    value = target.get(key, ZERO) + c
    if value:
        target[key] = value
    else:
        target.pop(key, None)


def _shift_words(terms: Mapping[tuple, RatQ], a: int) -> dict:
    if not a:
        return dict(terms)
    return {tuple(b.shift(a) for b in word): c for word, c in terms.items()}


# vectors

class VaffVector(object):
    """
    A finite combination of the base vectors G(z^a b) of V_aff.
    """

    def __init__(self, terms: Optional[Mapping[Elem, object]] = None):
        self.terms: Dict[Elem, RatQ] = {}
        for b, c in (terms or {}).items():
            if not isinstance(b, Elem):
                raise UsageError('not a crystal element: {!r}'.format(b))
            accumulate(self.terms, b, ratq(c))

    @classmethod
    def basis(cls, b: Elem) -> "VaffVector":
        return cls({b: ONE})

    def items(self):
        return self.terms.items()

    def coeff(self, b: Elem) -> RatQ:
        return self.terms.get(b, ZERO)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, VaffVector) and self.terms == other.terms

    def __add__(self, other):
        result = dict(self.terms)
        for b, c in other.terms.items():
            accumulate(result, b, c)
        return VaffVector(result)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, scalar):
        scalar = ratq(scalar)
        return VaffVector({b: c * scalar for b, c in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return 'VaffVector({!r})'.format(self.terms)


class WedgeVector(object):
    """
    A finite combination of r-letter wedges G(b_1) ^ ... ^ G(b_r).  The
    words are not assumed normally ordered; see ``straighten``.
    """

    def __init__(self, terms: Optional[Mapping[Sequence[Elem], object]] = None, arity: Optional[int] = None):
        self.terms: Dict[Word, RatQ] = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            if arity is None:
                arity = len(word)
            elif len(word) != arity:
                raise UsageError('mixed word lengths {} and {}'.format(arity, len(word)))
            accumulate(self.terms, word, ratq(c))
        self.arity = arity or 0

    @classmethod
    def basis(cls, *letters: Elem) -> "WedgeVector":
        return cls({tuple(letters): ONE}, len(letters))

    def items(self):
        return self.terms.items()

    def coeff(self, word: Sequence[Elem]) -> RatQ:
        return self.terms.get(tuple(word), ZERO)

    def is_normal(self, atype: AffineType) -> bool:
        return all(atype.is_normal(word) for word in self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, WedgeVector) and self.terms == other.terms

    def __add__(self, other):
        result = dict(self.terms)
        for word, c in other.terms.items():
            accumulate(result, word, c)
        return WedgeVector(result, self.arity or other.arity)

    def __sub__(self, other):
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        scalar = ratq(scalar)
        return WedgeVector({w: c * scalar for w, c in self.terms.items()}, self.arity)

    __rmul__ = __mul__

    def __repr__(self):
        return 'WedgeVector({!r})'.format(self.terms)

    def to_json(self) -> dict:
        terms = sorted(self.terms.items(), key=lambda kv: [elem_key(b) for b in kv[0]])
        return {
            'arity': self.arity,
            'terms': [{'word': [elem_to_json(b) for b in word], 'coeff': ratq_to_json(c)} for word, c in terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WedgeVector":
        try:
            arity = data.get('arity')
            entries = data['terms']
        except (AttributeError, KeyError, TypeError) as exc:
            raise UsageError('malformed wedge vector') from exc
        terms: Dict[Word, RatQ] = {}
        for entry in entries:
            word = tuple(elem_from_json(b) for b in entry['word'])
            accumulate(terms, word, ratq_from_json(entry['coeff']))
        return cls(terms, arity)


# relation tables

def _term(c, i, zi, j, zj) -> Tensor:
    return {(Elem(i, zi), Elem(j, zj)): ratq(c)}


def _combine(*parts: Tuple[RatQ, Tensor]) -> Tensor:
    result: Tensor = {}
    for c, tensor in parts:
        for pair, d in tensor.items():
            accumulate(result, pair, c * d)
    return result


def _shift_pairs(tensor: Tensor, a: int) -> Tensor:
    return {(x.shift(a), y.shift(a)): c for (x, y), c in tensor.items()}


class _Rules(object):
    """
    Family-specific construction of C_{i,j}.
    """
    s: RatQ = q

    def __init__(self, atype: AffineType):
        self.atype = atype
        self.n = atype.n

    def h(self, i, j) -> int:
        return self.atype.energy(Elem(i), Elem(j))

    def swap(self, i, j) -> Tensor:
        H = self.h(i, j)
        return _combine((ONE, _term(1, i, 0, j, -H)), (self.s, _term(1, j, -H, i, 0)))

    def relation(self, i, j) -> Tensor:
        raise NotImplementedError


class _TypeARules(_Rules):

    def relation(self, i, j):
        if i == j:
            return _term(1, i, 0, i, 0)
        return self.swap(i, j)


class _LevelRules(_Rules):
    """
    C_{i,j} for A^(1)_1 at level k as a sum over i'+j' = i+j and a+b = H(i,j).
    """

    def relation(self, i, j):
        k = self.atype.level
        H = self.h(i, j)
        total = i + j
        result: Tensor = {}
        for i2 in range(max(0, total - k), min(k, total) + 1):
            j2 = total - i2
            for a in range(H + 1):
                b = H - a
                if total <= k:
                    c = q ** ((k - j2) * (i2 - b) + (k - i2) * a) * qbinom(j2, a) * qbinom(i2, b)
                else:
                    c = q ** (i2 * (k - j2 - b) + j2 * a) * qbinom(k - i2, a) * qbinom(k - j2, b)
                accumulate(result, (Elem(i2, -a), Elem(j2, -b)), c)
        return result


class _OrthogonalRules(_Rules):
    """
    Families whose letters come in pairs b_j, b_-j.  ``tilde`` gives the
    elementary elements; ``relation`` combines them so that every
    non-leading pair is normally ordered.
    """

    def special(self, i, j) -> Optional[Tensor]:
        return None

    def tilde(self, i, j) -> Tensor:
        special = self.special(i, j)
        if special is not None:
            return special
        if i == j:
            return _term(1, i, 0, i, 0)
        if PHI not in (i, j) and i == -j:
            H, s = self.h(i, j), self.s
            return _combine(
                (ONE, _term(1, i, 0, -i, -H)),
                (s, _term(1, i + 1, 0, -i - 1, -H)),
                (s, _term(1, -i - 1, -H, i + 1, 0)),
                (s * s, _term(1, -i, -H, i, 0)),
            )
        return self.swap(i, j)

    def chain(self, pairs: Iterable[Tuple[int, int]]) -> Tensor:
        # sum of (-s)^e * tilde(i, -i)
        return _combine(*(((-self.s) ** e, self.tilde(i, -i)) for i, e in pairs))

    def up(self, i, top) -> Tensor:
        return self.chain((k, k - i) for k in range(i, top + 1))

    def down(self, k, low) -> Tensor:
        return self.chain((-m, k - m) for m in range(low, k + 1))

    def zero_pair(self, c) -> Tensor:
        # v0 (x) z^-c v0 + s[2] v-n (x) z^-c vn + s[2] z^-c vn (x) v-n + s z^-c v0 (x) v0
        n, s = self.n, self.s
        return _combine(
            (ONE, _term(1, 0, 0, 0, -c)),
            (s * qint(2), _term(1, -n, 0, n, -c)),
            (s * qint(2), _term(1, n, -c, -n, 0)),
            (s, _term(1, 0, -c, 0, 0)),
        )

    def top_pair_through_zero(self) -> Tensor:
        n, s = self.n, self.s
        return _combine((ONE, _term(1, n, 0, -n, 0)), (q, _term(1, 0, 0, 0, 0)), (s * s, _term(1, -n, 0, n, 0)))

    def doubled_minus_one(self) -> Tensor:
        s = self.s
        return _combine(
            (ONE, _term(1, -1, 0, 1, -2)),
            (s, _term(1, -2, -1, 2, -1)),
            (s, _term(1, 2, -1, -2, -1)),
            (s * s, _term(1, 1, -2, -1, 0)),
        )


class _A2EvenRules(_OrthogonalRules):
    s = q ** 2

    def special(self, i, j):
        n, s = self.n, self.s
        if (i, j) == (0, 0):
            return self.zero_pair(1)
        if (i, j) == (n, -n):
            return self.top_pair_through_zero()
        if (i, j) == (-1, 1):
            return _combine((ONE, _term(1, -1, 0, 1, -1)), (s * s, _term(1, 1, -1, -1, 0)))
        return None

    def relation(self, i, j):
        n, s = self.n, self.s
        if (i, j) == (0, 0):
            return _combine((ONE, self.tilde(0, 0)), (-s * qint(2), self.relation(-n, n)))
        if i == -j and i > 0:
            return self.up(i, n)
        if i == -j and i < 0:
            return self.down(-i, 1)
        return self.tilde(i, j)


class _B1Rules(_OrthogonalRules):
    s = q ** 2

    def special(self, i, j):
        n = self.n
        if (i, j) == (0, 0):
            return self.zero_pair(1)
        if (i, j) == (n, -n):
            return self.top_pair_through_zero()
        if (i, j) == (-1, 1):
            return self.doubled_minus_one()
        return None

    def relation(self, i, j):
        n, s = self.n, self.s
        if (i, j) == (0, 0):
            return _combine((ONE, self.tilde(0, 0)), (-s * qint(2), self.relation(-n, n)))
        if (i, j) == (-1, 1):
            return _combine((ONE, self.tilde(-1, 1)), (-s, _shift_pairs(self.relation(2, -2), -1)))
        if i == -j and i > 0:
            return self.up(i, n)
        if i == -j and i < 0:
            return self.down(-i, 2)
        return self.tilde(i, j)


class _A2OddRules(_OrthogonalRules):
    s = q

    def special(self, i, j):
        n, s = self.n, self.s
        if (i, j) == (n, -n):
            return _combine((ONE, _term(1, n, 0, -n, 0)), (s * s, _term(1, -n, 0, n, 0)))
        if (i, j) == (-1, 1):
            return self.doubled_minus_one()
        return None

    def relation(self, i, j):
        n, s = self.n, self.s
        if (i, j) == (-1, 1):
            return _combine((ONE, self.tilde(-1, 1)), (-s, _shift_pairs(self.relation(2, -2), -1)))
        if i == -j and i > 0:
            return self.up(i, n)
        if i == -j and i < 0:
            return self.down(-i, 2)
        return self.tilde(i, j)


class _D1Rules(_OrthogonalRules):
    s = q

    def special(self, i, j):
        n, s = self.n, self.s
        if (i, j) == (n, -n):
            return _combine(
                (ONE, _term(1, n, 0, -n, -1)),
                (s, _term(1, 1 - n, 0, n - 1, -1)),
                (s, _term(1, n - 1, -1, 1 - n, 0)),
                (s * s, _term(1, -n, -1, n, 0)),
            )
        if (i, j) == (-1, 1):
            return self.doubled_minus_one()
        return None

    def relation(self, i, j):
        n, s = self.n, self.s
        if (i, j) == (n, -n):
            return _combine((ONE, self.tilde(n, -n)), (-s, self.relation(1 - n, n - 1)))
        if (i, j) == (-1, 1):
            return _combine((ONE, self.tilde(-1, 1)), (-s, _shift_pairs(self.relation(2, -2), -1)))
        if i == -j and i > 0:
            return self.up(i, n - 1)
        if i == -j and i < 0:
            return self.down(-i, 2)
        return self.tilde(i, j)


class _D2Rules(_OrthogonalRules):
    s = q ** 2

    def special(self, i, j):
        n, s = self.n, self.s
        if (i, j) == (0, 0):
            return self.zero_pair(2)
        if (i, j) == (n, -n):
            return self.top_pair_through_zero()
        if (i, j) == (-1, 1):
            return _combine(
                (ONE, _term(1, -1, 0, 1, -2)),
                (q, _term(1, PHI, -1, PHI, -1)),
                (s * s, _term(1, 1, -2, -1, 0)),
            )
        if (i, j) == (PHI, PHI):
            return _combine(
                (ONE, _term(1, PHI, 0, PHI, -2)),
                (s * qint(2), _term(1, 1, -1, -1, -1)),
                (s * qint(2), _term(1, -1, -1, 1, -1)),
                (s, _term(1, PHI, -2, PHI, 0)),
            )
        return None

    def relation(self, i, j):
        n, s = self.n, self.s
        if (i, j) == (PHI, PHI):
            return _combine((ONE, self.tilde(PHI, PHI)), (-s * qint(2), _shift_pairs(self.relation(1, -1), -1)))
        if PHI in (i, j):
            return self.tilde(i, j)
        if (i, j) == (0, 0):
            return _combine((ONE, self.tilde(0, 0)), (-s * qint(2), self.relation(-n, n)))
        if i == -j and i > 0:
            return self.up(i, n)
        if i == -j and i < 0:
            return self.down(-i, 1)
        return self.tilde(i, j)


_RULES = {
    'a1': _TypeARules,
    'a1k': _LevelRules,
    'a2even': _A2EvenRules,
    'b1': _B1Rules,
    'a2odd': _A2OddRules,
    'd1': _D1Rules,
    'd2': _D2Rules,
}


class RelationTable(object):
    """
    The relations of one affine type together with the rewriting caches.
    Every cache is keyed on z-normalized data, so shifted copies of a
    computation are looked up rather than redone.
    """

    def __init__(self, atype: AffineType):
        self.atype = atype
        self._rules = _RULES[atype.tag](atype)
        self._base: Dict[Tuple, Tensor] = {}
        self._expansions: Dict[Tuple, Tensor] = {}
        self._inserts: Dict[Word, Dict[Word, RatQ]] = {}

    def __repr__(self):
        return 'RelationTable({!r})'.format(self.atype)

    def leading(self, i, j) -> Pair:
        return Elem(i), Elem(j, -self.atype.energy(Elem(i), Elem(j)))

    def base(self, i, j) -> Tensor:
        key = (i, j)
        if key not in self._base:
            for letter in key:
                if letter not in self.atype.letters:
                    raise UsageError('letter {!r} is not in the crystal of {}'.format(letter, self.atype))
            relation = self._rules.relation(i, j)
            lead = self.leading(i, j)
            if relation.get(lead) != ONE:
                raise TheoremViolation('C[{},{}] does not lead with {!r}'.format(i, j, lead))
            for (x, y), c in relation.items():
                if (x, y) != lead and self.atype.energy(x, y) <= 0:
                    raise TheoremViolation('C[{},{}] has the non-normal pair {!r} (x) {!r}'.format(i, j, x, y))
            self._base[key] = relation
        return self._base[key]

    def all_base(self) -> Dict[Tuple, Tensor]:
        for i in self.atype.letters:
            for j in self.atype.letters:
                self.base(i, j)
        logger.debug('relation table of %s: %d relations', self.atype, len(self._base))
        return dict(self._base)

    def extremal_letter(self):
        for letter in self.atype.letters:
            lead = self.leading(letter, letter)
            if self.base(letter, letter) == {lead: ONE} and lead[1].z == 0:
                return letter
        raise TheoremViolation('no letter with C[j,j] = v_j (x) v_j in {}'.format(self.atype))

    # rewriting

    def expansion(self, b1: Elem, b2: Elem) -> Tensor:
        """
        b1 ^ b2 as a combination of normally ordered pairs.
        """
        H = self.atype.energy(b1, b2)
        if H > 0:
            raise UsageError('{!r} (x) {!r} is already normally ordered'.format(b1, b2))
        a = b1.z
        key = (b1.letter, b2.letter, b2.z - a)
        cached = self._expansions.get(key)
        if cached is None:
            cached = self._expand(Elem(b1.letter), Elem(b2.letter, b2.z - a), H)
            self._expansions[key] = cached
        return _shift_pairs(cached, a) if a else cached

    def _expand(self, b1: Elem, b2: Elem, H: int) -> Tensor:
        if H == 0:
            relation = self.base(b1.letter, b2.letter)
            return {pair: -c for pair, c in relation.items() if pair != (b1, b2)}
        c = -H
        result: Tensor = {}
        accumulate(result, (b1.shift(-c), b2.shift(c)), -ONE)
        for (x, y), coef in self.expansion(b1, b2.shift(c)).items():
            accumulate(result, (x.shift(-c), y), coef)
            lowered = y.shift(-c)
            if self.atype.energy(x, lowered) > 0:
                accumulate(result, (x, lowered), coef)
            else:
                for pair, d in self.expansion(x, lowered).items():
                    accumulate(result, pair, coef * d)
        return result

    def prepend(self, x: Elem, word: Word) -> Dict[Word, RatQ]:
        """
        x ^ word for a normally ordered ``word``, as normally ordered words.
        """
        if not word or self.atype.energy(x, word[0]) > 0:
            return {(x,) + tuple(word): ONE}
        a = x.z
        key = (Elem(x.letter),) + tuple(b.shift(-a) for b in word)
        cached = self._inserts.get(key)
        if cached is None:
            cached = self._prepend(key[0], key[1:])
            self._inserts[key] = cached
        return _shift_words(cached, a)

    def _prepend(self, x: Elem, word: Word) -> Dict[Word, RatQ]:
        result: Dict[Word, RatQ] = {}
        for (y1, y2), c in self.expansion(x, word[0]).items():
            for tail, c2 in self.prepend(y2, word[1:]).items():
                for full, c3 in self.prepend(y1, tail).items():
                    accumulate(result, full, c * c2 * c3)
        return result

    def normal_form(self, terms: Mapping[Word, RatQ], strategy: str = 'insert') -> Dict[Word, RatQ]:
        if strategy == 'insert':
            result: Dict[Word, RatQ] = {}
            for word, c in terms.items():
                partial: Dict[Word, RatQ] = {(): ONE}
                for x in reversed(word):
                    grown: Dict[Word, RatQ] = {}
                    for tail, c1 in partial.items():
                        for full, c2 in self.prepend(x, tail).items():
                            accumulate(grown, full, c1 * c2)
                    partial = grown
                for full, c2 in partial.items():
                    accumulate(result, full, c * c2)
            return result
        if strategy not in STRATEGIES:
            raise UsageError('unknown strategy {!r}; choose from {}'.format(strategy, ', '.join(STRATEGIES)))
        energy = self.atype.energy
        pending = dict(terms)
        result = {}
        while pending:
            word, c = pending.popitem()
            defects = [k for k in range(len(word) - 1) if energy(word[k], word[k + 1]) <= 0]
            if not defects:
                accumulate(result, word, c)
                continue
            k = defects[0] if strategy == 'leftmost' else defects[-1]
            for (y1, y2), d in self.expansion(word[k], word[k + 1]).items():
                accumulate(pending, word[:k] + (y1, y2) + word[k + 2:], c * d)
        return result


@lru_cache(maxsize=None)
def relation_table(atype: AffineType) -> RelationTable:
    logger.debug('building relation table for %s', atype)
    return RelationTable(atype)


def rel_base(atype: AffineType, i, j) -> Tensor:
    """
    C_{i,j}, identified with the pair (b_i, z^-H(i,j) b_j).
    """
    return dict(relation_table(atype).base(i, j))


def rel_general(atype: AffineType, b1: Elem, b2: Elem) -> Tensor:
    """
    G(b1) ^ G(b2) = sum a G(b1') ^ G(b2') over normally ordered pairs;
    requires H(b1 (x) b2) <= 0.
    """
    return dict(relation_table(atype).expansion(b1, b2))


def straighten(atype: AffineType, w: WedgeVector, strategy: str = 'insert') -> WedgeVector:
    return WedgeVector(relation_table(atype).normal_form(w.terms, strategy), w.arity)


def wedge_mul(atype: AffineType, a: WedgeVector, b: WedgeVector) -> WedgeVector:
    terms: Dict[Word, RatQ] = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            accumulate(terms, w1 + w2, c1 * c2)
    return straighten(atype, WedgeVector(terms, a.arity + b.arity))


def relation_to_json(tensor: Tensor) -> list:
    entries = sorted(tensor.items(), key=lambda kv: (elem_key(kv[0][0]), elem_key(kv[0][1])))
    return [{'pair': [elem_to_json(x), elem_to_json(y)], 'coeff': ratq_to_json(c)} for (x, y), c in entries]


# quantum group action

class Generator(NamedTuple):
    """
    e_i, f_i, t_i = q_i^h_i, its inverse, or z^power (kind 'z').
    """
    kind: str
    index: int = 0

    @classmethod
    def parse(cls, text: str) -> "Generator":
        text = text.strip()
        for kind in ('tinv', 'e', 'f', 't', 'z'):
            if text.startswith(kind):
                rest = text[len(kind):]
                try:
                    index = int(rest) if rest else 1 if kind == 'z' else None
                except ValueError:
                    index = None
                if index is None:
                    break
                return cls(kind, index)
        raise UsageError('cannot parse generator {!r}; use e<i>, f<i>, t<i>, tinv<i> or z<power>'.format(text))


def _act_letter(atype: AffineType, gen: Generator, b: Elem) -> Optional[Tuple[Elem, RatQ]]:
    kind, i = gen
    if kind in ('e', 'f'):
        target = atype.kashiwara(kind, i, b)
        if target is None:
            return None
        string = atype.phi(i, b) if kind == 'e' else atype.eps(i, b)
        return target, qint(1 + string, atype.qi_exp(i))
    if kind == 't':
        return b, atype.qi(i) ** atype.pairing(i, b)
    if kind == 'tinv':
        return b, atype.qi(i) ** -atype.pairing(i, b)
    if kind == 'z':
        return b.shift(i), ONE
    raise UsageError('unknown generator {!r}'.format(gen))


def vaff_act(atype: AffineType, gen: Generator, v: VaffVector) -> VaffVector:
    result: Dict[Elem, RatQ] = {}
    for b, c in v.items():
        moved = _act_letter(atype, gen, b)
        if moved is not None:
            accumulate(result, moved[0], c * moved[1])
    return VaffVector(result)


def act_words(atype: AffineType, gen: Generator, terms: Mapping[tuple, RatQ]) -> Dict[tuple, RatQ]:
    """
    Generator action on words through the coproduct
    e_i -> sum t_i^-1 (x) ... (x) e_i (x) 1 ..., f_i -> sum 1 (x) ... (x) f_i (x) t_i ...;
    t_i and z act on every factor.  No straightening.
    """
    result: Dict[tuple, RatQ] = {}
    kind, i = gen
    for word, c in terms.items():
        if kind in ('e', 'f'):
            qi = atype.qi(i)
            pairings = [atype.pairing(i, b) for b in word]
            for pos, b in enumerate(word):
                moved = _act_letter(atype, gen, b)
                if moved is None:
                    continue
                twist = -sum(pairings[:pos]) if kind == 'e' else sum(pairings[pos + 1:])
                accumulate(result, word[:pos] + (moved[0],) + word[pos + 1:], c * moved[1] * qi ** twist)
        else:
            coef, image = c, []
            for b in word:
                target, d = _act_letter(atype, gen, b)
                coef *= d
                image.append(target)
            accumulate(result, tuple(image), coef)
    return result


def wedge_uq_act(atype: AffineType, gen: Generator, w: WedgeVector, normalize: bool = True) -> WedgeVector:
    image = WedgeVector(act_words(atype, gen, w.terms), w.arity)
    return straighten(atype, image) if normalize else image


# symmetric Laurent polynomials in the z's

def _arrangements(exps: Tuple[int, ...]) -> int:
    count = factorial(len(exps))
    for e in set(exps):
        count //= factorial(exps.count(e))
    return count


class SymmetricLaurent(object):
    """
    sum c * z^e1 (x) ... (x) z^er, required to be symmetric in the factors.
    """

    def __init__(self, terms: Mapping[Sequence[int], object], arity: Optional[int] = None):
        self.terms: Dict[Tuple[int, ...], RatQ] = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if arity is None:
                arity = len(exps)
            elif len(exps) != arity:
                raise UsageError('exponent tuples of different lengths')
            accumulate(self.terms, exps, ratq(c))
        self.arity = arity or 0
        orbits: Dict[Tuple[int, ...], List[RatQ]] = {}
        for exps, c in self.terms.items():
            orbits.setdefault(tuple(sorted(exps)), []).append(c)
        for key, values in orbits.items():
            if len(values) != _arrangements(key) or any(v != values[0] for v in values):
                raise UsageError('not symmetric in the factors: exponents {!r}'.format(key))

    @classmethod
    def power_sums(cls, coeffs: Mapping[int, object], arity: int) -> "SymmetricLaurent":
        """
        sum_n c_n p_n with p_n = sum_k z_k^n.
        """
        terms: Dict[Tuple[int, ...], RatQ] = {}
        for n, c in coeffs.items():
            for k in range(arity):
                exps = tuple(n if pos == k else 0 for pos in range(arity))
                accumulate(terms, exps, ratq(c))
        return cls(terms, arity)

    @classmethod
    def z_operator(cls, t: int, d: int) -> "SymmetricLaurent":
        """
        Z(t,d) = z^t (x) z^(d-t) + [2t>d] z^(d-t) (x) z^t - [2t<d] z^t (x) z^(d-t).
        """
        if 2 * t < d:
            return cls({}, 2)
        if 2 * t == d:
            return cls({(t, t): ONE}, 2)
        return cls({(t, d - t): ONE, (d - t, t): ONE}, 2)

    def apply(self, terms: Mapping[Word, RatQ]) -> Dict[Word, RatQ]:
        result: Dict[Word, RatQ] = {}
        for word, c in terms.items():
            if len(word) != self.arity:
                raise UsageError('operator on {} factors applied to a {}-letter word'.format(self.arity, len(word)))
            for exps, d in self.terms.items():
                accumulate(result, tuple(b.shift(e) for b, e in zip(word, exps)), c * d)
        return result


def symfun_act(atype: AffineType, f: SymmetricLaurent, w: WedgeVector) -> WedgeVector:
    return straighten(atype, WedgeVector(f.apply(w.terms), w.arity))


# membership in N inside a z-window

class _Echelon(object):
    """
    Row echelon form of a span of tensors; each row is keyed by its
    largest pair.
    """

    def __init__(self):
        self.rows: Dict[Pair, Tensor] = {}

    @staticmethod
    def _order(pair: Pair):
        return elem_key(pair[0]), elem_key(pair[1])

    def reduce(self, vector: Mapping[Pair, RatQ]) -> Tensor:
        vector = dict(vector)
        while True:
            pivots = [pair for pair in vector if pair in self.rows]
            if not pivots:
                return vector
            pivot = max(pivots, key=self._order)
            c = vector[pivot]
            for pair, d in self.rows[pivot].items():
                accumulate(vector, pair, -c * d)

    def add(self, vector: Mapping[Pair, RatQ]) -> Optional[Tensor]:
        residue = self.reduce(vector)
        if not residue:
            return None
        pivot = max(residue, key=self._order)
        scale = 1 / residue[pivot]
        row = {pair: c * scale for pair, c in residue.items()}
        self.rows[pivot] = row
        return row

    @property
    def rank(self) -> int:
        return len(self.rows)


def _inside(tensor: Mapping[Pair, RatQ], window: int) -> bool:
    return all(abs(x.z) <= window and abs(y.z) <= window for x, y in tensor)


@lru_cache(maxsize=None)
def _n_span(atype: AffineType, window: int) -> Dict:
    """
    Span of N restricted to tensors supported in |z-power| <= window,
    generated from u (x) u by e_i, f_i, z (x) z, z^-1 (x) z^-1 and
    z (x) 1 + 1 (x) z.
    """
    u = relation_table(atype).extremal_letter()
    gens = [Generator(kind, i) for kind in ('e', 'f') for i in atype.index]
    spaces: Dict = {}
    todo: deque = deque()

    def offer(tensor):
        if not tensor or not _inside(tensor, window):
            return
        weight = atype.tensor_wt(next(iter(tensor)))
        row = spaces.setdefault(weight, _Echelon()).add(tensor)
        if row is not None:
            todo.append(row)

    for a in range(-window, window + 1):
        offer({(Elem(u, a), Elem(u, a)): ONE})
    while todo:
        vector = todo.popleft()
        for gen in gens:
            offer(act_words(atype, gen, vector))
        offer(_shift_pairs(vector, 1))
        offer(_shift_pairs(vector, -1))
        offer(_combine((ONE, {(x.shift(1), y): c for (x, y), c in vector.items()}),
                       (ONE, {(x, y.shift(1)): c for (x, y), c in vector.items()})))
    logger.debug('span of N for %s in window %d: %d weight spaces, dimension %d',
                 atype, window, len(spaces), sum(s.rank for s in spaces.values()))
    return spaces


def in_n_span(atype: AffineType, tensor: Mapping[Pair, RatQ], window: int) -> Optional[bool]:
    """
    True if ``tensor`` lies in N, False if it provably does not, None when
    the window is too small to decide.
    """
    tensor = {pair: c for pair, c in tensor.items() if c}
    if not tensor:
        return True
    if not _inside(tensor, window):
        return None
    components: Dict = {}
    for pair, c in tensor.items():
        components.setdefault(atype.tensor_wt(pair), {})[pair] = c
    spaces = _n_span(atype, window)
    verdicts = []
    for weight, component in components.items():
        space = spaces.get(weight, _Echelon())
        if not space.reduce(component):
            verdicts.append(True)
            continue
        elems = atype.elements(window)
        non_normal = sum(1 for x in elems for y in elems
                         if atype.energy(x, y) <= 0 and atype.tensor_wt((x, y)) == weight)
        verdicts.append(False if space.rank == non_normal else None)
    if False in verdicts:
        return False
    if None in verdicts:
        return None
    return True


def verify_rel_in_N(atype: AffineType, i, j, window: int) -> Optional[bool]:
    return in_n_span(atype, relation_table(atype).base(i, j), window)
