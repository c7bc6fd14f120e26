# coding: utf-8
"""
The R-matrix of the vector representation V_z of U_q(D^(2)_{n+1}) in the
upper global base, its crossing symmetry, and the q-KZ equation for the
level-1 vacuum two-point function

    Psi(z) = (q^4 xi^4 z^2; xi^4)(xi^6 z^2; xi^4)
             / ((q^4 xi^2 z^2; xi^4)(xi^4 z^2; xi^4)) * w(z),    xi^2 = q^4n.

Letters are ordered 1 > 2 > ... > n > 0 > -n > ... > -1 > phi.  A matrix
entry [(a, b), (c, d)] is the coefficient of v_a (x) v_b in R(v_c (x) v_d).
The entries are plain arithmetic in q and z, so the same code serves exact
rational samples (Fraction) and the symbolic field Q(q, w).

This module works in its own basis and never feeds the wedge modules.
"""
import logging
import random
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Iterator, List, Mapping, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from qfock.coeff import WSeries, mono, pochhammer, qw_q, qw_w, rational_to_wseries, series_agree, series_of
from qfock.crystal import PHI, Letter, affine_type, letter_to_json
from qfock.exceptions import PoleError, UsageError
from qfock.twopoint import two_point


logger = logging.getLogger(__name__)

Pair = Tuple[Letter, Letter]
Entries = Dict[Tuple[Pair, Pair], object]

CHECKS = ('normalization', 'crossing', 'ybe', 'intertwine', 'qkz')


def _qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _sparse(rows: Mapping[int, Mapping[int, object]], size: int) -> DomainMatrix:
    return DomainMatrix({i: {j: _qq(v) for j, v in row.items() if v} for i, row in rows.items()}, (size, size), QQ)


def _vanishes(M: DomainMatrix) -> bool:
    return not any(M.iter_values())


class RMatrix(object):
    """
    R(z) at one point (q, z), kept as its nonzero entries.
    """

    def __init__(self, model: "DTwo", q, z, entries: Entries):
        self.model = model
        self.q = q
        self.z = z
        self.entries = entries

    def __getitem__(self, key: Tuple[Pair, Pair]):
        return self.entries.get(key, 0)

    def apply(self, vector: Mapping[Pair, object]) -> Dict[Pair, object]:
        out: Dict[Pair, object] = {}
        for (target, source), value in self.entries.items():
            if source in vector:
                out[target] = out.get(target, 0) + value * vector[source]
        return {p: c for p, c in out.items() if c}

    def matrix(self) -> DomainMatrix:
        """
        The (2n+2)^2 square matrix over QQ; only for rational samples.
        """
        pos = self.model.position
        rows: Dict[int, Dict[int, object]] = {}
        for (target, source), value in self.entries.items():
            rows.setdefault(pos[target], {})[pos[source]] = value
        return _sparse(rows, len(self.model.pairs))

    def zero_weight_block(self) -> Dict[Tuple[Letter, Letter], object]:
        """
        The block on span{v_j (x) v_-j}, keyed (i, j) for v_j (x) v_-j -> v_i (x) v_-i.
        """
        neg = self.model.neg
        block = {}
        for i in self.model.letters:
            for j in self.model.letters:
                value = self[((i, neg(i)), (j, neg(j)))]
                if value:
                    block[(i, j)] = value
        return block

    def to_json(self) -> dict:
        return {
            'n': self.model.n,
            'q': str(self.q),
            'z': str(self.z),
            'entries': [{'out': [letter_to_json(x) for x in t], 'in': [letter_to_json(x) for x in s],
                         'value': str(v)} for (t, s), v in sorted(self.entries.items(), key=str)],
        }


class DTwo(object):
    """
    Data of D^(2)_{n+1}: the index set with its order, signs and bars, and
    the maps R(z), C, q^-phi and w(z).
    """

    def __init__(self, n: int):
        if n < 2:
            raise UsageError('D^(2)_{{n+1}} needs n >= 2, got {}'.format(n))
        self.n = n
        self.letters: List[Letter] = list(range(1, n + 1)) + [0] + list(range(-n, 0)) + [PHI]
        self._rank = {j: k for k, j in enumerate(self.letters)}
        self.pairs: List[Pair] = list(product(self.letters, repeat=2))
        self.position = {p: k for k, p in enumerate(self.pairs)}

    def __repr__(self):
        return 'DTwo(n={})'.format(self.n)

    # the index set

    def succ(self, i: Letter, j: Letter) -> bool:
        return self._rank[i] < self._rank[j]

    @staticmethod
    def neg(j: Letter) -> Letter:
        return j if j in (0, PHI) else -j

    def bar(self, j: Letter) -> int:
        if j == PHI:
            return 2 * self.n
        if j == 0:
            return self.n
        return j if j > 0 else 2 * self.n + 1 + j

    @staticmethod
    def sgn(j: Letter) -> int:
        return 1 if j > 0 else -1

    @staticmethod
    def alpha(i: Letter, j: Letter) -> int:
        return 1 if PHI in (i, j) else 0

    def s(self, i: Letter, j: Letter, q):
        two = q + 1 / q
        if {i, j} == {0, PHI}:
            return -1
        if j == 0:
            return -self.sgn(i) / two
        if i == 0:
            return -two * self.sgn(j)
        if j == PHI:
            return self.sgn(i) / two
        if i == PHI:
            return two * self.sgn(j)
        return self.sgn(i) * self.sgn(j)

    def weight(self, j: Letter) -> Tuple[int, ...]:
        w = [0] * self.n
        if j not in (0, PHI):
            w[abs(j) - 1] = self.sgn(j)
        return tuple(w)

    # R(z)

    def a(self, i: Letter, j: Letter, q, z):
        """
        Numerator of the v_j (x) v_-j -> v_i (x) v_-i entry; the common
        denominator is (1 - q^4 z^2)(1 - xi^2 z^2).
        """
        xi2 = q ** (4 * self.n)
        if i == j:
            value = (1 - z ** 2) * (q ** 4 - xi2 * z ** 2)
            if i == self.neg(i):
                value = value + (1 - q ** 2) * (q ** 2 + z ** 2) * (1 - xi2 * z ** 2)
            return value
        sign = self.s(i, j, q) * (-q ** 2) ** (self.bar(j) - self.bar(i))
        pair = 1 - xi2 * z ** 2 if i == self.neg(j) else 0
        alpha = self.alpha(i, j)
        if self.succ(i, j):
            return (1 - q ** 4) * (z ** alpha * (z ** 2 - 1) * sign + pair)
        return (1 - q ** 4) * (xi2 * z ** (2 - alpha) * (z ** 2 - 1) * sign + z ** 2 * pair)

    def rbar(self, q, z) -> RMatrix:
        """
        R(z) normalized by R(z) v_1 (x) v_1 = v_1 (x) v_1.
        """
        xi2 = q ** (4 * self.n)
        one = q ** 0
        small = 1 - q ** 4 * z ** 2
        den = small * (1 - xi2 * z ** 2)
        if not den:
            raise PoleError('R(z) has a pole at q={}, z={}'.format(q, z))
        b = q ** 2 * (1 - z ** 2) / small
        neg = self.neg
        entries: Entries = {}
        for i in self.letters:
            if i != neg(i):
                entries[((i, i), (i, i))] = one
            for j in self.letters:
                if j != i and j != neg(i):
                    entries[((i, j), (i, j))] = b
                    alpha = self.alpha(i, j)
                    power = alpha if self.succ(i, j) else 2 - alpha
                    entries[((i, j), (j, i))] = (1 - q ** 4) * z ** power / small
                entries[((i, neg(i)), (j, neg(j)))] = self.a(i, j, q, z) / den
        return RMatrix(self, q, z, {k: v for k, v in entries.items() if v})

    # crossing

    def crossing_map(self, q) -> Dict[Letter, object]:
        """
        C v_j = c_j v_-j^*.
        """
        n = self.n
        two = q + 1 / q
        xi = q ** (2 * n)
        c = {j: self.sgn(j) * (-q ** 2) ** (self.bar(j) - 1) for j in self.letters if j not in (0, PHI)}
        c[0] = -(-q ** 2) ** (n - 1) / two
        c[PHI] = (-q ** 2) ** (2 * n - 1) / (two * xi)
        return c

    def beta(self, q, z):
        n = self.n
        return (q ** -4 * (1 - z ** 2) * (1 - q ** (4 - 4 * n) * z ** 2)
                / ((1 - q ** (-4 * n) * z ** 2) * (1 - q ** -4 * z ** 2)))

    # w(z) and the q-KZ data

    def phi_exponent(self, j: Letter) -> int:
        """
        (phi, wt v_j) for phi = 2 Lambda_n + 2 rho.
        """
        if j in (0, PHI):
            return 0
        return self.sgn(j) * 4 * (self.n + 1 - abs(j))

    def twist(self, q, vector: Mapping[Pair, object]) -> Dict[Pair, object]:
        """
        q^-phi on the first factor.
        """
        return {(a, b): c * q ** -self.phi_exponent(a) for (a, b), c in vector.items()}

    def w(self, q, z) -> Dict[Pair, object]:
        n = self.n
        xi2 = q ** (4 * n)
        two = q + 1 / q
        vector = {
            (0, 0): 1 + z ** 2 * q ** 2 * xi2,
            (PHI, PHI): -q * two * (-q ** 2) ** n * z,
        }
        for i in range(1, n + 1):
            c = -q * (-q ** 2) ** (n - i)
            vector[(i, -i)] = c
            vector[(-i, i)] = c * z ** 2 * q ** (4 * i - 2)
        return vector

    def shift(self, q):
        """
        q^(2(h + k)) = q^2 xi^2 at level k = 1.
        """
        return q ** (4 * self.n + 2)

    def lam(self, q, z):
        xi2 = q ** (4 * self.n)
        return (q ** 2 * (1 - q ** 4 * xi2 * z ** 2) * (1 - xi2 ** 2 * z ** 2)
                / ((1 - q ** 8 * xi2 ** 2 * z ** 2) * (1 - q ** 4 * xi2 ** 3 * z ** 2)))

    # checks at one point

    def normalization_holds(self, q, z) -> bool:
        R = self.rbar(q, z)
        return R.apply({(1, 1): 1}) == {(1, 1): 1}

    def regularity_holds(self, q) -> bool:
        """
        R(1) is the flip v_a (x) v_b -> v_b (x) v_a.
        """
        R = self.rbar(q, q ** 0)
        flip = {((b, a), (a, b)): 1 for a, b in self.pairs}
        return R.entries == flip

    def crossing_holds(self, q, z) -> bool:
        """
        (R(z)^-1)^t1 = beta(z) (C (x) 1) R(z / xi) (C (x) 1)^-1, checked as
        R(z) X^t1 = 1 for the right-hand side X.
        """
        c = self.crossing_map(q)
        scale = self.beta(q, z)
        moved = self.rbar(q, z / q ** (2 * self.n))
        neg = self.neg
        transposed: Entries = {}
        for ((a, b), (e, d)), value in moved.entries.items():
            transposed[((neg(e), b), (neg(a), d))] = scale * c[a] / c[e] * value
        pos = self.position
        rows: Dict[int, Dict[int, object]] = {}
        for (target, source), value in transposed.items():
            rows.setdefault(pos[target], {})[pos[source]] = value
        size = len(self.pairs)
        product_ = self.rbar(q, z).matrix() * _sparse(rows, size)
        return _vanishes(product_ - DomainMatrix.eye(size, QQ).to_sparse())

    def _embed(self, R: RMatrix, slots: Tuple[int, int]) -> DomainMatrix:
        letters = self.letters
        N = len(letters)
        index = {j: k for k, j in enumerate(letters)}

        def place(pair, x):
            triple = [x, x, x]
            triple[slots[0]], triple[slots[1]] = pair
            return (index[triple[0]] * N + index[triple[1]]) * N + index[triple[2]]

        rows: Dict[int, Dict[int, object]] = {}
        for (target, source), value in R.entries.items():
            for x in letters:
                rows.setdefault(place(target, x), {})[place(source, x)] = value
        return _sparse(rows, N ** 3)

    def ybe_holds(self, q, z1, z2, z3) -> bool:
        """
        R12(z1/z2) R13(z1/z3) R23(z2/z3) = R23(z2/z3) R13(z1/z3) R12(z1/z2).
        """
        r12 = self._embed(self.rbar(q, z1 / z2), (0, 1))
        r13 = self._embed(self.rbar(q, z1 / z3), (0, 2))
        r23 = self._embed(self.rbar(q, z2 / z3), (1, 2))
        return _vanishes(r12 * r13 * r23 - r23 * r13 * r12)

    def intertwine_holds(self, q, z) -> bool:
        """
        R(q^2 xi^2 z) (q^-phi (x) 1) w(z) = lam(z) w(q^2 xi^2 z).
        """
        s = self.shift(q)
        left = self.rbar(q, s * z).apply(self.twist(q, self.w(q, z)))
        scale = self.lam(q, z)
        right = {p: scale * c for p, c in self.w(q, s * z).items()}
        return left == {p: c for p, c in right.items() if c}


    # q-KZ through series

    def psi_prefactor(self, T: int, Q: int, scaled: bool = False) -> WSeries:
        """
        The scalar in front of w(z) in Psi(z), or in Psi(q^2 xi^2 z).
        """
        n = self.n
        shift = 8 * n + 4 if scaled else 0
        up = [8 * n + 4 + shift, 12 * n + shift]
        down = [4 * n + 4 + shift, 8 * n + shift]
        return _products(up, down, 8 * n, T, Q)

    def rplus_prefactor(self, T: int, Q: int) -> WSeries:
        """
        The scalar in front of R(q^2 xi^2 z) in R^+(q^2 xi^2 z).
        """
        n = self.n
        up = [8 * n + 8, 12 * n + 4, 12 * n + 4, 16 * n]
        down = [8 * n + 4, 12 * n, 12 * n + 8, 16 * n + 4]
        return _products(up, down, 8 * n, T, Q, scale=-2)

    def psi_series(self, T: int, Q: int) -> Dict[Pair, WSeries]:
        prefactor = self.psi_prefactor(T, Q)
        return {p: prefactor * _series(c, T, Q) for p, c in self.w(qw_q, qw_w).items()}

    def qkz_holds(self, T: int, Q: int) -> bool:
        """
        Psi(s z) = R^+(s z) (q^-phi (x) 1) Psi(z) with s = q^2 xi^2, through
        z^T and q^Q.
        """
        q, z = qw_q, qw_w
        s = self.shift(q)
        image = self.rbar(q, s * z).apply(self.twist(q, self.w(q, z)))
        shifted = self.w(q, s * z)
        left_factor = self.psi_prefactor(T, Q, scaled=True)
        right_factor = self.rplus_prefactor(T, Q) * self.psi_prefactor(T, Q)
        for pair in sorted(set(image) | set(shifted), key=str):
            left = left_factor * _series(shifted.get(pair), T, Q)
            right = right_factor * _series(image.get(pair), T, Q)
            if not series_agree(left, right, T, Q):
                logger.warning('%s: q-KZ fails on the %s component', self, pair)
                return False
        return True

    # sampled checks

    def samples(self, count: int, arity: int, seed: int = 0) -> Iterator[Tuple[Fraction, ...]]:
        """
        Rational points (q, z_1, ..., z_arity) with 0 < q < 1; callers skip
        points that hit a pole.
        """
        rng = random.Random(seed)
        for _ in range(count):
            q = Fraction(rng.randint(1, 6), rng.randint(7, 13))
            yield (q,) + tuple(Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(arity))

    def _sampled(self, holds: Callable[..., bool], name: str, count: int, arity: int, seed: int) -> bool:
        tried = passed = 0
        points = self.samples(50 * count, arity, seed)
        for point in points:
            if passed == count:
                break
            tried += 1
            try:
                ok = holds(*point)
            except ZeroDivisionError:
                logger.debug('%s: %s sample %s hits a pole, resampling', self, name, point)
                continue
            if not ok:
                logger.warning('%s: %s fails at %s', self, name, point)
                return False
            passed += 1
        if passed < count:
            raise UsageError('only {} of {} {} samples avoided the poles'.format(passed, count, name))
        logger.debug('%s: %s holds at %d points (%d tried)', self, name, passed, tried)
        return True

    def normalization_check(self, count: int = 5, seed: int = 0) -> bool:
        return (self._sampled(self.normalization_holds, 'normalization', count, 1, seed)
                and all(self.regularity_holds(q) for q, in self.samples(count, 0, seed)))

    def crossing_check(self, count: int = 5, seed: int = 0) -> bool:
        return self._sampled(self.crossing_holds, 'crossing', count, 1, seed)

    def ybe_check(self, count: int = 3, seed: int = 0) -> bool:
        return self._sampled(self.ybe_holds, 'Yang-Baxter', count, 3, seed)

    def intertwine_check(self, count: int = 5, seed: int = 0) -> bool:
        return self._sampled(self.intertwine_holds, 'intertwining', count, 1, seed)

    def qkz_check(self, T: int = 4, Q: int = 16) -> bool:
        return self.qkz_holds(T, Q)

    def theta_check(self, T: int = 6, Q: int = 20) -> bool:
        """
        omega / phi of the D^(2)_{n+1} vacuum two-point function is the
        bosonic theta; phi is the (0, 0) component of Psi.
        """
        tp = two_point(affine_type('d2', self.n), 0)
        phi = tp.phi_series(T, Q)
        if not series_agree(phi, self.psi_series(T, Q)[(0, 0)], T, Q):
            return False
        return series_agree(series_of(tp.omega_series(T), Q) / phi, tp.theta_closed(T, Q), T, Q)

    def check(self, name: str, count: int = 5, seed: int = 0, T: int = 4, Q: int = 16) -> bool:
        if name == 'normalization':
            return self.normalization_check(count, seed)
        if name == 'crossing':
            return self.crossing_check(count, seed)
        if name == 'ybe':
            return self.ybe_check(min(count, 3), seed)
        if name == 'intertwine':
            return self.intertwine_check(count, seed)
        if name == 'qkz':
            return self.qkz_check(T, Q)
        if name == 'theta':
            return self.theta_check(T, Q)
        raise UsageError('unknown check {!r}; use one of {}'.format(name, ', '.join(CHECKS + ('theta',))))


def _series(value, T: int, Q: int) -> WSeries:
    if value is None:
        value = qw_q * 0
    return series_of(rational_to_wseries(value, T), Q)


def _products(up: List[int], down: List[int], base: int, T: int, Q: int, scale: int = 0) -> WSeries:
    """
    q^scale prod (q^a z^2; q^base)_inf over ``up`` divided by the same over ``down``.
    """
    b = mono(1, base)
    result = _series(qw_q ** scale, T, Q)
    for a in up:
        result = result * pochhammer(mono(1, a, 2), b, Q, T)
    for a in down:
        result = result / pochhammer(mono(1, a, 2), b, Q, T)
    return result


@lru_cache(maxsize=None)
def dtwo(n: int) -> DTwo:
    return DTwo(n)


def build_rbar(n: int, q, z) -> RMatrix:
    return dtwo(n).rbar(q, z)


def rbar_entries(n: int, q, z) -> Entries:
    return dtwo(n).rbar(q, z).entries


def rbar_zero_weight_block(n: int, q, z) -> Dict[Tuple[Letter, Letter], object]:
    return dtwo(n).rbar(q, z).zero_weight_block()


def crossing_check(n: int, count: int = 5, seed: int = 0) -> bool:
    return dtwo(n).crossing_check(count, seed)


def ybe_check(n: int, count: int = 3, seed: int = 0) -> bool:
    return dtwo(n).ybe_check(count, seed)


def intertwine_check(n: int, count: int = 5, seed: int = 0) -> bool:
    return dtwo(n).intertwine_check(count, seed)


def qkz_check(n: int, T: int = 4, Q: int = 16) -> bool:
    return dtwo(n).qkz_check(T, Q)


def psi_series(n: int, T: int, Q: int) -> Dict[Pair, WSeries]:
    return dtwo(n).psi_series(T, Q)
