"""Cyclic quotient singularities ``1/n(1,a)``: DuVal and T-singularity
recognition, and the degenerate-cusp normalization families.
"""
from dataclasses import dataclass
from typing import Optional

from .exact import gcd, hj_expand

SMOOTH = "smooth"
DUVAL = "duval"
B_DIV_M_PLUS_1 = "b_div_m_plus_1"
B_DIV_2M_PLUS_1 = "b_div_2m_plus_1"
B_DIV_M_S_PLUS_1 = "b_div_m_s_plus_1"


@dataclass(frozen=True, order=True)
class CyclicQuotient:
    """The singularity ``1/n(1,a)``.

    ``(1, 0)`` stands for a smooth point. The pair is kept as given;
    ``1/n(1,a)`` and ``1/n(1,a^-1)`` are isomorphic but only
    :meth:`is_isomorphic` says so.
    """

    n: int
    a: int

    def __post_init__(self):
        if self.n == 1:
            if self.a != 0:
                raise ValueError("smooth point must be written (1, 0)")
            return
        if self.n < 1 or not 1 <= self.a < self.n or gcd(self.a, self.n) != 1:
            raise ValueError(f"invalid cyclic quotient 1/{self.n}(1,{self.a})")

    @classmethod
    def smooth(cls):
        return cls(1, 0)

    @property
    def is_smooth(self):
        return self.n == 1

    @property
    def inverse_residue(self):
        return 0 if self.is_smooth else pow(self.a, -1, self.n)

    def reversed(self):
        """The same point read from the other end of its chain."""
        return CyclicQuotient(self.n, self.inverse_residue)

    def negated(self):
        """``1/n(1,-a)``."""
        return self if self.is_smooth else CyclicQuotient(self.n, self.n - self.a)

    def is_isomorphic(self, other):
        return self.n == other.n and other.a in (self.a, self.inverse_residue)

    def __str__(self):
        return "smooth" if self.is_smooth else f"1/{self.n}(1,{self.a})"


@dataclass(frozen=True)
class TDecomposition:
    """``1/(n^2 d)(1, a n d - 1)`` with ``gcd(a, n) = 1``.

    ``inverted`` is True when the match was against the inverse residue of the
    point, i.e. the chain has to be read from the other end.
    """

    n: int
    d: int
    a: int
    inverted: bool = False

    @property
    def order(self):
        return self.n * self.n * self.d

    @property
    def residue(self):
        return (self.a * self.n * self.d - 1) % self.order

    def quotient(self):
        if self.order == 1:
            return CyclicQuotient.smooth()
        return CyclicQuotient(self.order, self.residue)

    @property
    def key(self):
        return (self.n, self.d, self.a)


@dataclass(frozen=True)
class CuspClass:
    """A family of degenerate-cusp normalizations and its multiplicity tag."""

    family: str
    multiplicity: int
    s: Optional[int] = None


def is_duval(q):
    """``m`` if ``q`` is the ``A_m`` point ``1/(m+1)(1,m)``, else None.

    A smooth point counts as ``A_0``.
    """
    if q.is_smooth:
        return 0
    return q.n - 1 if q.a == q.n - 1 else None


def dual_chain(q):
    """Self-intersections (negated) of the minimal resolution chain of ``q``."""
    return [] if q.is_smooth else hj_expand(q.n, q.a)


def t_decompositions(q):
    """Every way to write ``q`` as ``1/(n^2 d)(1, a n d - 1)``.

    Both orientations are tried; ``n = 1`` decompositions (DuVal points) are
    included. Empty result means ``q`` is not of this form.
    """
    if q.is_smooth:
        return []
    big = q.n
    targets = (q.a, q.inverse_residue)
    out = []
    n = 1
    while n * n <= big:
        if big % (n * n) == 0:
            d = big // (n * n)
            for a in range(1, n + 1):
                if gcd(a, n) != 1:
                    continue
                r = (a * n * d - 1) % big
                if r == targets[0]:
                    out.append(TDecomposition(n, d, a, False))
                elif r == targets[1]:
                    out.append(TDecomposition(n, d, a, True))
        n += 1
    return out


def cusp_class(q):
    """Degenerate-cusp normalization families that ``q`` belongs to.

    ``q = 1/m(1, m-b)`` is read as ``1/m(1,-b)``. The third family is reported
    once per witness ``s``. Its divisibility test alone also accepts some
    single -4 chains (``1/4(1,1)`` with ``s = 1``), so it is only reported when
    the resolution chain really carries two -3 curves.
    """
    if q.is_smooth:
        return [CuspClass(SMOOTH, 2)]
    m, b = q.n, q.n - q.a
    if b % m == 1 % m:
        return [CuspClass(DUVAL, 2)]
    out = []
    if (m + 1) % b == 0:
        out.append(CuspClass(B_DIV_M_PLUS_1, 3))
    if (2 * m + 1) % b == 0:
        out.append(CuspClass(B_DIV_2M_PLUS_1, 4))
    two_threes = sorted(x for x in hj_expand(m, q.a) if x != 2) == [3, 3]
    for s in range(1, (b - 1) // 2 + 1 if two_threes else 1):
        if (m + s + 1) % b == 0 and (b - s) % (s + 1) == 0:
            out.append(CuspClass(B_DIV_M_S_PLUS_1, 4, s))
    return out


def cusp_closed_form(left, right):
    """``1/m(1,a)`` for the chain of ``left`` (-2)'s, one -4, ``right`` (-2)'s.

    ``m = 2*left*right + 3*left + 3*right + 4`` and
    ``a = 2*left*right + right + 3*left + 1``; then ``b = m - a = 2*right + 3``
    and ``2m + 1 = (2*left + 3) * b``.
    """
    m = 2 * left * right + 3 * left + 3 * right + 4
    a = 2 * left * right + right + 3 * left + 1
    return CyclicQuotient(m, a)
