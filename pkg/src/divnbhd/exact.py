"""Exact integer/rational helpers: Hirzebruch-Jung continued fractions,
bounded generalized Pell scans and a small rational linear solver.

Rationals are :class:`fractions.Fraction` throughout; nothing in this package
ever touches floating point.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

__all__ = [
    "Fraction",
    "gcd",
    "lcm",
    "DEFAULT_PELL_BOUND",
    "PellProblem",
    "SingularSystemError",
    "hj_expand",
    "hj_recognize",
    "pell_solve",
    "solve_rational",
    "determinant",
    "leading_minors",
]

#: Default |y| bound for Pell scans. Nothing in the theory bounds the search,
#: so every enumeration takes an explicit bound.
DEFAULT_PELL_BOUND = 10_000


class SingularSystemError(ArithmeticError):
    """Raised when a linear system has no unique solution."""


def _check_pair(n, a):
    if not (isinstance(n, int) and isinstance(a, int)):
        raise TypeError("n and a must be integers")
    if a <= 0 or a >= n:
        raise ValueError(f"need 1 <= a < n, got n={n}, a={a}")
    if gcd(n, a) != 1:
        raise ValueError(f"gcd({n}, {a}) = {gcd(n, a)} != 1")


def hj_expand(n, a):
    """Hirzebruch-Jung expansion of ``n/a``.

    Returns ``[b1, ..., bk]`` with ``n/a = b1 - 1/(b2 - 1/(... - 1/bk))`` and
    every ``bi >= 2``.

    >>> hj_expand(12, 5)
    [3, 2, 3]
    """
    _check_pair(n, a)
    chain = []
    p, q = n, a
    while q:
        b = -(-p // q)  # ceiling
        chain.append(b)
        p, q = q, b * q - p
    return chain


def hj_recognize(chain):
    """Inverse of :func:`hj_expand`: the pair ``(n, a)`` with ``n/a = [chain]``.

    Reading the chain backwards gives ``(n, a^-1 mod n)``.
    """
    chain = list(chain)
    if not chain:
        raise ValueError("empty chain (smooth point) has no (n, a)")
    if any(b < 2 for b in chain):
        raise ValueError(f"chain entries must be >= 2: {chain}")
    p, q = chain[-1], 1
    for b in reversed(chain[:-1]):
        p, q = b * p - q, p
    return p, q


@dataclass(frozen=True)
class PellProblem:
    """The equation ``A*x**2 - B*y**2 = N``."""

    A: int
    B: int
    N: int

    def __post_init__(self):
        if self.A <= 0:
            raise ValueError("A must be positive")

    def holds(self, x, y):
        return self.A * x * x - self.B * y * y == self.N


def pell_solve(p, bound=DEFAULT_PELL_BOUND):
    """All integer solutions of ``p`` with ``0 < |y| <= bound``.

    Exhaustive in ``y`` with an exact square test, so the result is complete
    within the bound. Sorted by ``|y|``, then ``x``, positive ``y`` first.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    out = []
    for y in range(1, bound + 1):
        rhs = p.N + p.B * y * y
        if rhs < 0 or rhs % p.A:
            continue
        t = rhs // p.A
        r = isqrt(t)
        if r * r != t:
            continue
        xs = (r, -r) if r else (0,)
        for x in xs:
            out.append((x, y))
            out.append((x, -y))
    out.sort(key=lambda s: (abs(s[1]), s[0], -s[1]))
    return out


def solve_rational(matrix, rhs):
    """Solve the square system ``matrix @ x = rhs`` exactly.

    Entries may be ints or Fractions; the solution is a list of Fractions.
    Raises :class:`SingularSystemError` when the matrix is singular.
    """
    size = len(matrix)
    if len(rhs) != size or any(len(row) != size for row in matrix):
        raise ValueError("matrix must be square and match rhs")
    m = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(matrix, rhs)]
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            raise SingularSystemError("singular intersection matrix")
        m[col], m[piv] = m[piv], m[col]
        prow = m[col]
        for r in range(col + 1, size):
            if m[r][col] != 0:
                f = m[r][col] / prow[col]
                m[r] = m[r][:col] + [v - f * pv for v, pv in zip(m[r][col:], prow[col:])]
    x = [Fraction(0)] * size
    for r in range(size - 1, -1, -1):
        acc = m[r][-1] - sum((m[r][c] * x[c] for c in range(r + 1, size) if m[r][c]), Fraction(0))
        x[r] = acc / m[r][r]
    return x


def leading_minors(matrix):
    """All leading principal minors of an integer matrix in one Bareiss pass.

    Without pivoting the k-th pivot is exactly the k-th leading minor; after a
    zero pivot the remaining minors are not computed and reported as None.
    """
    m = [list(row) for row in matrix]
    size = len(m)
    out = []
    prev = 1
    for k in range(size):
        if m[k][k] == 0:
            return out + [0] + [None] * (size - k - 1)
        out.append(m[k][k])
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return out


def determinant(matrix):
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    m = [list(row) for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]
