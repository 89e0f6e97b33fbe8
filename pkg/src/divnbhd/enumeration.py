"""Bounded catalogues: semistable data through the Pell correspondence and a
brute-force search over normal non-semistable germs."""
from dataclasses import dataclass

from .classify import NeighborhoodVerdict, classify_normal_nss, classify_semistable
from .exact import DEFAULT_PELL_BOUND, PellProblem, gcd, hj_expand, pell_solve
from .graph import Vertex, WeightedDualGraph, analyze_germ
from .quotient import TDecomposition


def divisors(k):
    return [d for d in range(1, k + 1) if k % d == 0]


@dataclass(frozen=True)
class SemistableDatum:
    n: int
    a: int
    d: int
    n2: int
    a2: int
    d2: int

    @property
    def tuple(self):
        return (self.n, self.a, self.d, self.n2, self.a2, self.d2)

    @property
    def pell_witness(self):
        """``(d, x, y)`` with ``x = 2n/d' - n'`` and ``y = n'/d``."""
        return (self.d, 2 * self.n // self.d2 - self.n2, self.n2 // self.d)

    def swapped(self):
        return SemistableDatum(self.n2, self.a2, self.d2, self.n, self.a, self.d)

    def canonical(self):
        """The representative with ``n < n'`` (the two points play symmetric
        roles)."""
        return self if self.n <= self.n2 else self.swapped()

    def decompositions(self):
        return TDecomposition(self.n, self.d, self.a), TDecomposition(self.n2, self.d2, self.a2)

    def verdict(self):
        return classify_semistable(*self.decompositions())


def datum_from_pell(k, d, x, y):
    """Map a Pell solution for divisor ``d`` of ``k`` back to a datum, or None
    when it gives no admissible indices."""
    d2 = k // d
    y = abs(y)
    n2 = d * y
    twice_n = d2 * (x + n2)
    if twice_n % 2:
        return None
    n = twice_n // 2
    if n < 2 or n2 < 2 or gcd(n, n2) != 1:
        return None
    a = pow(n2, -1, n)
    top = n * n2 + 1 - a * n2
    if top % n:
        return None
    return SemistableDatum(n, a, d, n2, top // n, d2)


def enumerate_semistable(k, bound=DEFAULT_PELL_BOUND):
    """Every semistable datum over an ``A_{k-1}`` section with Pell ``|y| <= bound``.

    Data are returned once per unordered pair of points, as the ``n < n'``
    representative, sorted by ``(n, n', ...)``.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    found = {}
    for d in divisors(k):
        problem = PellProblem(k // d, d * (k - 4), 4)
        for x, y in pell_solve(problem, bound):
            if y < 0:
                continue
            datum = datum_from_pell(k, d, x, y)
            if datum is None or not datum.verdict().passed:
                continue
            datum = datum.canonical()
            found[datum.tuple] = datum
    return sorted(found.values(), key=lambda s: (s.n, s.n2, s.tuple))


def catalog_note(k, records, bound):
    if k == 2:
        return "empty (proved: cA_1)"
    if k == 3:
        return "complete (proved: cA_2)"
    if not records:
        return f"empty up to bound {bound}"
    return f"complete up to bound {bound}"


# -- normal non-semistable ----------------------------------------------------


@dataclass(frozen=True)
class NormalGerm:
    chain: tuple
    position: int
    duval_length: int
    verdict: NeighborhoodVerdict

    def graph(self):
        return normal_germ_graph(self.chain, self.position, self.duval_length)


def normal_germ_graph(chain, position, duval_length=0):
    """The T-chain ``chain`` (entries >= 2), a (-1)-curve ``C`` meeting its
    ``position``-th curve (0-based), and ``duval_length`` (-2)-curves hanging
    off ``C``."""
    verts = [Vertex(f"E{i + 1}", -b) for i, b in enumerate(chain)]
    verts.append(Vertex("C", -1, True))
    verts += [Vertex(f"D{i + 1}", -2) for i in range(duval_length)]
    edges = [(f"E{i + 1}", f"E{i + 2}") for i in range(len(chain) - 1)]
    edges.append(("C", f"E{position + 1}"))
    if duval_length:
        edges.append(("C", "D1"))
        edges += [(f"D{i + 1}", f"D{i + 2}") for i in range(duval_length - 1)]
    return WeightedDualGraph(tuple(verts), tuple(edges))


def enumerate_normal_nss(max_n, max_d, max_chain):
    """Germs built from one T-singularity ``1/(n^2 d)(1, a n d - 1)`` with
    ``2 <= n <= max_n``, ``d <= max_d``, plus an optional DuVal tail of length
    ``<= max_chain``, that pass every normal non-semistable check."""
    seen = set()
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, max_d + 1):
            big = n * n * d
            for a in range(1, n):
                if gcd(a, n) != 1:
                    continue
                chain = tuple(hj_expand(big, (a * n * d - 1) % big))
                for pos in range(len(chain)):
                    key = min((chain, pos), (chain[::-1], len(chain) - 1 - pos))
                    for tail in range(max_chain + 1):
                        if (key, tail) in seen:
                            continue
                        seen.add((key, tail))
                        g = normal_germ_graph(chain, pos, tail)
                        try:
                            verdict = classify_normal_nss(analyze_germ(g))
                        except ValueError:
                            continue
                        if verdict.passed:
                            out.append(NormalGerm(chain, pos, tail, verdict))
    return out
