"""Condition checkers for the three classes of divisorial neighbourhoods over
a cA point: normal non-semistable, non-normal non-semistable and semistable.

Every check is recorded in a :class:`NeighborhoodVerdict` together with the
exact quantities it was evaluated from.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .exact import Fraction, SingularSystemError, gcd, lcm, solve_rational
from .graph import BlowDownError, blow_down_to_minimal, duval_type, line_index
from .quotient import CyclicQuotient, cusp_class, is_duval, t_decompositions

NORMAL = "normal_nss"
NONNORMAL = "nonnormal_nss"
SEMISTABLE = "semistable"


class ClassificationError(ValueError):
    """The germ does not have the shape the requested class needs."""


@dataclass(frozen=True)
class Condition:
    holds: bool
    witness: dict


@dataclass
class NeighborhoodVerdict:
    class_tag: str
    conditions: dict = field(default_factory=dict)
    index_n: Optional[int] = None
    multiplicity_mu: Optional[Fraction] = None
    target_d: Optional[int] = None
    s_position: Optional[int] = None
    extras: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.holds for c in self.conditions.values())

    def check(self, tag, holds, **witness):
        self.conditions[tag] = Condition(bool(holds), witness)
        return bool(holds)

    @property
    def target_type(self):
        """``cA_{d-1}`` label for ``X``."""
        return None if self.target_d is None else f"cA_{self.target_d - 1}"


def multiplicity(kc, c2):
    """Multiplicity of the centre curve: ``-(K.C)^2 / C^2``."""
    kc, c2 = Fraction(kc), Fraction(c2)
    if c2 >= 0:
        raise ValueError(f"C^2 must be negative, got {c2}")
    return -kc * kc / c2


def _split_points(analysis):
    high, low = [], []
    for p in analysis.singular_points:
        (low if is_duval(p.quotient) is not None else high).append(p)
    return high, low


def _target_from_blowdown(analysis, verdict):
    try:
        residue = blow_down_to_minimal(analysis.graph)
    except BlowDownError as exc:
        verdict.check("normal2.cond2", False, reason=str(exc))
        return
    m = duval_type(residue)
    verdict.extras["residue"] = [v.e for v in residue.vertices]
    if verdict.check("normal2.cond2", m is not None, residue=[v.e for v in residue.vertices]):
        verdict.target_d = m + 1


def classify_normal_nss(analysis):
    """Check a germ with one marked curve against the normal non-semistable
    characterization."""
    g = analysis.graph
    if g.glue is not None:
        raise ClassificationError("glued germ: use classify_nonnormal")
    if len(g.marked) != 1:
        raise ClassificationError(f"expected one marked curve, found {len(g.marked)}")
    (c,) = g.marked
    high, low = _split_points(analysis)
    # direct readings first, so the reported (n, d, a) matches the point as read
    decomps = [sorted((t for t in t_decompositions(p.quotient) if t.n >= 2), key=lambda t: t.inverted) for p in high]
    if not any(decomps):
        raise ClassificationError("no singular point of the form 1/(n^2 d)(1, a n d - 1) with n >= 2")

    v = NeighborhoodVerdict(NORMAL)
    v.check(
        "normal1.cond1",
        len(high) == 1 and bool(decomps[0]) and len(low) <= 1,
        high_index_points=[str(p.quotient) for p in high],
        duval_points=[str(p.quotient) for p in low],
    )
    kc, c2 = analysis.kz_dot[c], analysis.self_int[c]
    candidates = next(d for d in decomps if d)
    chosen = next(
        (t for t in candidates if kc == Fraction(-1, t.n) and c2 == Fraction(-1, t.n * t.n)),
        candidates[0],
    )
    n = chosen.n
    v.check("normal1.cond2", kc == Fraction(-1, n) and c2 == Fraction(-1, n * n), kz_dot_c=kc, c_squared=c2, n=n)
    v.index_n = n
    v.multiplicity_mu = multiplicity(kc, c2) if c2 < 0 else None
    v.extras["t_decomposition"] = {"n": chosen.n, "d": chosen.d, "a": chosen.a}
    v.extras["all_t_decompositions"] = [t.key for t in candidates]
    _target_from_blowdown(analysis, v)
    return v


def index_from_section_position(nu, k):
    """Index of ``Y`` when ``Gamma`` meets ``E_k`` of an ``A_nu`` section."""
    return line_index(nu, k)


# -- semistable ---------------------------------------------------------------


def semistable_intersections(p, q):
    """``(K.C, C^2)`` for a curve joining the T-points ``p`` and ``q``, each
    read from the curve's side, with ``C'^2 = -1`` on the resolution."""
    kc = 1 - Fraction(p.a, p.n) - Fraction(q.a, q.n)
    c2 = -kc - Fraction(1, p.n * p.n * p.d) - Fraction(1, q.n * q.n * q.d)
    return kc, c2


def classify_semistable(p, q):
    """Check two T-decompositions ``p = (n, a, d)``, ``q = (n', a', d')``."""
    n, a, d = p.n, p.a, p.d
    n2, a2, d2 = q.n, q.a, q.d
    v = NeighborhoodVerdict(SEMISTABLE)
    v.check("semistable1.cond1", n >= 2 and n2 >= 2, n=n, n_prime=n2)
    v.check("semistable1.cond2", gcd(n, n2) == 1 and gcd(a, a2) == 1, gcd_n=gcd(n, n2), gcd_a=gcd(a, a2))
    v.check("semistable1.cond3", n2 % d == 0 and n % d2 == 0, d=d, n_prime=n2, d_prime=d2, n=n)
    lhs4 = n * n2 - a * n2 - a2 * n
    v.check("semistable1.cond4", lhs4 == -1, value=lhs4)
    rhs5 = n2 * n2 * d2 + n * n * d - n * n2 * d * d2
    v.check("semistable1.cond5", d * d2 == rhs5, lhs=d * d2, rhs=rhs5)
    kc, c2 = semistable_intersections(p, q)
    printed = Fraction(n * n2 * d * d2 - n2 * n2 * d2 - n * n * d2, n * n * n2 * n2 * d * d2)
    v.index_n = lcm(n, n2)
    v.multiplicity_mu = multiplicity(kc, c2) if c2 < 0 else None
    v.target_d = d * d2
    v.extras.update(
        kz_dot_c=kc,
        c_squared=c2,
        c_squared_alt_form=printed,
        alt_form_agrees=printed == c2,
        datum=(n, a, d, n2, a2, d2),
    )
    return v


def semistable_s_position(datum, k, k2):
    """``(m, s)``: ``S`` is ``A_m`` and ``Gamma`` meets ``E_s``."""
    n, a, d, n2, a2, d2 = datum
    if k < 1 or k2 < 1:
        raise ValueError("axial multiplicities must be positive")
    m = n * k + n2 * k2 - 1
    s = Fraction(n * k2, d2) - Fraction(n2 * k, d) + k * n
    if s.denominator != 1:
        raise ValueError(f"non-integral position s = {s}: malformed datum")
    return m, int(s)


def ca2_existence(m, s):
    """Axial multiplicities ``(k, k')`` solving ``2k + 3k' = m + 1``,
    ``k + k' = s``, or None when no positive solution exists."""
    if m < 1 or not 1 <= s <= m:
        raise ValueError(f"need m >= 1 and 1 <= s <= m, got m={m}, s={s}")
    k = 3 * s - m - 1
    k2 = s - k
    return (k, k2) if k >= 1 and k2 >= 1 else None


def classify_semistable_germ(analysis):
    """Semistable check starting from a graph: both points are read from the
    marked curve and decomposed in that orientation."""
    g = analysis.graph
    if g.glue is not None or len(g.marked) != 1:
        raise ClassificationError("semistable germs have exactly one marked curve and no glue")
    (c,) = g.marked
    high, low = _split_points(analysis)
    if len(high) != 2:
        raise ClassificationError(f"expected two high-index points, found {len(high)}")
    options = []
    for pt in high:
        q = pt.reading_from(c)
        options.append([t for t in t_decompositions(q) if t.n >= 2 and not t.inverted])
    if not all(options):
        raise ClassificationError("a high-index point is not a T-singularity read from the curve")
    combos = list(product(*options))
    verdicts = [classify_semistable(p, q) for p, q in combos]
    v = next((x for x in verdicts if x.passed), verdicts[0])
    kc, c2 = analysis.kz_dot[c], analysis.self_int[c]
    v.check("semistable.graph_kz", kc == v.extras["kz_dot_c"], graph=kc, formula=v.extras["kz_dot_c"])
    v.check("semistable.graph_c2", c2 == v.extras["c_squared"], graph=c2, formula=v.extras["c_squared"])
    v.check("semistable.no_duval_points", not low, duval_points=[str(p.quotient) for p in low])
    return v


# -- degenerate cusps ---------------------------------------------------------


@dataclass(frozen=True)
class CuspInvariants:
    f_dot_delta: tuple
    delta_squared: int
    mult: int
    embdim: int

    @property
    def admissible(self):
        """Embedding dimension at most 4 for a negative cycle."""
        return self.embdim <= 4 and self.delta_squared < 0


def cusp_invariants(delta, attachments):
    """Invariants of a degenerate cusp from its normalized exceptional chain.

    ``delta`` lists ``E_i^2``; ``attachments`` lists ``E_i . B`` where ``B`` is
    the preimage of the double curve.
    """
    delta = list(delta)
    attachments = list(attachments)
    if not delta or len(delta) != len(attachments):
        raise ValueError("need a nonempty chain and one attachment count per curve")
    f_dot = tuple(e + 2 - b for e, b in zip(delta, attachments))
    dsq = sum(delta) + 2 * (len(delta) - 1)
    return CuspInvariants(f_dot, dsq, max(2, -dsq), max(3, -dsq))


# -- non-normal ---------------------------------------------------------------


def _pick_c1(g):
    if g.glue is None:
        raise ClassificationError("non-normal germs need a glue pair")
    first, second = g.glue
    if g[first].e != -1 and g[second].e == -1:
        first, second = second, first
    return first, second


def _is_chain(g):
    comps = g.components(g.ids)
    if len(comps) != 1:
        return False
    deg = [len(g.neighbors(v)) for v in g.ids]
    return max(deg, default=0) <= 2 and len(g.edges) == len(g.vertices) - 1


def classify_nonnormal(analysis):
    """Check a glued germ (given by its normalization) against the non-normal
    characterization."""
    g = analysis.graph
    c1, c2 = _pick_c1(g)
    if len(g.marked) != 2:
        raise ClassificationError(f"expected exactly the two glued curves marked, found {g.marked}")
    p1 = [p for p in analysis.singular_points if p.attached == (c1,)]
    p2 = [p for p in analysis.singular_points if p.attached == (c2,)]
    qs = [p for p in analysis.singular_points if set(p.attached) == {c1, c2}]
    stray = [p for p in analysis.singular_points if not p.attached]
    direct = c2 in g.neighbors(c1)

    v = NeighborhoodVerdict(NONNORMAL)
    v.extras["c1"], v.extras["c2"] = c1, c2
    c12 = analysis.dot(c1, c2)
    v.check("nonnormal1.cond1", c12 > 0 and (len(qs) == 1) != direct, c1_dot_c2=c12)
    v.check(
        "nonnormal1.cond2",
        len(p1) == 1 and len(p2) == 1 and not stray,
        points_on_c1=[str(p.quotient) for p in p1],
        points_on_c2=[str(p.quotient) for p in p2],
        other_points=[str(p.quotient) for p in stray],
    )
    if len(p1) != 1 or len(p2) != 1:
        raise ClassificationError("need exactly one high-index point on each glued curve")
    q1, q2 = p1[0].reading_from(c1), p2[0].reading_from(c2)
    if q1.is_smooth or q1.n != q2.n or q2.a != q1.n - q1.a:
        raise ClassificationError(f"{q1} and {q2} are not a pair 1/n(1,a), 1/n(1,-a)")
    n, a = q1.n, q1.a
    v.check("nonnormal1.cond2a", True, P1=str(q1), P2=str(q2), n=n, a=a)

    if direct or not qs:
        junction = CyclicQuotient.smooth()
        m, b = 1, 1
    else:
        junction = qs[0].reading_from(c1)
        m, b = junction.n, junction.n - junction.a
    families = cusp_class(junction)
    if not families:
        raise ClassificationError(f"junction {junction} is in no degenerate-cusp family")
    v.check("nonnormal1.cond2b", True, Q=str(junction), m=m, b=b, families=[(f.family, f.multiplicity, f.s) for f in families])
    v.check("nonnormal1.cond2c", _is_chain(g))

    s11, s22 = analysis.self_int[c1], analysis.self_int[c2]
    k1, k2 = analysis.kz_dot[c1], analysis.kz_dot[c2]
    diff_sq = s11 - 2 * c12 + s22
    rhs3 = n * n * (c12 * c12 - s11 * s22)
    v.check("nonnormal1.cond3", diff_sq == rhs3, lhs=diff_sq, rhs=rhs3)

    den = a * m - (b + 1) * n
    num1, num2 = m + n * n, b + 1 + a * n
    v.check(
        "nonnormal1.cond4",
        den != 0 and num1 % den == 0 and num2 % den == 0,
        divisor=den,
        m_plus_n2=num1,
        b_plus_1_plus_an=num2,
    )

    v.index_n = n
    x1_closed = -1 - Fraction(num1, den) if den else None
    v.extras.update(x1_closed_form=x1_closed, m=m, b=b, n=n, a=a)
    for tag, ci in (("subadjunction.c1", c1), ("subadjunction.c2", c2)):
        val = analysis.kz_dot[ci] + analysis.self_int[ci] + c12
        v.check(tag, val == Fraction(-1, n), value=val)
    try:
        x1, x2 = solve_rational([[s11, c12], [c12, s22]], [k1, k2])
    except SingularSystemError:
        v.check("multiplicity1.mu", False, reason="C1, C2 have a degenerate intersection form")
        v.check("cartier.P1", False, reason="x1, x2 undefined")
    else:
        _nonnormal_multiplicity(v, x1, x2, n, a)

    kappa = n * m // gcd(m, b + 1)
    nu = diff_sq * kappa
    v.extras.update(kappa=kappa, nu=nu, c1_minus_c2_squared=diff_sq)
    if v.check("nonnormal2.cond3", nu.denominator == 1 and nu != 0, nu=nu, kappa=kappa):
        num = abs(int(nu) * m)
        v.target_d = num // gcd(num, kappa)
    return v


def _nonnormal_multiplicity(v, x1, x2, n, a):
    mu = (x1 + x2 + 2) / n
    v.multiplicity_mu = mu
    v.extras.update(x1=x1, x2=x2)
    v.check("multiplicity1.mu", mu == 1, mu=mu, x1=x1, x2=x2)
    if x1.denominator == 1 and x2.denominator == 1:
        xi = int(x1)
        c_p1 = a * xi + a + 1
        c_p2 = (n - a) * (n - 2 - xi) + n - a + 1
        v.check("cartier.P1", c_p1 % n == 0, value=c_p1, n=n)
        v.check("cartier.P2", c_p2 % n == 0, value=c_p2, n=n)
    else:
        v.check("cartier.P1", False, reason="x1, x2 not integral", x1=x1, x2=x2)


def classify(analysis, hint="auto"):
    """Dispatch on ``hint`` or on the germ's shape (glue > two T-points > one)."""
    if hint == "auto":
        if analysis.graph.glue is not None:
            hint = "nonnormal"
        else:
            high, _ = _split_points(analysis)
            hint = "semistable" if len(high) == 2 else "normal"
    if hint == "nonnormal":
        return classify_nonnormal(analysis)
    if hint == "semistable":
        return classify_semistable_germ(analysis)
    if hint == "normal":
        return classify_normal_nss(analysis)
    raise ValueError(f"unknown class hint {hint!r}")
