"""Leaders, pseudo-reduction, simplicity checks and triangular normal forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .core import Derivative, DiffPoly, Key, NEG_INF
from .frac import DiffFrac
from .ranking import Ranking


def leader(p: DiffPoly, rk: Ranking) -> Derivative:
    return Derivative.from_key(rk.leader_key(p))


def initial(p: DiffPoly, rk: Ranking) -> DiffPoly:
    lk = rk.leader_key(p)
    return p.coeff_of(lk, p.degree_in(lk))

def separant(p: DiffPoly, rk: Ranking) -> DiffPoly:
    return p.partial(rk.leader_key(p))


def order_in(p: DiffPoly, cls: str, idx: int):
    """Maximal derivative order of (cls, idx) in p; -inf when absent."""
    return p.order_in(cls, idx)


@dataclass
class ReductionStep:
    eq_index: int
    prolongation: int
    factor: DiffPoly  # multiplied into the equation's prolongation


@dataclass
class PseudoRemainder:
    remainder: DiffPoly
    multiplier: DiffPoly
    steps: List[ReductionStep]

    def combination_check(self, p: DiffPoly, eqs: Sequence[DiffPoly]) -> bool:
        """Verify multiplier*p - remainder == sum of the recorded multiples."""
        acc = self.multiplier * p - self.remainder
        for st in self.steps:
            acc = acc - st.factor * eqs[st.eq_index].derivative(st.prolongation)
        return not acc.terms


def pseudo_reduce_list(
    p: DiffPoly,
    eqs: Sequence[DiffPoly],
    rk: Ranking,
    track: bool = False,
) -> PseudoRemainder:
    """Ritt pseudo-reduction of p by equations with pairwise distinct leader
    indeterminates, using the equations and their derivatives.

    Returns remainder, multiplier (a product of initials and separants) and,
    when ``track`` is set, the explicit combination witnessing
    ``multiplier*p - remainder  in  (eqs and their derivatives)``.
    """
    by_indet: Dict[tuple, Tuple[int, int]] = {}
    for i, eq in enumerate(eqs):
        lk = rk.leader_key(eq)
        name = (lk[0], lk[1])
        if name in by_indet:
            raise ValueError("equations must have leaders in pairwise distinct indeterminates")
        by_indet[name] = (i, lk[2])

    rem = p
    mult = DiffPoly.one()
    steps: List[ReductionStep] = []
    while True:
        target = None
        for key in rem.keys():
            name = (key[0], key[1])
            if name not in by_indet:
                continue
            i, base = by_indet[name]
            if key[2] < base:
                continue
            if key[2] == base and rem.degree_in(key) < eqs[i].degree_in(key):
                continue
            if target is None or rk.compare(key, target) > 0:
                target = key
        if target is None:
            return PseudoRemainder(rem, mult, steps)
        i, base = by_indet[(target[0], target[1])]
        t = target[2] - base
        q = eqs[i].derivative(t) if t else eqs[i]
        dq = q.degree_in(target)
        Iq = q.coeff_of(target, dq)
        while True:
            dr = rem.degree_in(target)
            if dr < dq:
                break
            lc = rem.coeff_of(target, dr)
            shift = DiffPoly({((target, dr - dq),): 1}) if dr > dq else DiffPoly.one()
            rem = Iq * rem - lc * shift * q
            mult = Iq * mult
            if track:
                for st in steps:
                    st.factor = Iq * st.factor
                steps.append(ReductionStep(i, t, lc * shift))


def leader_reducible(p: DiffPoly, q: DiffPoly, rk: Ranking) -> bool:
    """Whether a pseudo-reduction of p modulo q (or a derivative of q) is
    possible.  Reduction is keyed on the leader of p: it requires the two
    leaders to involve the same differential indeterminate."""
    lp = rk.leader_key(p)
    lq = rk.leader_key(q)
    if (lp[0], lp[1]) != (lq[0], lq[1]) or lp[2] < lq[2]:
        return False
    if lp[2] > lq[2]:
        return True
    return p.degree_in(lp) >= q.degree_in(lq)


@dataclass
class SimpleReport:
    verdict: Optional[bool]  # True / False / None = undecided
    violations: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.verdict is True


def is_simple(equations: Sequence[DiffPoly], inequations: Sequence[DiffPoly], rk: Ranking) -> SimpleReport:
    """Check the defining conditions of a simple differential system.

    The algebraic nonvanishing condition on initials and separants is
    replaced by a sufficient syntactic surrogate: each must pseudo-reduce to
    a nonzero constant.  When the surrogate is inconclusive (a reduced value
    that is neither zero nor constant) the verdict is ``None``.
    """
    rep = SimpleReport(True)
    members = list(equations) + list(inequations)
    for p in members:
        if p.is_constant():
            rep.violations.append("1a: a member of the system is constant")
            rep.verdict = False
    if rep.verdict is False:
        return rep

    leaders = [rk.leader_key(p) for p in members]
    if len(set(leaders)) != len(leaders):
        rep.violations.append("1b: leaders are not pairwise distinct")
        rep.verdict = False
        return rep

    # condition 2 first: mutual reducedness of the equations
    for i, p in enumerate(equations):
        for j, q in enumerate(equations):
            if i != j and leader_reducible(p, q, rk):
                rep.violations.append(f"2: equation {i} reduces modulo equation {j}")
                rep.verdict = False
    if rep.verdict is False:
        return rep

    # condition 3: inequations equal their pseudo-remainders
    for j, q in enumerate(inequations):
        red = pseudo_reduce_list(q, equations, rk).remainder
        if red != q:
            rep.violations.append(f"3: inequation {j} is not equal to its pseudo-remainder")
            rep.verdict = False
    if rep.verdict is False:
        return rep

    # condition 1c (surrogate): initials and separants reduce to nonzero constants
    undecided = False
    for i, p in enumerate(members):
        for kind, v in (("initial", initial(p, rk)), ("separant", separant(p, rk))):
            red = pseudo_reduce_list(v, equations, rk).remainder if equations else v
            if red.is_constant():
                if red.constant_value() == 0:
                    rep.violations.append(f"1c: {kind} of member {i} reduces to zero")
                    rep.verdict = False
                    return rep
            else:
                undecided = True
                rep.notes.append(f"1c: {kind} of member {i} reduces to a non-constant; undecided")
    if undecided:
        rep.verdict = None
    return rep


@dataclass(frozen=True)
class SolvedEquation:
    """leader = rhs with the constant initial folded into rhs."""

    leader: Key
    rhs: DiffPoly
    original: DiffPoly
    initial: DiffPoly
    separant: DiffPoly


class TriangularSystem:
    """A solved triangular differential system with linear, constant-initial
    equations and pairwise distinct leader indeterminates.

    ``reduce`` substitutes leaders (and their derivatives) by the solved
    right-hand sides to a fixed point, yielding the canonical normal form of
    the quotient modulo the generated differential ideal.
    """

    def __init__(self, equations: Sequence[DiffPoly], ranking: Ranking, inequations: Sequence[DiffPoly] = ()):
        self.ranking = ranking
        self.inequations = tuple(inequations)
        solved = []
        by_indet: Dict[tuple, SolvedEquation] = {}
        for eq in equations:
            lk = ranking.leader_key(eq)
            if eq.degree_in(lk) != 1:
                raise ValueError(f"equation is not linear in its leader {Derivative.from_key(lk)}")
            init = eq.coeff_of(lk, 1)
            if not init.is_constant() or init.constant_value() == 0:
                raise ValueError("initial is not a nonzero constant")
            c = init.constant_value()
            rhs = (DiffPoly.from_derivative(Derivative.from_key(lk)) * c - eq) / c
            name = (lk[0], lk[1])
            if name in by_indet:
                raise ValueError("two equations share a leader indeterminate")
            se = SolvedEquation(lk, rhs, eq, init, separant(eq, ranking))
            solved.append(se)
            by_indet[name] = se
        self.equations: Tuple[SolvedEquation, ...] = tuple(solved)
        self._by_indet = by_indet
        self._rhs_cache: Dict[Key, DiffPoly] = {}

    def _rhs_for(self, key: Key) -> DiffPoly:
        if key in self._rhs_cache:
            return self._rhs_cache[key]
        se = self._by_indet[(key[0], key[1])]
        val = se.rhs.derivative(key[2] - se.leader[2])
        self._rhs_cache[key] = val
        return val

    def _reducible_keys(self, p: DiffPoly):
        out = []
        for key in p.keys():
            se = self._by_indet.get((key[0], key[1]))
            if se is not None and key[2] >= se.leader[2]:
                out.append(key)
        return out

    def reduce(self, p: DiffPoly) -> DiffPoly:
        while True:
            keys = self._reducible_keys(p)
            if not keys:
                return p
            key = self.ranking.max_key(keys)
            p = p.subs_key(key, self._rhs_for(key))

    def reduce_frac(self, f) -> DiffFrac:
        f = DiffFrac.of(f)
        num = self.reduce(f.num)
        den = self.reduce(f.den)
        if not den.terms:
            raise ZeroDivisionError("denominator reduces to zero modulo the system")
        return DiffFrac(num, den)

    def is_zero_mod(self, f) -> bool:
        f = DiffFrac.of(f)
        return not self.reduce(f.num).terms


def triangular_reduce(p, sys: TriangularSystem):
    """Canonical normal form modulo a solved triangular system.

    Polynomials map to polynomials; fractions to fractions.  The result is
    zero exactly when the input lies in the (prime) differential ideal of the
    system.
    """
    if isinstance(p, DiffPoly):
        return sys.reduce(p)
    return sys.reduce_frac(p)


def pseudo_reduce(p: DiffPoly, sys: TriangularSystem, track: bool = False) -> PseudoRemainder:
    """Ritt pseudo-reduction of p modulo the system's original equations."""
    return pseudo_reduce_list(p, [se.original for se in sys.equations], sys.ranking, track=track)
