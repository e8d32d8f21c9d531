"""The working field for the gauge reduction: formal rational-power
monomials in bound nonzero elements h_1..h_l over the quotient field K.

K is realized as triangular normal forms: fractions of polynomials reduced
modulo a solved system (zero test is structural on the reduced numerator,
sound because the ideal is prime).  An element of the extension is a finite
sum of terms h^q * c with exponent vectors q in Q^l and coefficients c in K;
multiplication adds exponent vectors and the derivation uses the bound
values through the logarithmic derivatives h_j'/h_j.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .diffpoly import DiffFrac, DiffPoly, TriangularSystem
from .diffpoly.core import RATS, exact_divide

QVec = Tuple[Fraction, ...]


class ExtensionContext:
    """Bindings h_j -> K together with the reduction machinery of K."""

    def __init__(self, system: TriangularSystem, h: Sequence[DiffPoly]):
        self.system = system
        self.h = list(h)
        if any(not hj.terms for hj in self.h) :
            raise ValueError("bound elements must be nonzero in K")
        self.l = len(self.h)
        self.logd = [
            DiffFrac(system.reduce(hj.derivative()), hj) for hj in self.h
        ]

    def reduce_frac(self, f: DiffFrac) -> DiffFrac:
        return self.system.reduce_frac(f)

    # -- element constructors -------------------------------------------------

    def zero(self) -> "MonExt":
        return MonExt(self, {})

    def one(self) -> "MonExt":
        return MonExt(self, {self.zero_q(): DiffFrac(1)})

    def zero_q(self) -> QVec:
        return tuple(Fraction(0) for _ in range(self.l))

    def from_scalar(self, x) -> "MonExt":
        if isinstance(x, MonExt):
            if x.ctx is not self:
                raise ValueError("mixing extension contexts")
            return x
        f = DiffFrac.of(x)
        if f.is_zero():
            return self.zero()
        return MonExt(self, {self.zero_q(): f})

    def h_symbol(self, j: int) -> "MonExt":
        """The bound element h_j as the formal monomial h^{e_j}."""
        q = tuple(Fraction(1) if k == j - 1 else Fraction(0) for k in range(self.l))
        return MonExt(self, {q: DiffFrac(1)})

    def h_power(self, qvec: Sequence[Fraction], coeff=1) -> "MonExt":
        f = DiffFrac.of(coeff) if not isinstance(coeff, DiffFrac) else coeff
        if f.is_zero():
            return self.zero()
        return MonExt(self, {tuple(Fraction(x) for x in qvec): f})

    def materialize(self, x: "MonExt") -> DiffFrac:
        """Map an element with integer exponents back into K."""
        acc = DiffFrac(0)
        for q, c in x.terms.items():
            t = c
            for j, e in enumerate(q):
                if e.denominator != 1:
                    raise ValueError("non-integral exponent cannot be materialized")
                e = int(e)
                hj = DiffFrac(self.h[j])
                if e > 0:
                    for _ in range(e):
                        t = t * hj
                elif e < 0:
                    inv = hj.inverse()
                    for _ in range(-e):
                        t = t * inv
            acc = acc + t
        return self.reduce_frac(acc)

    def canonical_term(self, q: QVec, c: DiffFrac):
        """Move h_j-factors of the denominator into the exponent vector.

        Denominators in the reduction pipeline are products of powers of the
        bound elements; stripping them keeps coefficient denominators
        constant, so fraction arithmetic stays polynomial.  Numerators are
        left alone; the materializing zero test absorbs the representation
        freedom."""
        if c.is_zero():
            return q, c
        q = list(q)
        changed = True
        while changed and not c.den.is_constant():
            changed = False
            for j, hj in enumerate(self.h):
                if hj.is_constant() or c.den.is_constant():
                    continue
                quo = exact_divide(c.den, hj)
                if quo is not None:
                    c = DiffFrac(c.num, quo)
                    q[j] -= 1
                    changed = True
        return tuple(q), c


class MonExt:
    """A finite sum of monomials h^q with coefficients in K."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: ExtensionContext, terms: Dict[QVec, DiffFrac]):
        self.ctx = ctx
        canon: Dict[QVec, DiffFrac] = {}
        for q, c in terms.items():
            if c.is_zero():
                continue
            q, c = ctx.canonical_term(q, c)
            if q in canon:
                s = canon[q] + c
                if s.is_zero():
                    del canon[q]
                else:
                    canon[q] = s
            else:
                canon[q] = c
        self.terms = canon

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        """Zero test, sound across representations.

        Terms are grouped by the fractional part of the exponent vector;
        within a group the integral offsets are materialized through the
        bindings and the sum is reduced in K.  Distinct fractional cosets
        are treated as independent.
        """
        if not self.terms:
            return True
        groups: Dict[QVec, list] = {}
        for q, c in self.terms.items():
            frac_part = tuple(e % 1 for e in q)
            groups.setdefault(frac_part, []).append((q, c))
        for members in groups.values():
            if len(members) == 1:
                return False  # single canonical term with nonzero coefficient
            base = tuple(min(q[j] for q, _ in members) for j in range(self.ctx.l))
            acc = DiffFrac(0)
            for q, c in members:
                t = c
                for j in range(self.ctx.l):
                    e = q[j] - base[j]
                    if e.denominator != 1:
                        raise AssertionError("non-integral offset within a coset")
                    for _ in range(int(e)):
                        t = t * DiffFrac(self.ctx.h[j])
                acc = acc + t
            if not self.ctx.reduce_frac(acc).is_zero():
                return False
        return True

    def is_single(self) -> bool:
        return len(self.terms) == 1

    def constant_part(self) -> DiffFrac:
        return self.terms.get(self.ctx.zero_q(), DiffFrac(0))

    # -- arithmetic ----------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MonExt):
            if other.ctx is not self.ctx:
                raise ValueError("mixing extension contexts")
            return other
        if isinstance(other, (DiffPoly, DiffFrac) + RATS):
            return self.ctx.from_scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for q, c in o.terms.items():
            s = out.get(q, DiffFrac(0)) + c
            if s.is_zero():
                out.pop(q, None)
            else:
                out[q] = s
        return MonExt(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return MonExt(self.ctx, {q: -c for q, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: Dict[QVec, DiffFrac] = {}
        for q1, c1 in self.terms.items():
            for q2, c2 in o.terms.items():
                q = tuple(a + b for a, b in zip(q1, q2))
                s = out.get(q, DiffFrac(0)) + c1 * c2
                if s.is_zero():
                    out.pop(q, None)
                else:
                    out[q] = s
        return MonExt(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.ctx.one()
        for _ in range(e):
            acc = acc * self
        return acc

    def inverse(self) -> "MonExt":
        if len(self.terms) != 1:
            raise ValueError("only monomial elements are invertible in closed form")
        ((q, c),) = self.terms.items()
        return MonExt(self.ctx, {tuple(-x for x in q): c.inverse()})

    def derivative(self) -> "MonExt":
        """(h^q c)' = h^q (c' + c * sum q_j h_j'/h_j), reduced in K."""
        ctx = self.ctx
        out: Dict[QVec, DiffFrac] = {}
        for q, c in self.terms.items():
            d = ctx.reduce_frac(c.derivative())
            for j, e in enumerate(q):
                if e:
                    d = d + c * (e * ctx.logd[j])
            if not d.is_zero():
                s = out.get(q, DiffFrac(0)) + d
                if s.is_zero():
                    out.pop(q, None)
                else:
                    out[q] = s
        return MonExt(ctx, out)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        from .diffpoly import frac_to_text

        if not self.terms:
            return "MonExt(0)"
        bits = []
        for q, c in sorted(self.terms.items()):
            mono = "*".join(f"h{j + 1}^({e})" for j, e in enumerate(q) if e) or "1"
            bits.append(f"{mono} * [{frac_to_text(c)}]")
        return "MonExt(" + " + ".join(bits) + ")"
