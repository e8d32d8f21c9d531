"""Sparse differential polynomials over the rationals.

An indeterminate is named by a class string and an index, e.g. ``("b", 3)``;
the eight classes are ``ap, am, a0, b, r, t, y, aux`` (written ``a^+``,
``a^-``, ``a^0`` etc. on paper).  A derivative of order ``k`` is the key
``(cls, idx, k)``, with ``k = 0`` denoting the indeterminate itself.  All
derivative keys are algebraically independent; the derivation raises ``k``
by one and kills rational constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .._kernel import mono_mul, terms_add, terms_derive, terms_mul, terms_neg, terms_scale, terms_sub

CLASSES = ("ap", "am", "a0", "b", "r", "t", "y", "aux")

Key = tuple  # (cls, idx, order)
Monomial = tuple  # sorted tuple of (Key, exp)

# exact rational coefficients: gmpy2.mpq when available (hash- and
# equality-compatible with Fraction), stdlib Fraction otherwise
try:
    from gmpy2 import mpq as RAT  # type: ignore[import-untyped]
except ImportError:  # pragma: no cover - exercised only without gmpy2
    RAT = Fraction

RATS = (int, Fraction) if RAT is Fraction else (int, Fraction, RAT)

NEG_INF = float("-inf")


def to_rat(c):
    """Normalize an external rational to the internal coefficient type."""
    if isinstance(c, int) or type(c) is RAT:
        return c
    return RAT(c)


@dataclass(frozen=True)
class DiffIndet:
    """A named differential indeterminate."""

    cls: str
    index: int

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise ValueError(f"unknown indeterminate class {self.cls!r}")
        if self.index < 0:
            raise ValueError("index must be non-negative")

    def __str__(self):
        return f"{self.cls}_{self.index}"


@dataclass(frozen=True)
class Derivative:
    """A derivative of an indeterminate; order 0 is the indeterminate."""

    indet: DiffIndet
    order: int

    def key(self) -> Key:
        return (self.indet.cls, self.indet.index, self.order)

    @staticmethod
    def from_key(key: Key) -> "Derivative":
        return Derivative(DiffIndet(key[0], key[1]), key[2])

    def __str__(self):
        return str(self.indet) + (f"^({self.order})" if self.order else "")





class DiffPoly:
    """Immutable sparse polynomial in derivative keys, coefficients in Q.

    Storage is canonical: no zero coefficients, monomials keyed uniquely, so
    structural equality is mathematical equality.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Rat]] = None):
        self.terms = dict(terms) if terms else {}
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "DiffPoly":
        return _ZERO

    @staticmethod
    def one() -> "DiffPoly":
        return _ONE

    @staticmethod
    def const(c) -> "DiffPoly":
        c = to_rat(c)
        if not isinstance(c, int) and c.denominator == 1:
            c = int(c)
        return DiffPoly({(): c}) if c else _ZERO

    @staticmethod
    def indet(cls: str, idx: int) -> "DiffPoly":
        return DiffPoly.deriv(cls, idx, 0)

    @staticmethod
    def deriv(cls: str, idx: int, order: int) -> "DiffPoly":
        if cls not in CLASSES:
            raise ValueError(f"unknown indeterminate class {cls!r}")
        return DiffPoly({(((cls, idx, order), 1),): 1})

    @staticmethod
    def from_derivative(d: Derivative) -> "DiffPoly":
        return DiffPoly({((d.key(), 1),): 1})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DiffPoly(terms_add(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DiffPoly(terms_sub(self.terms, other.terms))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DiffPoly(terms_sub(other.terms, self.terms))

    def __neg__(self):
        return DiffPoly(terms_neg(self.terms))

    def __mul__(self, other):
        if isinstance(other, DiffPoly):
            return DiffPoly(terms_mul(self.terms, other.terms))
        if isinstance(other, RATS):
            return DiffPoly(terms_scale(self.terms, to_rat(other)))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = _ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, RATS):
            if other == 0:
                raise ZeroDivisionError
            return DiffPoly(intify_terms(terms_scale(self.terms, RAT(1) / to_rat(other))))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, RATS):
            other = DiffPoly.const(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- differential structure --------------------------------------------

    def derivative(self, times: int = 1) -> "DiffPoly":
        if times < 0:
            raise ValueError("cannot integrate")
        t = self.terms
        for _ in range(times):
            t = terms_derive(t)
        return DiffPoly(t)

    # -- inspection ----------------------------------------------------------

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        c = self.terms.get((), 0)
        return Fraction(int(c.numerator), int(c.denominator)) if not isinstance(c, int) else Fraction(c)

    def keys(self) -> set:
        """All derivative keys occurring in the polynomial."""
        out = set()
        for mono in self.terms:
            for k, _ in mono:
                out.add(k)
        return out

    def indets(self) -> set:
        return {(k[0], k[1]) for k in self.keys()}

    def order_in(self, cls: str, idx: int):
        """Maximal derivative order of one indeterminate; -inf if absent."""
        best = NEG_INF
        for mono in self.terms:
            for (c, i, o), _ in mono:
                if c == cls and i == idx and o > best:
                    best = o
        return best

    def degree_in(self, key: Key) -> int:
        d = 0
        for mono in self.terms:
            for k, e in mono:
                if k == key and e > d:
                    d = e
        return d

    def contains_key(self, key: Key) -> bool:
        return any(k == key for mono in self.terms for k, _ in mono)

    def as_poly_in(self, key: Key) -> dict:
        """Split into {exponent of key: DiffPoly coefficient}."""
        buckets: dict = {}
        for mono, c in self.terms.items():
            e = 0
            rest = []
            for k, ee in mono:
                if k == key:
                    e = ee
                else:
                    rest.append((k, ee))
            b = buckets.setdefault(e, {})
            rest = tuple(rest)
            s = b.get(rest, 0) + c
            if s:
                b[rest] = s
            elif rest in b:
                del b[rest]
        return {e: DiffPoly(t) for e, t in buckets.items() if t}

    def coeff_of(self, key: Key, e: int) -> "DiffPoly":
        return self.as_poly_in(key).get(e, _ZERO)

    def partial(self, key: Key) -> "DiffPoly":
        """Formal partial derivative with respect to one derivative key."""
        out: dict = {}
        for mono, c in self.terms.items():
            for i, (k, e) in enumerate(mono):
                if k != key:
                    continue
                if e == 1:
                    rest = mono[:i] + mono[i + 1 :]
                else:
                    rest = mono[:i] + ((k, e - 1),) + mono[i + 1 :]
                out[rest] = out.get(rest, 0) + c * e
        return DiffPoly({m: c for m, c in out.items() if c})

    def total_degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self.terms), default=0)

    # -- substitution --------------------------------------------------------

    def subs_key(self, key: Key, value: "DiffPoly") -> "DiffPoly":
        """Replace every occurrence of one derivative key by a polynomial."""
        parts = self.as_poly_in(key)
        acc = _ZERO
        for e, coeff in parts.items():
            acc = acc + coeff * (value**e if e else _ONE)
        return acc

    def substitute(self, images: Mapping[tuple, "DiffPoly"]) -> "DiffPoly":
        """Differential substitution: indeterminate (cls, idx) -> polynomial.

        Images of derivatives are derivatives of images, so the map is a
        differential ring homomorphism.  Unmapped indeterminates are kept.
        """
        cache: dict = {}

        def image_of(key: Key) -> DiffPoly:
            if key in cache:
                return cache[key]
            base = images.get((key[0], key[1]))
            if base is None:
                val = DiffPoly({((key, 1),): 1})
            else:
                val = base.derivative(key[2]) if key[2] else base
            cache[key] = val
            return val

        acc = _ZERO
        for mono, c in self.terms.items():
            term = DiffPoly.const(c)
            for k, e in mono:
                term = term * image_of(k) ** e
            acc = acc + term
        return acc

    # -- display -------------------------------------------------------------

    def __repr__(self):
        from .grammar import poly_to_text

        return f"DiffPoly({poly_to_text(self)})"


def _coerce(x):
    if isinstance(x, DiffPoly):
        return x
    if isinstance(x, RATS):
        return DiffPoly.const(x)
    return NotImplemented


def intify_terms(terms: dict) -> dict:
    """Replace integer-valued rational coefficients by machine ints.

    Equal numbers hash equal, so the storage stays canonical; plain int
    arithmetic is much faster on the hot paths."""
    return {
        m: (c if isinstance(c, int) else (int(c.numerator) if c.denominator == 1 else c))
        for m, c in terms.items()
    }


_ZERO = DiffPoly({})
_ONE = DiffPoly({(): 1})


def monomial_order_key(mono: Monomial):
    """Admissible order used for exact division: total degree, then lex."""
    return (sum(e for _, e in mono), mono)


def leading_monomial(p: DiffPoly) -> Monomial:
    if not p.terms:
        raise ValueError("zero polynomial")
    return max(p.terms, key=monomial_order_key)


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    db = dict(b)
    return all(db.get(k, 0) >= e for k, e in a)


def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    db = dict(b)
    for k, e in a:
        db[k] -= e
        if not db[k]:
            del db[k]
    return tuple(sorted(db.items()))


def exact_divide(num: DiffPoly, den: DiffPoly) -> Optional[DiffPoly]:
    """Return num/den if den divides num exactly, else None."""
    if not den.terms:
        raise ZeroDivisionError
    if not num.terms:
        return _ZERO
    memo: dict = {}

    def key(m):
        v = memo.get(m)
        if v is None:
            v = (sum(e for _, e in m), m)
            memo[m] = v
        return v

    lm_d = max(den.terms, key=key)
    lc_d = den.terms[lm_d]
    dterms = list(den.terms.items())
    rem = dict(num.terms)
    quot: dict = {}
    while rem:
        lm_r = max(rem, key=key)
        if not _mono_divides(lm_d, lm_r):
            return None
        q_mono = _mono_div(lm_r, lm_d)
        q_coeff = RAT(rem[lm_r]) / lc_d
        quot[q_mono] = quot.get(q_mono, 0) + q_coeff
        for m, c in dterms:
            mm = mono_mul(m, q_mono)
            s = rem.get(mm, 0) - q_coeff * c
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return DiffPoly({m: c for m, c in quot.items() if c})
