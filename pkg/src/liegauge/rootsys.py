"""Root systems of the classical families A, B, C, D and their Weyl groups.

Roots are stored as integer coefficient vectors over the simple roots;
euclidean realizations are used only during construction.  Signed 1-based
indices name the roots: ``+i`` is the i-th positive root, ``-i`` its
negative.  Positive roots are enumerated simple roots first, then by
non-decreasing height with lexicographic tie-break on the coefficient
vector.

The Cartan pairing convention is ``<a, b> = 2(a,b)/(a,a)``, i.e. the value
of ``b`` on the coroot of ``a``; the Cartan matrix entry ``(i, j)`` is
``<alpha_i, alpha_j>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .linalg import solve_exact

FAMILIES = ("A", "B", "C", "D")

Coords = Tuple[int, ...]


def _euclidean_roots(family: str, l: int):
    if family == "A":
        dim = l + 1
        e = lambda i: tuple(Fraction(1) if k == i else Fraction(0) for k in range(dim))
        simple = [tuple(a - b for a, b in zip(e(i), e(i + 1))) for i in range(l)]
        pos = [tuple(a - b for a, b in zip(e(i), e(j))) for i in range(dim) for j in range(dim) if i < j]
        return pos, simple
    dim = l
    e = lambda i: tuple(Fraction(1) if k == i else Fraction(0) for k in range(dim))

    def comb(u, v, s):
        return tuple(a + s * b for a, b in zip(u, v))

    pos = []
    for i, j in combinations(range(l), 2):
        pos.append(comb(e(i), e(j), -1))
        pos.append(comb(e(i), e(j), 1))
    simple = [comb(e(i), e(i + 1), -1) for i in range(l - 1)]
    if family == "B":
        pos += [e(i) for i in range(l)]
        simple.append(e(l - 1))
    elif family == "C":
        pos += [tuple(2 * x for x in e(i)) for i in range(l)]
        simple.append(tuple(2 * x for x in e(l - 1)))
    elif family == "D":
        simple.append(comb(e(l - 2), e(l - 1), 1))
    return pos, simple


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    roots: Tuple[Coords, ...]  # positive roots then negatives, same order
    heights: Tuple[int, ...]  # heights of the positive roots
    cartan: Tuple[Tuple[int, ...], ...]
    positive_count: int
    gram: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)  # simple-root Gram matrix

    # -- indexing ------------------------------------------------------------

    def coord(self, i: int) -> Coords:
        """Coefficient vector of the root with signed index i."""
        if i > 0:
            return self.roots[i - 1]
        return tuple(-x for x in self.roots[-i - 1])

    def index_of(self, coords: Coords) -> int:
        try:
            return self._index[tuple(coords)]
        except KeyError:
            raise KeyError(f"not a root: {coords}") from None

    @property
    def _index(self) -> Dict[Coords, int]:
        idx = getattr(self, "_index_cache", None)
        if idx is None:
            idx = {}
            for k, c in enumerate(self.roots[: self.positive_count]):
                idx[c] = k + 1
                idx[tuple(-x for x in c)] = -(k + 1)
            object.__setattr__(self, "_index_cache", idx)
        return idx

    def is_root(self, coords: Coords) -> bool:
        return tuple(coords) in self._index

    def height(self, i: int) -> int:
        return sum(self.coord(i))

    def all_indices(self):
        m = self.positive_count
        return list(range(1, m + 1)) + list(range(-1, -m - 1, -1))

    # -- geometry --------------------------------------------------------------

    def inner(self, a: Coords, b: Coords) -> Fraction:
        l = self.rank
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(l) for j in range(l))

    def pairing(self, a: Coords, b: Coords) -> int:
        """Cartan integer <a, b> = 2(a,b)/(a,a)."""
        v = 2 * self.inner(a, b) / self.inner(a, a)
        if v.denominator != 1:
            raise ValueError("pairing is not an integer")
        return int(v)

    def reflect(self, i: int, coords: Coords) -> Coords:
        """Simple reflection s_i acting on a coefficient vector."""
        k = sum(self.cartan[i - 1][j] * coords[j] for j in range(self.rank))
        return tuple(c - (k if j == i - 1 else 0) for j, c in enumerate(coords))


def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct the root system of one classical family at a given rank."""
    if family not in FAMILIES:
        raise ValueError(f"unsupported family {family!r}; expected one of {FAMILIES}")
    minimal = {"A": 1, "B": 2, "C": 2, "D": 3}[family]
    if rank < minimal:
        raise ValueError(f"family {family} requires rank >= {minimal}")

    pos_euc, simple_euc = _euclidean_roots(family, rank)
    l = rank
    gram = tuple(
        tuple(sum(a * b for a, b in zip(simple_euc[i], simple_euc[j])) for j in range(l))
        for i in range(l)
    )
    coords: List[Coords] = []
    for root in pos_euc:
        rhs = [sum(a * b for a, b in zip(simple_euc[i], root)) for i in range(l)]
        c = solve_exact([list(r) for r in gram], rhs)
        if any(x.denominator != 1 for x in c):
            raise AssertionError("root is not an integer combination of simple roots")
        coords.append(tuple(int(x) for x in c))

    unit = [tuple(1 if k == i else 0 for k in range(l)) for i in range(l)]
    rest = sorted((c for c in coords if sum(c) > 1), key=lambda c: (sum(c), c))
    ordered = unit + rest
    if len(ordered) != len(coords):
        raise AssertionError("simple root enumeration mismatch")
    heights = tuple(sum(c) for c in ordered)

    cartan_rows = []
    for i in range(l):
        row = []
        for j in range(l):
            v = 2 * gram[i][j] / gram[i][i]
            if v.denominator != 1:
                raise AssertionError("non-integer Cartan entry")
            row.append(int(v))
        cartan_rows.append(tuple(row))

    roots = tuple(ordered) + tuple(tuple(-x for x in c) for c in ordered)
    m = len(ordered)
    expected_m = {"A": l * (l + 1) // 2, "B": l * l, "C": l * l, "D": l * (l - 1)}[family]
    if m != expected_m:
        raise AssertionError(f"positive root count {m} != {expected_m}")
    return RootSystem(family, rank, roots, heights, tuple(cartan_rows), m, gram)


# ---------------------------------------------------------------- Weyl group

Action = Dict[int, int]


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as a (word, action) pair.

    The action maps signed root indices to signed root indices; words are
    not canonical, so equality compares actions.
    """

    rs: RootSystem
    word: Tuple[int, ...]
    action: Tuple[Tuple[int, int], ...]  # sorted items of the action map

    @property
    def action_map(self) -> Action:
        return dict(self.action)

    def __call__(self, i: int) -> int:
        return self.action_map[i]

    def length(self) -> int:
        act = self.action_map
        return sum(1 for i in range(1, self.rs.positive_count + 1) if act[i] < 0)

    def inverse(self) -> "WeylElement":
        inv = {v: k for k, v in self.action_map.items()}
        return WeylElement(self.rs, tuple(reversed(self.word)), tuple(sorted(inv.items())))

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self after other (matching word concatenation self.word + other.word)."""
        a, b = self.action_map, other.action_map
        return WeylElement(self.rs, self.word + other.word, tuple(sorted((i, a[b[i]]) for i in b)))

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.action)

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.rs is other.rs and self.action == other.action

    def __hash__(self):
        return hash(self.action)


def _action_from_coords_map(rs: RootSystem, fn) -> Tuple[Tuple[int, int], ...]:
    act = {}
    for i in rs.all_indices():
        act[i] = rs.index_of(fn(rs.coord(i)))
    return tuple(sorted(act.items()))


def weyl_from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    """Product of simple reflections, applied right to left on roots."""
    for i in word:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"reflection index {i} out of range 1..{rs.rank}")

    def fn(coords):
        for i in reversed(word):
            coords = rs.reflect(i, coords)
        return coords

    return WeylElement(rs, tuple(word), _action_from_coords_map(rs, fn))


def identity_element(rs: RootSystem) -> WeylElement:
    return weyl_from_word(rs, ())


def longest_element(rs: RootSystem) -> WeylElement:
    """The unique element of maximal length (maps all positives to negatives).

    Built greedily: append s_i for the least simple index still sent to a
    positive root; each step increases the length by one.
    """
    word: List[int] = []
    w = identity_element(rs)
    while True:
        act = w.action_map
        i = next((i for i in range(1, rs.rank + 1) if act[i] > 0), None)
        if i is None:
            break
        word.append(i)
        w = weyl_from_word(rs, word)
    if w.length() != rs.positive_count:
        raise AssertionError("longest element search failed")
    return w


def word_from_action(rs: RootSystem, action: Action) -> Tuple[int, ...]:
    """Recover a reduced word from an action on roots."""
    act = dict(action)
    word: List[int] = []
    while any(act[i] != i for i in rs.all_indices()):
        i = next((i for i in range(1, rs.rank + 1) if act[i] < 0), None)
        if i is None:
            raise ValueError("action is not induced by a Weyl group element")
        # replace w by w*s_i (shorter), recording s_i on the right of the word
        s = weyl_from_word(rs, (i,)).action_map
        act = {j: act[s[j]] for j in rs.all_indices()}
        word.append(i)
    word.reverse()
    return tuple(word)


def is_resolving(rs: RootSystem, w: WeylElement):
    """Decide the resolving property.

    Returns ``(flag, psi)`` where psi = w^{-1}(positive non-simple roots) as a
    frozen set of signed indices whenever that set consists of negative roots
    (condition A), and None otherwise.  The flag additionally requires
    condition B: psi is contained in w(Phi+) intersect Phi-.
    """
    inv = w.inverse().action_map
    candidate = frozenset(inv[i] for i in range(rs.rank + 1, rs.positive_count + 1))
    if any(i > 0 for i in candidate):
        return False, None
    act = w.action_map
    image_neg = {act[i] for i in range(1, rs.positive_count + 1) if act[i] < 0}
    return candidate <= image_neg, candidate


def intersection_indices(rs: RootSystem, w: WeylElement) -> Tuple[int, ...]:
    """Positive indices i with -alpha_i in w(Phi+) (ascending)."""
    act = w.action_map
    return tuple(sorted(-act[i] for i in range(1, rs.positive_count + 1) if act[i] < 0))


def psi_indices(rs: RootSystem, w: WeylElement) -> Tuple[int, ...]:
    """Positive indices i with -alpha_i in psi = w^{-1}(Phi+ minus Delta), ascending."""
    flag, psi = is_resolving(rs, w)
    if psi is None:
        raise ValueError("w does not satisfy condition A")
    return tuple(sorted(-i for i in psi))


def weyl_action_from_matrix(rep_matrix, rs: RootSystem, rep) -> WeylElement:
    """Root permutation induced by conjugation with a torus-normalizing matrix.

    ``rep`` must be a LieRepresentation over the same root system.  Signs of
    the conjugated root vectors are discarded; the matrix must send every
    root space onto a single root space, otherwise a ValueError is raised.
    """
    from .linalg import Mat, inverse_rational

    M = Mat(rep_matrix)
    Mi = Mat(inverse_rational(rep_matrix))
    act = {}
    for i in rs.all_indices():
        conj = M @ rep.basis[("x", i)] @ Mi
        coords = rep.extract(conj)
        support = [lab for lab, v in coords.items() if v != 0]
        if len(support) != 1 or support[0][0] != "x":
            raise ValueError(f"matrix does not normalize the torus: image of root {i} "
                             f"is not supported on a single root space")
        act[i] = support[0][1]
    if sorted(act.values()) != sorted(act.keys()):
        raise ValueError("induced map is not a bijection on roots")
    word = word_from_action(rs, act)
    return WeylElement(rs, word, tuple(sorted(act.items())))
