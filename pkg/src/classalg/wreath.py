"""Wreath products F wr S_n: elements, conjugacy-class labels, level groups.

An element is a permutation of {0..n-1} together with one F-element per
point.  The product convention is fixed once here and used everywhere:

    (a * b).perm = a.perm o b.perm          (apply b first)
    (a * b).deco[i] = a.deco[i] * b.deco[a.perm^-1(i)]

Conjugacy classes are labeled by the multiset of (cycle length, F-class of
the cycle product), with (1, identity-class) pairs dropped.  That this is a
complete invariant is checked against brute-force conjugation orbits in the
test suite, never assumed.
"""

from __future__ import annotations

import itertools
import re
from array import array
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .errors import (
    BudgetExceeded,
    InvalidLabel,
    LevelMismatch,
    ParseError,
    WrongBaseGroup,
)
from .finite_group import FiniteGroup

DEFAULT_ELEMENT_BUDGET = 10_000_000
_TABLE_LIMIT = 2048


def group_order(F: FiniteGroup, n: int) -> int:
    """|F wr S_n| = |F|^n * n!."""
    return F.order**n * factorial(n)


def check_budget(F: FiniteGroup, n: int, budget: int | None) -> None:
    limit = DEFAULT_ELEMENT_BUDGET if budget is None else budget
    size = group_order(F, n)
    if size > limit:
        raise BudgetExceeded(
            f"level {n} over base of order {F.order} has {size} elements, "
            f"budget is {limit}"
        )


# --- support-set bitmask helpers (bit j <-> point j, displayed 1-based) ---

def mask_points(mask: int) -> tuple[int, ...]:
    return tuple(j for j in range(mask.bit_length()) if mask >> j & 1)


def mask_str(mask: int) -> str:
    return "{" + ",".join(str(j + 1) for j in mask_points(mask)) + "}"


def apply_perm_to_mask(perm: tuple[int, ...], mask: int) -> int:
    out = 0
    for j in mask_points(mask):
        out |= 1 << perm[j]
    return out


@dataclass(frozen=True)
class GroupElement:
    """Element of F wr S_n: perm[i] is the image of point i, deco[i] in F."""

    n: int
    perm: tuple[int, ...]
    deco: tuple[int, ...]

    def sort_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.perm, self.deco)


def identity_element(F: FiniteGroup, n: int) -> GroupElement:
    return GroupElement(n, tuple(range(n)), (F.identity,) * n)


def multiply(a: GroupElement, b: GroupElement, F: FiniteGroup) -> GroupElement:
    if a.n != b.n:
        raise LevelMismatch(f"levels differ: {a.n} != {b.n}")
    ap, ad, bp, bd = a.perm, a.deco, b.perm, b.deco
    mult = F.mult
    perm = tuple(ap[bp[i]] for i in range(a.n))
    deco = [0] * a.n
    for j in range(a.n):
        i = ap[j]
        deco[i] = mult[ad[i]][bd[j]]
    return GroupElement(a.n, perm, tuple(deco))


def inverse(a: GroupElement, F: FiniteGroup) -> GroupElement:
    perm = [0] * a.n
    deco = [0] * a.n
    for j in range(a.n):
        perm[a.perm[j]] = j
        deco[j] = F.inv[a.deco[a.perm[j]]]
    return GroupElement(a.n, tuple(perm), tuple(deco))


def conjugate(g: GroupElement, a: GroupElement, F: FiniteGroup) -> GroupElement:
    """g a g^-1."""
    return multiply(multiply(g, a, F), inverse(g, F), F)


def support(a: GroupElement, F: FiniteGroup) -> int:
    """Bitmask of points that are moved or carry a nontrivial decoration."""
    out = 0
    for j in range(a.n):
        if a.perm[j] != j or a.deco[j] != F.identity:
            out |= 1 << j
    return out


def promote(a: GroupElement, m: int, F: FiniteGroup) -> GroupElement:
    """Reinterpret a at a higher level, fixing and leaving blank the new points."""
    if m < a.n:
        raise LevelMismatch(f"cannot demote element from level {a.n} to {m}")
    perm = a.perm + tuple(range(a.n, m))
    deco = a.deco + (F.identity,) * (m - a.n)
    return GroupElement(m, perm, deco)


def element_str(a: GroupElement, F: FiniteGroup) -> str:
    seen = [False] * a.n
    parts = []
    for start in range(a.n):
        if seen[start] or a.perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = a.perm[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = a.perm[j]
        parts.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
    cycles = "".join(parts) or "e"
    return f"({cycles}; {','.join(F.names[d] for d in a.deco)})"


def d_type_membership(a: GroupElement, F: FiniteGroup) -> bool:
    """Whether a lies in the even-decoration subgroup of Z/2 wr S_n."""
    if F.order != 2:
        raise WrongBaseGroup(f"needs a base group of order 2, got order {F.order}")
    return sum(1 for d in a.deco if d != F.identity) % 2 == 0


# --- conjugacy-class labels ---

@dataclass(frozen=True)
class ClassLabel:
    """Multiset of (cycle length, F-class index) pairs, canonically sorted.

    Pairs are ordered by length descending, then F-class ascending; pairs
    (1, 0) are never stored.  alpha is the number of points the class
    genuinely occupies.
    """

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(
        cls, pairs, F: FiniteGroup | None = None
    ) -> "ClassLabel":
        kept = []
        for ln, k in pairs:
            if ln < 1:
                raise InvalidLabel(f"cycle length must be >= 1, got {ln}")
            if k < 0 or (F is not None and k >= F.num_classes):
                raise InvalidLabel(f"F-class index {k} out of range")
            if (ln, k) != (1, 0):
                kept.append((ln, k))
        kept.sort(key=lambda p: (-p[0], p[1]))
        return cls(tuple(kept))

    @classmethod
    def from_partition(cls, parts) -> "ClassLabel":
        return cls.from_pairs((p, 0) for p in parts)

    @property
    def alpha(self) -> int:
        return sum(ln for ln, _ in self.pairs)

    def sort_key(self):
        return (self.alpha, self.pairs)

    def display(self, F: FiniteGroup) -> str:
        if F.order == 1:
            return "[" + ",".join(str(ln) for ln, _ in self.pairs) + "]"
        return "[" + ",".join(f"({ln},{k})" for ln, k in self.pairs) + "]"

    @staticmethod
    def parse(text: str, F: FiniteGroup) -> "ClassLabel":
        s = re.sub(r"\s+", "", text)
        if not (s.startswith("[") and s.endswith("]")):
            raise ParseError(f"class label must be bracketed: {text!r}")
        inner = s[1:-1]
        if not inner:
            return ClassLabel(())
        if inner.startswith("("):
            if not re.fullmatch(r"\(\d+,\d+\)(?:,\(\d+,\d+\))*", inner):
                raise ParseError(f"bad class label syntax: {text!r}")
            pairs = [
                (int(a), int(b)) for a, b in re.findall(r"\((\d+),(\d+)\)", inner)
            ]
        else:
            if not re.fullmatch(r"\d+(?:,\d+)*", inner):
                raise ParseError(f"bad class label syntax: {text!r}")
            pairs = [(int(p), 0) for p in inner.split(",")]
        try:
            return ClassLabel.from_pairs(pairs, F)
        except InvalidLabel as exc:
            raise ParseError(f"invalid class label {text!r}: {exc}") from None


def class_label(a: GroupElement, F: FiniteGroup) -> ClassLabel:
    """Label of the conjugacy class of a in F wr S_n."""
    seen = [False] * a.n
    pairs = []
    for start in range(a.n):
        if seen[start]:
            continue
        pts = [start]
        seen[start] = True
        j = a.perm[start]
        while j != start:
            pts.append(j)
            seen[j] = True
            j = a.perm[j]
        acc = a.deco[pts[0]]
        for p in pts[1:]:
            acc = F.mult[a.deco[p]][acc]
        pairs.append((len(pts), F.class_of[acc]))
    return ClassLabel.from_pairs(pairs)


def class_label_representative(c: ClassLabel, F: FiniteGroup, n: int) -> GroupElement:
    """An element of F wr S_n with label c: packed cycles on the lowest points,
    one class representative decorating each cycle's minimal point."""
    if c.alpha > n:
        raise InvalidLabel(f"label needs {c.alpha} points, level is {n}")
    perm = list(range(n))
    deco = [F.identity] * n
    pos = 0
    for ln, k in c.pairs:
        for p in range(pos, pos + ln - 1):
            perm[p] = p + 1
        perm[pos + ln - 1] = pos
        deco[pos] = F.class_reps[k]
        pos += ln
    return GroupElement(n, tuple(perm), tuple(deco))


@lru_cache(maxsize=None)
def labels_with_alpha_up_to(m: int, F: FiniteGroup) -> tuple[ClassLabel, ...]:
    """All class labels with alpha <= m, in canonical label order."""
    kinds = [
        (ln, k)
        for ln in range(1, m + 1)
        for k in range(F.num_classes)
        if (ln, k) != (1, 0)
    ]
    out: list[ClassLabel] = []

    def rec(i: int, room: int, acc: list[tuple[int, int]]) -> None:
        if i == len(kinds):
            out.append(ClassLabel.from_pairs(acc))
            return
        ln, k = kinds[i]
        for cnt in range(room // ln + 1):
            rec(i + 1, room - cnt * ln, acc + [(ln, k)] * cnt)

    rec(0, m, [])
    return tuple(sorted(set(out), key=ClassLabel.sort_key))


def enumerate_elements(F: FiniteGroup, n: int, budget: int | None = None):
    """Yield all of F wr S_n in canonical order: perm lex, then deco lex."""
    check_budget(F, n, budget)
    for perm in itertools.permutations(range(n)):
        for deco in itertools.product(range(F.order), repeat=n):
            yield GroupElement(n, perm, deco)


class LevelGroup:
    """F wr S_n fully enumerated, with index-based products and class data.

    elements is the canonical ordering; index maps each element back.  A
    flat multiplication table is built lazily and only for small orders,
    so label-only uses never pay for it.
    """

    def __init__(self, F: FiniteGroup, n: int):
        self.F = F
        self.n = n
        self.elements: tuple[GroupElement, ...] = tuple(
            enumerate_elements(F, n, budget=group_order(F, n))
        )
        self.order = len(self.elements)
        self.index: dict[GroupElement, int] = {
            a: i for i, a in enumerate(self.elements)
        }
        self.identity = self.index[identity_element(F, n)]
        self.inv: tuple[int, ...] = tuple(
            self.index[inverse(a, F)] for a in self.elements
        )
        self.sup: tuple[int, ...] = tuple(support(a, F) for a in self.elements)
        self.label: tuple[ClassLabel, ...] = tuple(
            class_label(a, F) for a in self.elements
        )
        by: dict[ClassLabel, list[int]] = {}
        for i, lab in enumerate(self.label):
            by.setdefault(lab, []).append(i)
        self.by_label: dict[ClassLabel, tuple[int, ...]] = {
            lab: tuple(ids) for lab, ids in by.items()
        }
        self._table: array | None = None

    def _ensure_table(self) -> None:
        if self._table is None and self.order <= _TABLE_LIMIT:
            m = self.order
            tab = array("i", bytes(4 * m * m))
            F, idx, els = self.F, self.index, self.elements
            for i, a in enumerate(els):
                row = i * m
                for j, b in enumerate(els):
                    tab[row + j] = idx[multiply(a, b, F)]
            self._table = tab

    def mul(self, i: int, j: int) -> int:
        self._ensure_table()
        if self._table is not None:
            return self._table[i * self.order + j]
        return self.index[multiply(self.elements[i], self.elements[j], self.F)]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1 by index."""
        return self.mul(self.mul(g, x), self.inv[g])


@lru_cache(maxsize=None)
def _level_group_cached(F: FiniteGroup, n: int) -> LevelGroup:
    return LevelGroup(F, n)


def level_group(F: FiniteGroup, n: int, budget: int | None = None) -> LevelGroup:
    check_budget(F, n, budget)
    return _level_group_cached(F, n)


def conjugation_orbits(
    F: FiniteGroup, n: int, budget: int | None = None
) -> list[tuple[int, ...]]:
    """Conjugacy classes of F wr S_n as orbits of element indices.

    Pure orbit enumeration, independent of class_label; this is the oracle
    the label invariant is tested against.
    """
    G = level_group(F, n, budget)
    orbit_of = [-1] * G.order
    orbits: list[tuple[int, ...]] = []
    for x in range(G.order):
        if orbit_of[x] != -1:
            continue
        oid = len(orbits)
        members = [x]
        orbit_of[x] = oid
        stack = [x]
        while stack:
            y = stack.pop()
            for g in range(G.order):
                z = G.conj(g, y)
                if orbit_of[z] == -1:
                    orbit_of[z] = oid
                    members.append(z)
                    stack.append(z)
        orbits.append(tuple(sorted(members)))
    return orbits
