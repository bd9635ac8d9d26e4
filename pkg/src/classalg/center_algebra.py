"""Centers of the group algebras of F wr S_l: class sums and their products.

The center at level l has the class sums as a basis, indexed by class
labels with alpha <= l.  Structure constants S are computed by fixing one
element of the target class and counting ordered factorizations into the
two given classes; correctness against literal class-sum multiplication is
part of the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidLabel, LevelMismatch
from .finite_group import FiniteGroup
from .partial_algebra import AlgebraVector
from .wreath import (
    ClassLabel,
    check_budget,
    group_order,
    labels_with_alpha_up_to,
    level_group,
)


@dataclass(frozen=True)
class CenterBasisLabel:
    """A class sum c(l): class label c realized in the group at level l."""

    l: int
    c: ClassLabel

    def __post_init__(self):
        if self.l < 0 or self.c.alpha > self.l:
            raise InvalidLabel(
                f"class needs alpha={self.c.alpha} points, level is {self.l}"
            )

    def sort_key(self):
        return (self.l, self.c.sort_key())

    def display(self, F: FiniteGroup) -> str:
        return f"{self.c.display(F)}({self.l})"


def center_basis(l: int, F: FiniteGroup) -> list[CenterBasisLabel]:
    """Class sums spanning the center at level l, in canonical label order."""
    return [CenterBasisLabel(l, c) for c in labels_with_alpha_up_to(l, F)]


def class_size(c: ClassLabel, l: int, F: FiniteGroup,
               budget: int | None = None) -> int:
    """|c(l)|, the number of elements of F wr S_l with label c (0 if alpha > l)."""
    if c.alpha > l:
        return 0
    G = level_group(F, l, budget)
    return len(G.by_label.get(c, ()))


@lru_cache(maxsize=None)
def _s_constant(
    c1: ClassLabel, c2: ClassLabel, c: ClassLabel, l: int, F: FiniteGroup
) -> int:
    G = level_group(F, l, budget=group_order(F, l))
    ids = G.by_label.get(c)
    if not ids:
        return 0
    h = ids[0]
    ids1 = G.by_label.get(c1, ())
    total = 0
    for i in ids1:
        if G.label[G.mul(G.inv[i], h)] == c2:
            total += 1
    return total


def s_constant(
    c1: ClassLabel, c2: ClassLabel, c: ClassLabel, l: int, F: FiniteGroup,
    budget: int | None = None,
) -> int:
    """Coefficient of the class sum c(l) in the product c1(l) * c2(l).

    Zero whenever any of the classes is not realized at level l.
    """
    if c1.alpha > l or c2.alpha > l or c.alpha > l:
        return 0
    check_budget(F, l, budget)
    return _s_constant(c1, c2, c, l, F)


def center_basis_vector(c: ClassLabel, l: int) -> AlgebraVector:
    return AlgebraVector.make(l, {c: 1})


def center_unit(l: int) -> AlgebraVector:
    return center_basis_vector(ClassLabel(()), l)


def center_product(
    a: AlgebraVector, b: AlgebraVector, F: FiniteGroup,
    budget: int | None = None,
) -> AlgebraVector:
    """Product of center vectors at a common level l, expanded in class sums."""
    if a.level != b.level:
        raise LevelMismatch(f"levels differ: {a.level} != {b.level}")
    l = a.level
    out: dict[ClassLabel, int] = {}
    for c1, x in a.terms:
        for c2, y in b.terms:
            for c in labels_with_alpha_up_to(l, F):
                S = s_constant(c1, c2, c, l, F, budget)
                if S:
                    out[c] = out.get(c, 0) + x * y * S
    return AlgebraVector.make(l, out)


def center_product_oracle(
    c1: ClassLabel, c2: ClassLabel, l: int, F: FiniteGroup,
    budget: int | None = None,
) -> dict[ClassLabel, int]:
    """Literal class-sum multiplication in the group algebra at level l,
    tallied elementwise and reduced to per-class coefficients."""
    G = level_group(F, l, budget)
    ids1 = G.by_label.get(c1, ())
    ids2 = G.by_label.get(c2, ())
    tally = [0] * G.order
    for i in ids1:
        for j in ids2:
            tally[G.mul(i, j)] += 1
    out: dict[ClassLabel, int] = {}
    for lab, ids in G.by_label.items():
        vals = {tally[i] for i in ids}
        if len(vals) != 1:
            raise ArithmeticError(
                f"class-sum product is not constant on class {lab}"
            )
        v = vals.pop()
        if v:
            out[lab] = v
    return out
