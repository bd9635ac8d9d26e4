"""The bridge between partial-element classes and centers of group algebras.

xi(l', c; l) counts the windows of size l' that can carry a fixed group
element of class c inside {1..l}.  These counts tie the two families of
structure constants together: the diagonal identity expresses S in terms
of P through a unipotent triangular system, the map phi sends each
partial-element class to a compatible thread of class sums, and the
triangular shape makes phi injective with computable preimages.

The module also hosts the family audit: given a chain of groups selected
by a membership rule, it checks the unit, closure, and class-fusion
conditions that the whole construction rests on, by orbit enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from math import comb

from .center_algebra import s_constant
from .errors import InvalidLabel, LevelMismatch, ParseError
from .finite_group import FiniteGroup, builtin_group
from .partial_algebra import (
    AlgebraVector,
    OmegaLabel,
    PartialElement,
    enumerate_omega_class,
    p_constant,
    partial_str,
)
from .wreath import (
    ClassLabel,
    GroupElement,
    apply_perm_to_mask,
    check_budget,
    class_label_representative,
    d_type_membership,
    level_group,
    mask_str,
    support,
)


def xi_closed_form(lp: int, c: ClassLabel, l: int) -> int:
    """Number of windows of size lp with supp(h) <= window <= {1..l} for a
    fixed h of class c: zero unless alpha(c) <= lp <= l, else a binomial."""
    a = c.alpha
    if not a <= lp <= l:
        return 0
    return comb(l - a, lp - a)


def xi_count_oracle(
    lp: int, c: ClassLabel, l: int, F: FiniteGroup,
    budget: int | None = None, all_members: bool = False,
) -> int:
    """Count the windows by literal subset enumeration.

    With all_members=True the count is recomputed at every element of the
    class in F wr S_l (requires enumerating the level) and must agree.
    """
    if c.alpha > l or not 0 <= lp <= l:
        return 0

    def count_for(h: GroupElement) -> int:
        sup = support(h, F)
        total = 0
        for combo in itertools.combinations(range(l), lp):
            d = 0
            for j in combo:
                d |= 1 << j
            if sup & ~d == 0:
                total += 1
        return total

    if not all_members:
        return count_for(class_label_representative(c, F, l))
    G = level_group(F, l, budget)
    counts = {count_for(G.elements[i]) for i in G.by_label.get(c, ())}
    if len(counts) != 1:
        raise ArithmeticError(f"window count is not constant on class {c}")
    return counts.pop()


@dataclass(frozen=True)
class MainLemmaRecord:
    """One instance of the diagonal identity xi' xi'' S = sum_l xi P."""

    l1: int
    c1: ClassLabel
    l2: int
    c2: ClassLabel
    l: int
    c: ClassLabel
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def verify_main_lemma(
    l1: int, c1: ClassLabel, l2: int, c2: ClassLabel,
    l: int, c: ClassLabel, F: FiniteGroup, budget: int | None = None,
) -> MainLemmaRecord:
    """Check xi(l1,c1;l) xi(l2,c2;l) S(c1,c2,c;l) =
    sum over lt of xi(lt,c;l) P((l1,c1),(l2,c2),(lt,c)) as exact integers."""
    x1 = xi_closed_form(l1, c1, l)
    x2 = xi_closed_form(l2, c2, l)
    lhs = x1 * x2 * s_constant(c1, c2, c, l, F, budget) if x1 and x2 else 0
    rhs = 0
    if c1.alpha <= l1 and c2.alpha <= l2:
        w1 = OmegaLabel(l1, c1)
        w2 = OmegaLabel(l2, c2)
        for lt in range(max(l1, l2, c.alpha), min(l, l1 + l2) + 1):
            x = xi_closed_form(lt, c, l)
            if x:
                rhs += x * p_constant(w1, w2, OmegaLabel(lt, c), F, budget)
    return MainLemmaRecord(l1, c1, l2, c2, l, c, lhs, rhs)


@dataclass(frozen=True)
class RSystem:
    """The unipotent triangular system (1 + R) P = S on levels m..M.

    Row i corresponds to level levels[i]; r[i][j] = xi(levels[j], c; levels[i])
    below the diagonal and 0 elsewhere; svec[i] =
    xi(l1,c1;levels[i]) xi(l2,c2;levels[i]) S(c1,c2,c;levels[i]).
    """

    omega1: OmegaLabel
    omega2: OmegaLabel
    c: ClassLabel
    levels: tuple[int, ...]
    r: tuple[tuple[int, ...], ...]
    svec: tuple[int, ...]
    pvec: tuple[int, ...] | None = None

    @property
    def m(self) -> int:
        return self.levels[0]

    @property
    def M(self) -> int:
        return self.levels[-1]


def build_r_system(
    omega1: OmegaLabel, omega2: OmegaLabel, c: ClassLabel,
    F: FiniteGroup, budget: int | None = None,
) -> RSystem:
    m = max(omega1.l, omega2.l)
    M = omega1.l + omega2.l
    check_budget(F, M, budget)
    levels = tuple(range(m, M + 1))
    r = tuple(
        tuple(
            xi_closed_form(levels[j], c, levels[i]) if j < i else 0
            for j in range(len(levels))
        )
        for i in range(len(levels))
    )
    svec = tuple(
        xi_closed_form(omega1.l, omega1.c, l)
        * xi_closed_form(omega2.l, omega2.c, l)
        * s_constant(omega1.c, omega2.c, c, l, F, budget)
        for l in levels
    )
    return RSystem(omega1, omega2, c, levels, r, svec)


def solve_p_from_s(system: RSystem) -> RSystem:
    """Forward substitution: unipotent lower-triangular systems over the
    integers have a unique integer solution."""
    p: list[int] = []
    for i in range(len(system.levels)):
        acc = system.svec[i]
        for j in range(i):
            acc -= system.r[i][j] * p[j]
        p.append(acc)
    return replace(system, pvec=tuple(p))


@dataclass(frozen=True)
class InversionRecord:
    """Solved P values for one (omega1, omega2, c) against direct counts."""

    omega1: OmegaLabel
    omega2: OmegaLabel
    c: ClassLabel
    levels: tuple[int, ...]
    solved: tuple[int, ...]
    brute: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.solved == self.brute


def verify_inversion(
    omega1: OmegaLabel, omega2: OmegaLabel, c: ClassLabel,
    F: FiniteGroup, budget: int | None = None,
) -> InversionRecord:
    system = solve_p_from_s(build_r_system(omega1, omega2, c, F, budget))
    brute = tuple(
        p_constant(omega1, omega2, OmegaLabel(l, c), F, budget)
        if c.alpha <= l
        else 0
        for l in system.levels
    )
    return InversionRecord(
        omega1, omega2, c, system.levels, system.pvec, brute
    )


def phi(
    a: AlgebraVector, F: FiniteGroup, budget: int | None = None
) -> dict[int, AlgebraVector]:
    """Image of a truncated class-algebra vector: one center vector per
    level l <= a.level, with e[(l',c)] contributing xi(l',c;l) e[c(l)]."""
    N = a.level
    out: dict[int, dict[ClassLabel, int]] = {l: {} for l in range(N + 1)}
    for w, coef in a.terms:
        for l in range(w.l, N + 1):
            x = xi_closed_form(w.l, w.c, l)
            if x:
                out[l][w.c] = out[l].get(w.c, 0) + coef * x
    return {l: AlgebraVector.make(l, out[l]) for l in range(N + 1)}


def phi_oracle(
    omega: OmegaLabel, l: int, F: FiniteGroup, budget: int | None = None
) -> list[int]:
    """Literal image of the class sum of omega in the group algebra at level
    l: sum every partial element of the class with window inside {1..l},
    forgetting windows.  Returns the per-element tally."""
    G = level_group(F, l, budget)
    tally = [0] * G.order
    for p in enumerate_omega_class(omega, (1 << l) - 1, F, l, budget):
        tally[G.index[p.h]] += 1
    return tally


def phi_preimage(
    target_c: ClassLabel, target_l: int, N: int, F: FiniteGroup,
) -> AlgebraVector:
    """The unique truncated vector whose image is e[c(target_l)] at level
    target_l and zero at every other level <= N, by back substitution up
    the triangular column of c."""
    if target_c.alpha > target_l:
        raise InvalidLabel(
            f"class needs alpha={target_c.alpha} points, level is {target_l}"
        )
    if target_l > N:
        raise LevelMismatch(
            f"target level {target_l} exceeds truncation level {N}"
        )
    gamma: dict[int, int] = {target_l: 1}
    for j in range(target_l + 1, N + 1):
        gamma[j] = -sum(
            gamma[lp] * xi_closed_form(lp, target_c, j)
            for lp in range(target_l, j)
        )
    return AlgebraVector.make(
        N, {OmegaLabel(lp, target_c): g for lp, g in gamma.items()}
    )


# --- families and the admissibility audit ---

FAMILY_KINDS = ("symmetric", "wreath", "d_type")


@dataclass(frozen=True)
class FamilySpec:
    """A chain of groups: one group per window, cut out of F wr S_n by a
    membership rule.  kind selects the rule, base is F, name is the CLI
    spelling used in reports."""

    kind: str
    base: FiniteGroup
    name: str

    @classmethod
    def symmetric(cls) -> "FamilySpec":
        return cls("symmetric", builtin_group("trivial"), "sym")

    @classmethod
    def wreath(cls, base: FiniteGroup, name: str = "wreath") -> "FamilySpec":
        return cls("wreath", base, name)

    @classmethod
    def d_type(cls) -> "FamilySpec":
        return cls("d_type", builtin_group("cyclic(2)"), "dtype")

    def admits(self, a: GroupElement) -> bool:
        """Membership rule applied to an element of F wr S_n."""
        if self.kind == "d_type":
            return d_type_membership(a, self.base)
        return True


def parse_family(text: str, group: FiniteGroup | None = None) -> FamilySpec:
    """CLI family grammar: sym | dtype | wreath:<builtin> | wreath (with a
    user group supplied separately)."""
    s = text.strip().lower()
    if s in ("sym", "symmetric"):
        return FamilySpec.symmetric()
    if s in ("dtype", "d_type"):
        return FamilySpec.d_type()
    if s == "wreath":
        if group is None:
            raise ParseError(
                "family 'wreath' needs a base group; pass wreath:<builtin> "
                "or supply a group file"
            )
        return FamilySpec.wreath(group, "wreath:file")
    if s.startswith("wreath:"):
        base_name = s.split(":", 1)[1]
        if base_name == "file":
            if group is None:
                raise ParseError("family 'wreath:file' needs a group file")
            return FamilySpec.wreath(group, "wreath:file")
        return FamilySpec.wreath(builtin_group(base_name), f"wreath:{base_name}")
    raise ParseError(f"unknown family {text!r}")


@dataclass(frozen=True)
class AuditWitness:
    """Two partial elements conjugate over the full window but not inside
    their own window."""

    window: int
    p1: PartialElement
    p2: PartialElement

    def display(self, F: FiniteGroup) -> str:
        return (
            f"window {mask_str(self.window)}: {partial_str(self.p1, F)} and "
            f"{partial_str(self.p2, F)} are conjugate at the top level but "
            f"not within the window"
        )


@dataclass(frozen=True)
class AuditReport:
    """Outcome of the finite-level admissibility audit of a family."""

    family: str
    kind: str
    level: int
    unit_ok: bool
    closure_ok: bool
    fusion_ok: bool
    witness: AuditWitness | None
    group_size: int
    partial_count: int
    windows_checked: int
    pairs_checked: int
    notes: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.unit_ok and self.closure_ok and self.fusion_ok


_AUDIT_NOTES = (
    "finiteness of each window group holds by construction here",
    "the separation property quantifies over all window sizes and is not "
    "decidable from a single finite level, so it is not checked",
)


def admissibility_audit(
    spec: FamilySpec, N: int, budget: int | None = None
) -> AuditReport:
    """Check the unit, closure, and class-fusion conditions for the family
    at level N by explicit orbit enumeration.

    Fusion means: partial elements with the same window that are conjugate
    under the top-level group must already be conjugate under the window's
    own group.  The first violating pair in canonical order is reported.
    """
    F = spec.base
    G = level_group(F, N, budget)
    admits = [spec.admits(a) for a in G.elements]
    full = (1 << N) - 1
    windows = sorted(range(full + 1), key=lambda m: (bin(m).count("1"), m))

    members: dict[int, list[int]] = {
        w: [i for i in range(G.order) if admits[i] and G.sup[i] & ~w == 0]
        for w in windows
    }

    unit_ok = members[0] == [G.identity]

    closure_ok = True
    for w in windows:
        ms = members[w]
        mset = set(ms)
        if G.identity not in mset:
            closure_ok = False
            break
        if any(G.inv[i] not in mset for i in ms) or any(
            G.mul(i, j) not in mset for i in ms for j in ms
        ):
            closure_ok = False
            break

    # partial elements of the family, canonical order
    pes: list[tuple[int, int]] = [
        (w, i) for w in windows for i in members[w]
    ]
    pe_index = {p: k for k, p in enumerate(pes)}

    # orbits under the top-level family group
    top = members[full]
    orbit_of = [-1] * len(pes)
    n_orbits = 0
    for start in range(len(pes)):
        if orbit_of[start] != -1:
            continue
        oid = n_orbits
        n_orbits += 1
        orbit_of[start] = oid
        stack = [start]
        while stack:
            k = stack.pop()
            d, i = pes[k]
            for g in top:
                q = (
                    apply_perm_to_mask(G.elements[g].perm, d),
                    G.conj(g, i),
                )
                kq = pe_index[q]
                if orbit_of[kq] == -1:
                    orbit_of[kq] = oid
                    stack.append(kq)

    fusion_ok = True
    witness = None
    pairs_checked = 0
    for w in windows:
        if not fusion_ok:
            break
        inside = [k for k, (d, _) in enumerate(pes) if d & ~w == 0]
        # orbits under the window's own group
        sub_of: dict[int, int] = {}
        n_sub = 0
        for start in inside:
            if start in sub_of:
                continue
            sid = n_sub
            n_sub += 1
            sub_of[start] = sid
            stack = [start]
            while stack:
                k = stack.pop()
                d, i = pes[k]
                for g in members[w]:
                    q = (
                        apply_perm_to_mask(G.elements[g].perm, d),
                        G.conj(g, i),
                    )
                    kq = pe_index[q]
                    if kq not in sub_of:
                        sub_of[kq] = sid
                        stack.append(kq)
        for a_pos, k1 in enumerate(inside):
            if not fusion_ok:
                break
            for k2 in inside[a_pos + 1:]:
                pairs_checked += 1
                if orbit_of[k1] == orbit_of[k2] and sub_of[k1] != sub_of[k2]:
                    d1, i1 = pes[k1]
                    d2, i2 = pes[k2]
                    witness = AuditWitness(
                        w,
                        PartialElement(d1, G.elements[i1]),
                        PartialElement(d2, G.elements[i2]),
                    )
                    fusion_ok = False
                    break

    return AuditReport(
        family=spec.name,
        kind=spec.kind,
        level=N,
        unit_ok=unit_ok,
        closure_ok=closure_ok,
        fusion_ok=fusion_ok,
        witness=witness,
        group_size=len(top),
        partial_count=len(pes),
        windows_checked=len(windows),
        pairs_checked=pairs_checked,
        notes=_AUDIT_NOTES,
    )
