"""Finite base groups given by explicit multiplication tables.

A base group is a table-defined finite group F together with its
conjugacy-class data.  Elements are the indices 0..order-1.  Everything
downstream (wreath products, class labels, structure constants) consumes
an F through this interface, so user-supplied groups and builtins behave
identically.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    ParseError,
    UnknownBuiltin,
)

DEFAULT_MAX_ORDER = 24


@dataclass(frozen=True)
class FiniteGroup:
    """A validated finite group on element indices 0..order-1.

    class_of[x] is the conjugacy-class index of x; class 0 is the class of
    the identity, and the remaining classes are ordered by their minimal
    element index.  names holds one display string per element.
    """

    order: int
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int
    class_of: tuple[int, ...]
    class_reps: tuple[int, ...]
    names: tuple[str, ...]

    @property
    def num_classes(self) -> int:
        return len(self.class_reps)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def invert(self, a: int) -> int:
        return self.inv[a]

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mult[self.mult[g][x]][self.inv[g]]

    def name_of(self, x: int) -> str:
        return self.names[x]

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, classes={self.num_classes})"


def validate_table(order: int, mult: list[list[int]]) -> tuple[tuple[int, ...], int]:
    """Check closure, associativity, identity, inverses.

    Returns (inverse table, identity index).  Raises NotClosed,
    NotAssociative, NoIdentity, or NoInverse, in that order of checking.
    """
    for i in range(order):
        for j in range(order):
            v = mult[i][j]
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < order:
                raise NotClosed(i, j, v)
    rng = range(order)
    for x in rng:
        for y in rng:
            xy = mult[x][y]
            for z in rng:
                if mult[xy][z] != mult[x][mult[y][z]]:
                    raise NotAssociative(x, y, z)
    identity = next(
        (e for e in rng if all(mult[e][x] == x and mult[x][e] == x for x in rng)),
        None,
    )
    if identity is None:
        raise NoIdentity("no two-sided identity in table")
    inv = []
    for x in rng:
        y = next(
            (y for y in rng if mult[x][y] == identity and mult[y][x] == identity),
            None,
        )
        if y is None:
            raise NoInverse(x)
        inv.append(y)
    return tuple(inv), identity


def _conjugacy_data(
    order: int, mult: list[list[int]] | tuple[tuple[int, ...], ...],
    inv: tuple[int, ...], identity: int,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Orbits of x -> g x g^-1.  Identity class first, rest by minimal element."""
    class_of = [-1] * order
    reps: list[int] = []
    order_of_discovery = [identity] + [x for x in range(order) if x != identity]
    for x in order_of_discovery:
        if class_of[x] != -1:
            continue
        cls = len(reps)
        reps.append(x)
        stack = [x]
        class_of[x] = cls
        while stack:
            y = stack.pop()
            for g in range(order):
                z = mult[mult[g][y]][inv[g]]
                if class_of[z] == -1:
                    class_of[z] = cls
                    stack.append(z)
    return tuple(class_of), tuple(reps)


def conjugacy_classes(F: FiniteGroup) -> list[tuple[int, ...]]:
    """The classes of F as sorted tuples of element indices, in class order."""
    out: list[list[int]] = [[] for _ in range(F.num_classes)]
    for x in range(F.order):
        out[F.class_of[x]].append(x)
    return [tuple(c) for c in out]


def load_group(spec: dict, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a FiniteGroup from a mapping with keys order, mult, names (optional)."""
    if not isinstance(spec, dict):
        raise ParseError("group description must be a JSON object")
    try:
        order = spec["order"]
        mult = spec["mult"]
    except KeyError as exc:
        raise ParseError(f"group description missing key {exc.args[0]!r}") from None
    if not isinstance(order, int) or order < 1:
        raise ParseError(f"order must be a positive integer, got {order!r}")
    if order > max_order:
        raise BudgetExceeded(f"group order {order} exceeds cap {max_order}")
    if not isinstance(mult, list) or len(mult) != order or any(
        not isinstance(row, list) or len(row) != order for row in mult
    ):
        raise ParseError(f"mult must be a {order}x{order} array of element indices")
    inv, identity = validate_table(order, mult)
    names = spec.get("names")
    if names is None:
        names = [str(i) for i in range(order)]
    if (
        not isinstance(names, list)
        or len(names) != order
        or any(not isinstance(s, str) for s in names)
    ):
        raise ParseError(f"names must be a list of {order} strings")
    class_of, reps = _conjugacy_data(order, mult, inv, identity)
    return FiniteGroup(
        order=order,
        mult=tuple(tuple(row) for row in mult),
        inv=inv,
        identity=identity,
        class_of=class_of,
        class_reps=reps,
        names=tuple(names),
    )


def load_group_file(path: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Load a JSON group file (keys: order, mult, names optional)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read group file {path}: {exc}") from exc
    return load_group(spec, max_order=max_order)


def _cyclic_spec(m: int) -> dict:
    mult = [[(i + j) % m for j in range(m)] for i in range(m)]
    if m == 2:
        names = ["+", "-"]
    else:
        names = [str(i) for i in range(m)]
    return {"order": m, "mult": mult, "names": names}


def _perm_cycle_name(p: tuple[int, ...]) -> str:
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + "".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) or "e"


def _symmetric_spec(m: int) -> dict:
    perms = list(itertools.permutations(range(m)))
    index = {p: i for i, p in enumerate(perms)}
    # compose(p, q) applies q first, matching the product convention used
    # for permutation parts everywhere else in the package
    mult = [[index[tuple(p[q[x]] for x in range(m))] for q in perms] for p in perms]
    return {"order": len(perms), "mult": mult, "names": [_perm_cycle_name(p) for p in perms]}


_BUILTIN_RE = re.compile(r"^(trivial|cyclic|sym)\s*(?:\(\s*(\d+)\s*\)|(\d+))?$")


def builtin_group(name: str) -> FiniteGroup:
    """Builtins: trivial, cyclic(m) (also written cyclicM), sym(3)."""
    m = _BUILTIN_RE.match(name.strip().lower())
    if not m:
        raise UnknownBuiltin(f"unknown builtin group {name!r}")
    kind = m.group(1)
    arg = m.group(2) or m.group(3)
    if kind == "trivial":
        if arg is not None:
            raise UnknownBuiltin(f"trivial takes no parameter: {name!r}")
        return load_group({"order": 1, "mult": [[0]], "names": ["e"]})
    if arg is None:
        raise UnknownBuiltin(f"{kind} needs a parameter, e.g. {kind}(2): {name!r}")
    k = int(arg)
    if kind == "cyclic":
        if not 1 <= k <= 12:
            raise UnknownBuiltin(f"cyclic order out of range 1..12: {name!r}")
        return load_group(_cyclic_spec(k))
    if k != 3:
        raise UnknownBuiltin(f"only sym(3) is builtin: {name!r}")
    return load_group(_symmetric_spec(3))


TRIVIAL = builtin_group("trivial")
