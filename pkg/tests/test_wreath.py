"""Wreath-product elements, class labels, and the orbit oracles."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classalg import (
    BudgetExceeded,
    ClassLabel,
    GroupElement,
    InvalidLabel,
    LevelMismatch,
    ParseError,
    WrongBaseGroup,
    builtin_group,
    class_label,
    class_label_representative,
    conjugate,
    conjugation_orbits,
    d_type_membership,
    element_str,
    enumerate_elements,
    group_order,
    identity_element,
    inverse,
    labels_with_alpha_up_to,
    level_group,
    multiply,
    promote,
    support,
)
from classalg.finite_group import TRIVIAL
from classalg.wreath import apply_perm_to_mask, mask_points, mask_str

Z2 = builtin_group("cyclic2")
Z3 = builtin_group("cyclic3")
S3F = builtin_group("sym3")


def elements_strategy(F, n):
    return st.builds(
        GroupElement,
        st.just(n),
        st.permutations(tuple(range(n))).map(tuple),
        st.tuples(*(st.integers(0, F.order - 1) for _ in range(n))),
    )


# --- product convention, frozen ---

def test_multiplication_example():
    a = GroupElement(2, (1, 0), (1, 0))  # (12; -,+)
    assert multiply(a, a, Z2) == GroupElement(2, (0, 1), (1, 1))  # (e; -,-)


def test_permutation_composition_applies_right_factor_first():
    a = GroupElement(3, (1, 0, 2), (0, 0, 0))  # (12)
    b = GroupElement(3, (0, 2, 1), (0, 0, 0))  # (23)
    ab = multiply(a, b, TRIVIAL)
    # (12)(23) maps 1->2, 2->3, 3->1
    assert ab.perm == (1, 2, 0)


def test_identity_and_inverse():
    e = identity_element(Z2, 3)
    a = GroupElement(3, (2, 0, 1), (1, 0, 1))
    assert multiply(a, e, Z2) == a == multiply(e, a, Z2)
    assert multiply(a, inverse(a, Z2), Z2) == e
    assert multiply(inverse(a, Z2), a, Z2) == e


def test_level_mismatch():
    with pytest.raises(LevelMismatch):
        multiply(identity_element(Z2, 2), identity_element(Z2, 3), Z2)


@pytest.mark.parametrize("F,n", [(TRIVIAL, 4), (Z2, 3), (S3F, 2)])
def test_hypothesis_group_laws(F, n):
    @settings(max_examples=60, deadline=None)
    @given(
        x=elements_strategy(F, n),
        y=elements_strategy(F, n),
        z=elements_strategy(F, n),
    )
    def run(x, y, z):
        assert multiply(multiply(x, y, F), z, F) == multiply(x, multiply(y, z, F), F)
        assert multiply(x, inverse(x, F), F) == identity_element(F, n)
        xy = multiply(x, y, F)
        assert support(xy, F) & ~(support(x, F) | support(y, F)) == 0
        assert class_label(conjugate(x, y, F), F) == class_label(y, F)
        assert support(conjugate(x, y, F), F) == apply_perm_to_mask(
            x.perm, support(y, F)
        )

    run()


@pytest.mark.parametrize("F,n", [(TRIVIAL, 5), (Z2, 3), (S3F, 2)])
def test_random_associativity_thousand_triples(F, n):
    rng = random.Random(12345)

    def rand_el():
        perm = list(range(n))
        rng.shuffle(perm)
        return GroupElement(
            n, tuple(perm), tuple(rng.randrange(F.order) for _ in range(n))
        )

    for _ in range(1000):
        x, y, z = rand_el(), rand_el(), rand_el()
        assert multiply(multiply(x, y, F), z, F) == multiply(x, multiply(y, z, F), F)


# --- support ---

def test_support_counts_moved_and_decorated_points():
    a = GroupElement(4, (1, 0, 2, 3), (0, 0, 1, 0))
    assert support(a, Z2) == 0b0111
    assert support(identity_element(Z2, 4), Z2) == 0
    assert mask_str(0b0101) == "{1,3}"
    assert mask_points(0b1010) == (1, 3)


# --- class labels ---

def test_class_label_examples():
    assert class_label(GroupElement(2, (1, 0), (1, 0)), Z2) == ClassLabel(((2, 1),))
    assert class_label(GroupElement(2, (1, 0), (0, 0)), Z2) == ClassLabel(((2, 0),))
    # (-)(-) along a 2-cycle multiplies to +
    assert class_label(GroupElement(2, (1, 0), (1, 1)), Z2) == ClassLabel(((2, 0),))
    five = GroupElement(5, (1, 2, 0, 4, 3), (0,) * 5)
    assert class_label(five, TRIVIAL) == ClassLabel(((3, 0), (2, 0)))
    assert class_label(identity_element(S3F, 3), S3F) == ClassLabel(())


def test_class_label_canonical_pair_order():
    c = ClassLabel.from_pairs([(2, 1), (3, 0), (2, 0), (1, 1)])
    assert c.pairs == ((3, 0), (2, 0), (2, 1), (1, 1))
    assert c.alpha == 8


def test_class_label_drops_trivial_fixed_points():
    assert ClassLabel.from_pairs([(1, 0), (2, 0), (1, 0)]) == ClassLabel(((2, 0),))
    with pytest.raises(InvalidLabel):
        ClassLabel.from_pairs([(0, 1)])
    with pytest.raises(InvalidLabel):
        ClassLabel.from_pairs([(2, 5)], Z2)


def test_label_order_between_labels():
    labels = labels_with_alpha_up_to(5, TRIVIAL)
    shown = [c.display(TRIVIAL) for c in labels]
    assert shown == ["[]", "[2]", "[3]", "[2,2]", "[4]", "[3,2]", "[5]"]


@pytest.mark.parametrize(
    "text,expect",
    [
        ("[]", ()),
        ("[3,2]", ((3, 0), (2, 0))),
        ("[2,3]", ((3, 0), (2, 0))),
        ("[(2,1)]", ((2, 1),)),
        ("[ (3,0) , (1,1) ]", ((3, 0), (1, 1))),
        ("[2,1]", ((2, 0),)),
    ],
)
def test_class_label_parse(text, expect):
    assert ClassLabel.parse(text, Z2).pairs == expect


@pytest.mark.parametrize("text", ["3,2", "[3,2", "[a]", "[(2,)]", "[(2,9)]", "[()]"])
def test_class_label_parse_errors(text):
    with pytest.raises(ParseError):
        ClassLabel.parse(text, Z2)


def test_display_shorthand_only_for_trivial_base():
    c = ClassLabel.from_pairs([(3, 0), (2, 0)])
    assert c.display(TRIVIAL) == "[3,2]"
    assert c.display(Z2) == "[(3,0),(2,0)]"


def test_labels_round_trip_through_display():
    for F in (TRIVIAL, Z2, S3F):
        for c in labels_with_alpha_up_to(4, F):
            assert ClassLabel.parse(c.display(F), F) == c


def test_representative_round_trip():
    for F, n in ((TRIVIAL, 5), (Z2, 5), (S3F, 4)):
        for c in labels_with_alpha_up_to(4, F):
            if c.alpha <= n:
                rep = class_label_representative(c, F, n)
                assert class_label(rep, F) == c
    with pytest.raises(InvalidLabel):
        class_label_representative(ClassLabel(((4, 0),)), TRIVIAL, 3)


def test_label_stable_under_promotion():
    a = GroupElement(3, (1, 0, 2), (1, 0, 1))
    b = promote(a, 6, Z2)
    assert b.n == 6
    assert class_label(b, Z2) == class_label(a, Z2)
    assert support(b, Z2) == support(a, Z2)
    with pytest.raises(LevelMismatch):
        promote(a, 2, Z2)


# --- enumeration and label completeness ---

def test_enumeration_counts_and_order():
    assert group_order(TRIVIAL, 3) == 6
    assert group_order(Z2, 3) == 48
    els = list(enumerate_elements(Z2, 2))
    assert len(els) == 8
    assert els[0] == identity_element(Z2, 2)
    assert els == sorted(els, key=GroupElement.sort_key)
    with pytest.raises(BudgetExceeded):
        list(enumerate_elements(TRIVIAL, 12))
    with pytest.raises(BudgetExceeded):
        level_group(TRIVIAL, 4, budget=10)


@pytest.mark.parametrize(
    "F,n",
    [
        (TRIVIAL, 1), (TRIVIAL, 2), (TRIVIAL, 3), (TRIVIAL, 4), (TRIVIAL, 5),
        (Z2, 1), (Z2, 2), (Z2, 3), (Z2, 4),
        (Z3, 2), (Z3, 3),
        (S3F, 2), (S3F, 3),
    ],
)
def test_labels_are_complete_invariant(F, n):
    """Label fibers coincide with brute-force conjugation orbits."""
    G = level_group(F, n)
    orbits = {frozenset(o) for o in conjugation_orbits(F, n)}
    fibers = {frozenset(ids) for ids in G.by_label.values()}
    assert orbits == fibers


def test_label_enumeration_matches_realized_classes():
    for F, n in ((TRIVIAL, 4), (Z2, 3), (S3F, 2)):
        G = level_group(F, n)
        assert set(G.by_label) == set(labels_with_alpha_up_to(n, F))


def test_class_sizes_sum_to_group_order():
    for F, n in ((TRIVIAL, 4), (Z2, 3), (Z3, 3)):
        G = level_group(F, n)
        assert sum(len(v) for v in G.by_label.values()) == G.order


# --- d-type membership ---

def test_d_type_membership():
    assert d_type_membership(identity_element(Z2, 3), Z2)
    assert not d_type_membership(GroupElement(3, (0, 1, 2), (1, 0, 0)), Z2)
    assert d_type_membership(GroupElement(3, (1, 0, 2), (1, 1, 0)), Z2)
    with pytest.raises(WrongBaseGroup):
        d_type_membership(identity_element(TRIVIAL, 3), TRIVIAL)
    with pytest.raises(WrongBaseGroup):
        d_type_membership(identity_element(S3F, 2), S3F)


def test_element_display():
    a = GroupElement(3, (1, 0, 2), (1, 0, 0))
    assert element_str(a, Z2) == "((1 2); -,+,+)"
    assert element_str(identity_element(Z2, 2), Z2) == "(e; +,+)"
