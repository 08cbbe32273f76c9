"""
辫树自同构群服务测试
"""
import numpy as np
import pytest

from jordankit.app.core.exceptions import TreeMismatchError
from jordankit.app.models.braid import BAutElement, BraidWord
from jordankit.app.models.tree import RootedTree
from jordankit.app.services.braid_service import braid_service
from jordankit.app.services.group_service import group_service
from jordankit.app.services.tree_service import tree_service

# 根有两片叶子与两条长度为 2 的链
MIXED = "((())(())()())"
SAMPLE_TREES = ["(()()())", "((()())(()()))", MIXED, "((()())())"]


@pytest.mark.parametrize("n", range(0, 7))
def test_aut_order_matches_enumeration(n):
    for code in tree_service.enumerate_trees(n):
        t = tree_service.tree_from_code(code)
        automorphisms = group_service.enumerate_automorphisms(t)
        assert group_service.aut_order(t) == len(automorphisms)
        assert len({a.images for a in automorphisms}) == len(automorphisms)


def test_seven_circle_tree_order_and_signature(seven_tree):
    assert group_service.aut_order(seven_tree) == 2
    assert group_service.pure_signature(seven_tree) == (2, 2, 2, 1)


def test_aut_order_known_values():
    assert group_service.aut_order(RootedTree(())) == 1
    assert group_service.aut_order(tree_service.tree_from_code("(()()())")) == 6
    assert group_service.aut_order(tree_service.tree_from_code("((()())(()()))")) == 8


def test_permutation_helpers():
    p = braid_service.braid_permutation(BraidWord(3, (1, 2)))
    q = group_service.permutation_inverse(p)
    assert group_service.permutation_compose(p, q).is_identity()
    assert group_service.permutation_compose(q, p).is_identity()


@pytest.mark.parametrize("code", SAMPLE_TREES)
def test_group_axioms(code, rng):
    t = tree_service.tree_from_code(code)
    identity = group_service.identity_element(t)
    for _ in range(5):
        a, b, c = (group_service.random_element(t, rng) for _ in range(3))
        for x in (a, b, c):
            group_service.validate_element(x)
        left = group_service.baut_compose(group_service.baut_compose(a, b), c)
        right = group_service.baut_compose(a, group_service.baut_compose(b, c))
        assert group_service.baut_equal(left, right)
        assert group_service.baut_equal(group_service.baut_compose(a, identity), a)
        assert group_service.baut_equal(group_service.baut_compose(identity, a), a)
        assert group_service.baut_is_trivial(group_service.baut_compose(a, group_service.baut_inverse(a)))
        assert group_service.baut_is_trivial(group_service.baut_compose(group_service.baut_inverse(a), a))


@pytest.mark.parametrize("code", SAMPLE_TREES)
def test_projection_is_homomorphism(code, rng):
    t = tree_service.tree_from_code(code)
    for _ in range(10):
        a, b = group_service.random_element(t, rng), group_service.random_element(t, rng)
        product = group_service.baut_project(group_service.baut_compose(a, b))
        expected = group_service.automorphism_compose(group_service.baut_project(a), group_service.baut_project(b))
        assert product.images == expected.images
        inverse = group_service.baut_project(group_service.baut_inverse(a))
        assert group_service.automorphism_compose(inverse, group_service.baut_project(a)).is_identity()


def test_projection_preserves_subtree_shapes(rng):
    """投影只在同构子树之间移动顶点"""
    t = tree_service.tree_from_code(MIXED)
    codes = tree_service.subtree_codes(t)
    for _ in range(20):
        f = group_service.baut_project(group_service.random_element(t, rng))
        assert all(codes[f(v)] == codes[v] for v in range(1, t.n + 1))


def test_pure_iff_braid_permutation_is_identity_on_star(rng):
    t = tree_service.tree_from_code("(()()()())")
    for _ in range(30):
        a = group_service.random_element(t, rng)
        assert group_service.baut_is_pure(a) == braid_service.braid_permutation(a.braid).is_identity()


def test_identity_is_pure_and_trivial(seven_tree):
    e = group_service.identity_element(seven_tree)
    assert group_service.baut_is_pure(e)
    assert group_service.baut_is_trivial(e)
    assert group_service.baut_project(e).is_identity()


def test_labeled_elements_are_pure(seven_tree, rng):
    for _ in range(10):
        a = group_service.random_element(seven_tree, rng)
        group_service.validate_element(a)
        assert group_service.baut_is_pure(a)


def test_pure_braid_is_not_trivial():
    """σ1² 是纯元素但不是单位元"""
    t = tree_service.tree_from_code("(()())")
    leaves = tuple(group_service.identity_element(sub) for sub, _ in group_service.child_trees(t))
    a = BAutElement(tree=t, braid=BraidWord(2, (1, 1)), children=leaves)
    group_service.validate_element(a)
    assert group_service.baut_is_pure(a)
    assert not group_service.baut_is_trivial(a)


def test_validate_element_rejects_block_violation():
    t = tree_service.tree_from_code("(()(()))")
    children = tuple(group_service.identity_element(sub) for sub, _ in group_service.child_trees(t))
    with pytest.raises(TreeMismatchError):
        group_service.validate_element(BAutElement(tree=t, braid=BraidWord(2, (1,)), children=children))
    with pytest.raises(TreeMismatchError):
        group_service.validate_element(BAutElement(tree=t, braid=BraidWord(3), children=children))
    with pytest.raises(TreeMismatchError):
        group_service.validate_element(BAutElement(tree=t, braid=BraidWord(2), children=children[::-1]))


def test_compose_rejects_different_trees():
    a = group_service.identity_element(tree_service.tree_from_code("(()())"))
    b = group_service.identity_element(tree_service.tree_from_code("((()))"))
    with pytest.raises(TreeMismatchError):
        group_service.baut_compose(a, b)


def test_random_element_is_reproducible():
    t = tree_service.tree_from_code(MIXED)
    a = group_service.random_element(t, np.random.default_rng(7))
    b = group_service.random_element(t, np.random.default_rng(7))
    assert a == b
