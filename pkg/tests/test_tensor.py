from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlab.scalar import FieldMismatch, FieldSpec
from twistlab.tensor import (
    DiagramPath,
    DimensionLimitExceeded,
    Grading,
    LinearMap,
    PartialLinearMap,
    ShapeMismatch,
    Singular,
    Space,
    UndefinedColumn,
    Vector,
    compose,
    compose_path,
    evaluate_path,
    ground,
    identity,
    invert,
    left_unitor,
    left_unitor_inv,
    maps_equal,
    permutation,
    right_unitor,
    right_unitor_inv,
    swap,
    tensor_map,
    tensor_space,
    tensor_vectors,
    transposition,
)

Q = FieldSpec.rational()


def space(n: int, prefix: str = "e", field: FieldSpec = Q) -> Space:
    return Space(field, [f"{prefix}{i}" for i in range(n)], name=f"{prefix}{n}")


def random_map(dom: Space, cod: Space, rng: random.Random, density: float = 0.6) -> LinearMap:
    rows = [[rng.randint(-3, 3) if rng.random() < density else 0 for _ in range(dom.dim)] for _ in range(cod.dim)]
    return LinearMap.from_matrix(dom, cod, rows)


# -- spaces ----------------------------------------------------------------------------------

def test_row_major_order():
    V, W = space(2, "v"), space(3, "w")
    assert tensor_space(V, W).basis == (
        ("v0", "w0"), ("v0", "w1"), ("v0", "w2"), ("v1", "w0"), ("v1", "w1"), ("v1", "w2"))


def test_ground_space():
    k = ground(Q)
    assert k.dim == 1 and k.basis == ("1",)
    V = space(3)
    assert tensor_space(k, V).basis == tuple(("1", b) for b in V.basis)


def test_grading_concatenates():
    X = Space(Q, ["1", "x"], Grading({"1": (0,), "x": (1,)}, (0,)))
    Y = Space(Q, ["1", "y"], Grading({"1": (0,), "y": (1,)}, (0,)))
    XY = tensor_space(X, Y)
    assert XY.degree(("x", "y")) == (1, 1)
    assert XY.grading.moduli == (0, 0)


def test_duplicate_labels_rejected():
    with pytest.raises(ShapeMismatch):
        Space(Q, ["a", "a"])


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        tensor_space(space(2), space(2, field=FieldSpec.prime(3)))


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("TWISTLAB_MAX_DIM", "10")
    with pytest.raises(DimensionLimitExceeded):
        tensor_space(space(3), space(4))


# -- maps -------------------------------------------------------------------------------------

def test_identity_tensor_identity():
    assert maps_equal(tensor_map(identity(space(2)), identity(space(3))),
                      identity(tensor_space(space(2), space(3))))


@pytest.mark.parametrize("seed", range(5))
def test_kronecker_factorwise(seed):
    rng = random.Random(seed)
    V, W, X, Y = space(2, "v"), space(3, "w"), space(2, "x"), space(2, "y")
    f, g = random_map(V, X, rng), random_map(W, Y, rng)
    fg = tensor_map(f, g)
    for _ in range(20):
        a, b = rng.choice(V.basis), rng.choice(W.basis)
        assert fg.apply((a, b)) == tensor_vectors(f.apply(a), g.apply(b))


@pytest.mark.parametrize("seed", range(5))
def test_tensor_functoriality(seed):
    rng = random.Random(seed)
    V = space(2)
    f, g, f2, g2 = (random_map(V, V, rng) for _ in range(4))
    assert maps_equal(compose(tensor_map(f, g), tensor_map(f2, g2)),
                      tensor_map(compose(f, f2), compose(g, g2)))


@pytest.mark.parametrize("seed", range(5))
def test_composition_associative(seed):
    rng = random.Random(seed)
    V = space(3)
    f, g, h = (random_map(V, V, rng) for _ in range(3))
    assert maps_equal(compose(compose(f, g), h), compose(f, compose(g, h)))
    assert maps_equal(compose(identity(V), f), f)


def test_compose_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        compose(identity(space(2)), identity(space(3)))


def test_swap_involution_and_value():
    V = space(2)
    s = swap(V, V)
    assert s.apply(("e0", "e1")) == Vector.basis(tensor_space(V, V), ("e1", "e0"))
    assert maps_equal(compose(s, s), identity(tensor_space(V, V)))


def test_sigma23_on_four_factors():
    Vs = [space(2, p) for p in "abcd"]
    s = permutation(Vs, (0, 2, 1, 3))
    for lab in s.domain.basis:
        a, b, c, d = lab
        assert s.apply(lab).terms() == [((a, c, b, d), Q.one)]


def test_sigma13_sigma24_involution():
    V = space(2)
    s = permutation([V] * 4, (2, 3, 0, 1))
    assert maps_equal(compose(s, s), identity(s.domain))


def test_transposition_helper():
    Vs = [space(2, p) for p in "abc"]
    assert maps_equal(transposition(Vs, 0, 2), permutation(Vs, (2, 1, 0)))


def test_block_permutation():
    V, W = space(2, "v"), space(3, "w")
    VW = tensor_space(V, W)
    s = permutation([VW, V], (1, 0))
    assert s.apply(("v1", "w2", "v0")).terms() == [(("v0", "v1", "w2"), Q.one)]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))))
def test_permutation_homomorphism(perms):
    p, q = perms
    n = len(p)
    Vs = [space(2, chr(ord("a") + i)) for i in range(n)]
    Pq = permutation(Vs, q)
    Pp = permutation([Vs[i] for i in q], p)
    r = [q[p[k]] for k in range(n)]
    assert maps_equal(compose(Pp, Pq), permutation(Vs, r))


def test_unitors():
    V = space(3)
    k = ground(Q)
    assert left_unitor(V).apply(("1", "e0")) == Vector.basis(V, "e0")
    assert maps_equal(compose(left_unitor(V), left_unitor_inv(V)), identity(V))
    assert maps_equal(compose(right_unitor(V), right_unitor_inv(V)), identity(V))
    assert left_unitor(V).domain == tensor_space(k, V)


def test_unitor_naturality():
    rng = random.Random(1)
    V = space(3)
    f = random_map(V, V, rng)
    k = ground(Q)
    assert maps_equal(compose(f, left_unitor(V)), compose(left_unitor(V), tensor_map(identity(k), f)))


# -- inversion ----------------------------------------------------------------------------------------

def test_invert_examples():
    V = space(2)
    f = LinearMap.from_matrix(V, V, [[1, 1], [0, 1]])
    assert invert(f).matrix() == [[1, -1], [0, 1]]
    assert maps_equal(invert(identity(V)), identity(V))
    s = swap(V, V)
    assert maps_equal(invert(s), s)


def test_invert_singular():
    V = space(2)
    with pytest.raises(Singular):
        invert(LinearMap.from_matrix(V, V, [[1, 2], [2, 4]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([Q, FieldSpec.prime(5), FieldSpec.cyclotomic(3)]))
def test_invert_roundtrip(seed, field):
    rng = random.Random(seed)
    V = space(4, field=field)
    rows = [[field(rng.randint(-2, 2)) + (field.generator() if field.kind == "cyclotomic" and rng.random() < 0.3 else 0)
             for _ in range(4)] for _ in range(4)]
    f = LinearMap.from_matrix(V, V, rows)
    try:
        g = invert(f)
    except Singular:
        return
    assert maps_equal(compose(f, g), identity(V))
    assert maps_equal(compose(g, f), identity(V))


# -- equality and witnesses ---------------------------------------------------------------------------

def test_witness_for_swap():
    V = space(2)
    VV = tensor_space(V, V)
    cmp = maps_equal(identity(VV), swap(V, V))
    assert not cmp.equal
    assert cmp.witness.label == ("e0", "e1")
    assert cmp.differing == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_witnesses_are_genuine(seed):
    rng = random.Random(seed)
    V = space(3)
    f, g = random_map(V, V, rng), random_map(V, V, rng)
    cmp = maps_equal(f, g)
    assert cmp.equal == (f.matrix() == g.matrix())
    assert maps_equal(f, f).equal
    assert maps_equal(g, f).equal == cmp.equal
    if not cmp.equal:
        w = cmp.witness
        assert f.apply(w.label) == w.lhs and g.apply(w.label) == w.rhs and w.lhs != w.rhs


def test_maps_equal_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        maps_equal(identity(space(2)), identity(space(3)))


# -- paths and partial maps -----------------------------------------------------------------------------

def test_path_single_identity():
    V = space(3)
    v = Vector.from_terms(V, {"e0": 2, "e2": -1})
    assert evaluate_path(DiagramPath([identity(V)]), v) == v


def test_path_double_swap():
    V = space(2)
    VV = tensor_space(V, V)
    v = Vector.from_terms(VV, {("e0", "e1"): 3, ("e1", "e1"): 1})
    p = DiagramPath([swap(V, V), swap(V, V)])
    assert evaluate_path(p, v) == v
    assert maps_equal(compose_path(p), identity(VV))


def test_path_must_chain():
    with pytest.raises(ShapeMismatch):
        DiagramPath([identity(space(2)), identity(space(3))])


def test_partial_map_undefined_column():
    V = space(2)
    f = PartialLinearMap.from_images(V, V, {"e0": {"e1": 1}})
    assert f.apply("e0") == Vector.basis(V, "e1")
    with pytest.raises(UndefinedColumn) as info:
        f.apply("e1")
    assert info.value.label == "e1"
    with pytest.raises(UndefinedColumn):
        evaluate_path([f], Vector.from_terms(V, {"e0": 1, "e1": 1}))


def test_partial_map_not_invertible():
    V = space(2)
    f = PartialLinearMap.from_images(V, V, {"e0": {"e1": 1}})
    with pytest.raises(Exception):
        invert(f)


def test_all_pairs_of_basis_vectors():
    V, W = space(2, "v"), space(2, "w")
    f = LinearMap.from_matrix(V, V, [[0, 1], [1, 1]])
    g = LinearMap.from_matrix(W, W, [[2, 0], [1, 1]])
    fg = tensor_map(f, g)
    for a, b in itertools.product(V.basis, W.basis):
        assert fg.apply((a, b)) == tensor_vectors(f.apply(a), g.apply(b))
