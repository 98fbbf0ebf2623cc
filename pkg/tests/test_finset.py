import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradcat.errors import ContractViolation
from gradcat.finset import (
    FinMap,
    FinSet,
    all_maps,
    copair,
    coproduct,
    equalizer,
    factorize,
    pair,
    product,
    pullback,
    standard,
)


def fmap(dom, cod, images):
    return FinMap(FinSet(dom), FinSet(cod), tuple(images))


@st.composite
def finmaps(draw, max_size=4):
    m = draw(st.integers(0, max_size))
    n = draw(st.integers(1 if m else 0, max_size))
    table = draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m)) if n else []
    return FinMap(standard(m), standard(n), tuple(table))


def test_canonical_order_and_duplicates():
    assert FinSet(["b", "a"]) == FinSet(["a", "b"])
    assert FinSet([2, "a", (1, 0)]).elements == (2, "a", (1, 0))
    with pytest.raises(ContractViolation):
        FinSet(["a", "a"])


def test_finmap_rejects_bad_tables():
    with pytest.raises(ContractViolation):
        fmap([0, 1], [0], [0])
    with pytest.raises(ContractViolation):
        fmap([0], [0], [5])


def test_product_examples():
    P, (p1, p2) = product([FinSet(["a", "b"]), FinSet([0, 1])])
    assert len(P) == 4 and p1(("a", 1)) == "a" and p2(("a", 1)) == 1
    T, projs = product([])
    assert len(T) == 1 and projs == []
    U, (p,) = product([FinSet(["a"])])
    assert len(U) == 1 and p.is_bijective()


def test_coproduct_examples():
    S, (i, j) = coproduct([FinSet(["*"]), FinSet(["*"])])
    assert len(S) == 2 and not (i.image() & j.image())
    S, _ = coproduct([FinSet(), FinSet(["a"])])
    assert len(S) == 1
    S, _ = coproduct([FinSet(["a", "b"]), FinSet(["a"])])
    assert len(S) == 3


def test_equalizer_examples():
    X = FinSet([1, 2, 3])
    f = fmap([1, 2, 3], [0, 1], [0, 1, 0])
    g = fmap([1, 2, 3], [0, 1], [0, 0, 0])
    E, e = equalizer(f, g)
    assert E == FinSet([1, 3]) and e.is_injective()
    E, e = equalizer(f, f)
    assert E == X and e.is_bijective()
    ab = FinSet(["a", "b"])
    E, _ = equalizer(FinMap.identity(ab), FinMap.const(ab, ab, "a"))
    assert E == FinSet(["a"])
    with pytest.raises(ContractViolation):
        equalizer(f, fmap([1, 2], [0, 1], [0, 0]))


def test_pullback_examples():
    ab = FinSet(["a", "b"])
    P, _, _ = pullback(FinMap.inclusion(FinSet(["a"]), ab), FinMap.inclusion(FinSet(["b"]), ab))
    assert len(P) == 0
    P, p1, p2 = pullback(FinMap.identity(ab), FinMap.identity(ab))
    assert len(P) == 2 and p1.is_bijective()
    P, _, _ = pullback(fmap([1, 2], ["x"], ["x", "x"]), fmap([3], ["x"], ["x"]))
    assert len(P) == 2
    with pytest.raises(ContractViolation):
        pullback(FinMap.identity(ab), FinMap.identity(FinSet(["a"])))


def test_factorize_examples():
    f = FinMap.const(FinSet([1, 2]), FinSet(["a", "b"]), "a")
    fac = factorize(f)
    assert fac.epi.cod == FinSet(["a"]) and fac.mono @ fac.epi == f
    g = fmap([1, 2, 3], ["a", "b"], ["a", "a", "b"])
    fac = factorize(g)
    assert fac.epi.cod == FinSet(["a", "b"]) and not fac.epi.is_injective()
    h = fmap([1, 2], ["a", "b", "c"], ["c", "a"])
    assert factorize(h).epi.is_bijective()


@given(finmaps(), st.data())
@settings(max_examples=150, deadline=None)
def test_composition_laws(f, data):
    X, Y = f.dom, f.cod
    assert FinMap.identity(Y) @ f == f == f @ FinMap.identity(X)
    n = data.draw(st.integers(1, 3))
    g = FinMap(Y, standard(n), tuple(data.draw(st.integers(0, n - 1)) for _ in Y))
    h = FinMap(standard(n), standard(2), tuple(data.draw(st.integers(0, 1)) for _ in range(n)))
    assert (h @ g) @ f == h @ (g @ f)


def test_composition_exhaustive_small():
    sets = [standard(n) for n in range(3)]
    for X, Y, Z in itertools.product(sets, repeat=3):
        for f in all_maps(X, Y):
            for g in all_maps(Y, Z):
                gf = g @ f
                assert all(gf(x) == g(f(x)) for x in X)


@given(finmaps())
@settings(max_examples=200, deadline=None)
def test_factorization_invariants(f):
    fac = factorize(f)
    assert fac.mono @ fac.epi == f
    assert fac.epi.is_surjective() and fac.mono.is_injective()
    assert f.is_injective() == fac.epi.is_bijective()
    assert f.is_surjective() == fac.mono.is_bijective()


def test_pullback_of_monos_is_intersection():
    for n in range(6):
        B = standard(n)
        for S, T in itertools.product(list(B.subsets()), repeat=2):
            P, p1, p2 = pullback(FinMap.inclusion(S, B), FinMap.inclusion(T, B))
            assert {p1(x) for x in P} == set(S & T)
            assert len(P) == len(S & T)


def test_product_universal_property():
    for m, n in itertools.product(range(3), repeat=2):
        X, Y = standard(m), standard(n)
        P, (p1, p2) = product([X, Y])
        for k in range(4):
            U = standard(k)
            for f in all_maps(U, X):
                for g in all_maps(U, Y):
                    mediators = [u for u in all_maps(U, P) if p1 @ u == f and p2 @ u == g]
                    assert mediators == [pair(P, [f, g])]


def test_coproduct_universal_property():
    for m, n in itertools.product(range(3), repeat=2):
        X, Y = standard(m), standard(n)
        S, (i, j) = coproduct([X, Y])
        for k in range(4):
            U = standard(k)
            for f in all_maps(X, U):
                for g in all_maps(Y, U):
                    mediators = [u for u in all_maps(S, U) if u @ i == f and u @ j == g]
                    assert mediators == [copair(S, [f, g])]


def test_pullback_universal_property():
    X, Y, Z = standard(2), standard(3), standard(2)
    for f in all_maps(X, Z):
        for g in all_maps(Y, Z):
            P, p1, p2 = pullback(f, g)
            for k in range(3):
                U = standard(k)
                for a in all_maps(U, X):
                    for b in all_maps(U, Y):
                        if f @ a != g @ b:
                            continue
                        mediators = [u for u in all_maps(U, P) if p1 @ u == a and p2 @ u == b]
                        assert len(mediators) == 1
