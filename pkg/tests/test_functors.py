import itertools
import json

import pytest

import oracles
from gradcat.corpus import corpus_documents, corpus_files, load_corpus, random_presentation
from gradcat.errors import ContractViolation, NotExponential, ResourceGuardError
from gradcat.finset import FinMap, FinSet, all_maps, standard
from gradcat.functors import (
    EvSeq,
    EvSeqFunctor,
    Kind,
    Presentation,
    Term,
    builtin,
    classify_functor,
    distinguished_elements,
    ev_countable_witness,
    ev_eval,
    eval_mor,
    is_distinguished,
    preserves_equalizers_upto,
    preserves_products_upto,
    preserves_pullbacks_upto,
    recover_right_adjoint_form,
    set_guard,
)
from gradcat.functors.analysis import product_comparison
from gradcat.functors.evseq import product_comparison as ev_product_comparison

CORPUS = load_corpus()


# --- evaluation ----------------------------------------------------------------

def test_eval_examples():
    c01 = builtin("c01")
    assert len(c01.obj(FinSet(["a", "b"]))) == 1
    assert len(c01.obj(FinSet())) == 0
    assert len(builtin("id").obj(standard(3))) == 3
    assert len(builtin("square").obj(standard(3))) == 9


def test_eval_mor_examples():
    ab, a = FinSet(["a", "b"]), FinSet(["a"])
    f = FinMap.const(ab, a, "a")
    Hf = eval_mor(builtin("square"), f)
    assert Hf(Term("p", ("a", "b"))) == Term("p", ("a", "a"))
    g = FinMap(ab, FinSet([1, 2, 3]), (3, 1))
    Ig = eval_mor(builtin("id"), g)
    assert [Ig(Term("v", (x,))) for x in ab] == [Term("v", (3,)), Term("v", (1,))]
    Cf = eval_mor(builtin("c01"), g)
    assert len(Cf.dom) == len(Cf.cod) == 1


def test_presentation_validation():
    with pytest.raises(ContractViolation):
        Presentation.build("bad", [("p", 2)], [(("p", ["x"]), ("p", ["x", "y"]))])
    with pytest.raises(ContractViolation):
        Presentation.build("bad", [("p", 2)], [(("q", ["x"]), ("p", ["x", "y"]))])
    with pytest.raises(ContractViolation):
        Presentation.build("bad", [("p", 1), ("p", 2)])


def test_json_roundtrip():
    for H in CORPUS:
        assert Presentation.from_json(json.loads(json.dumps(H.to_json()))) == H


def test_guard_limit():
    set_guard(5)
    try:
        with pytest.raises(ResourceGuardError) as err:
            builtin("square").obj(standard(3))
        assert err.value.bound == 5 and err.value.needed == 9
    finally:
        set_guard(None)


def test_guard_from_environment(monkeypatch):
    monkeypatch.setenv("GRADCAT_GUARD", "3")
    with pytest.raises(ResourceGuardError):
        builtin("square").obj(standard(2))


@pytest.mark.parametrize("H", CORPUS, ids=lambda H: H.name)
def test_congruence_closure_matches_fixpoint_oracle(H):
    for n in range(4):
        assert oracles.engine_classes(H, standard(n)) == oracles.fixpoint_classes(H, standard(n))


@pytest.mark.parametrize("H", CORPUS, ids=lambda H: H.name)
def test_functoriality(H):
    sets = [standard(n) for n in range(4)]
    for X in sets:
        assert eval_mor(H, FinMap.identity(X)) == FinMap.identity(H.obj(X))
    for X, Y, Z in itertools.product(sets[:3], repeat=3):
        for f in all_maps(X, Y):
            for g in all_maps(Y, Z):
                assert eval_mor(H, g @ f) == eval_mor(H, g) @ eval_mor(H, f)


# --- distinguished elements -------------------------------------------------------------

def test_distinguished_examples():
    c01, ident, const = builtin("c01"), builtin("id"), builtin("constant-1")
    (a1,) = c01.obj(standard(1))
    assert is_distinguished(c01, standard(1), a1)
    for n in (1, 2):
        for x in ident.obj(standard(n)):
            assert not is_distinguished(ident, standard(n), x)
    (c,) = const.obj(FinSet())
    assert is_distinguished(const, FinSet(), c)
    assert distinguished_elements(ident, standard(3)) == []
    assert distinguished_elements(const, standard(2)) == list(const.obj(standard(2)))
    assert distinguished_elements(builtin("x-plus-x"), standard(2)) == []


@pytest.mark.parametrize("H", CORPUS, ids=lambda H: H.name)
def test_injection_test_matches_literal_definition(H):
    for n in range(3):
        X = standard(n)
        for x in H.obj(X):
            assert bool(is_distinguished(H, X, x)) == oracles.literally_distinguished(H, X, x)


@pytest.mark.parametrize("H", CORPUS, ids=lambda H: H.name)
def test_distinguished_closed_under_images(H):
    for m, n in itertools.product(range(3), repeat=2):
        X, Y = standard(m), standard(n)
        dist_y = set(distinguished_elements(H, Y))
        for x in distinguished_elements(H, X):
            for f in all_maps(X, Y):
                assert eval_mor(H, f)(x) in dist_y


# --- preservation --------------------------------------------------------------------

def test_product_preservation_examples():
    assert preserves_products_upto(builtin("id"), 3)
    assert preserves_products_upto(builtin("c01"), 3)
    H = builtin("x-plus-x")
    assert not preserves_products_upto(H, 2)
    comp = product_comparison(H, standard(2), standard(2))
    assert (len(comp.dom), len(comp.cod)) == (8, 16)


def test_pullback_preservation_examples():
    c01 = builtin("c01")
    verdict = preserves_pullbacks_upto(c01, 2)
    assert not verdict and verdict.witness["A1"] == [0] and verdict.witness["A2"] == [1]
    for H in CORPUS:
        assert preserves_pullbacks_upto(H, 3, nonempty_only=True), H.name
    for name in ("id", "square", "x-plus-x"):
        assert preserves_pullbacks_upto(builtin(name), 3)


def test_equalizer_preservation_variant():
    assert preserves_pullbacks_upto(builtin("square"), 2, equalizers=True)
    assert not preserves_equalizers_upto(builtin("c01"), 2)


@pytest.mark.parametrize("H", CORPUS, ids=lambda H: H.name)
def test_no_distinguished_elements_implies_intersections(H):
    if all(not distinguished_elements(H, standard(n)) for n in range(4)):
        assert preserves_pullbacks_upto(H, 3)


# --- classification -------------------------------------------------------------------

def test_classification_examples():
    assert classify_functor(builtin("c01"), 3).kind is Kind.C01_EXCEPTION
    assert classify_functor(builtin("id"), 3).kind is Kind.RIGHT_ADJOINT
    assert classify_functor(builtin("constant-1"), 3).kind is Kind.CONSTANT_ONE
    assert classify_functor(builtin("x-plus-x"), 3).kind is Kind.NOT_PRODUCT_PRESERVING


def test_recover_exponent_examples():
    assert len(recover_right_adjoint_form(builtin("id"), 3).exponent) == 1
    assert len(recover_right_adjoint_form(builtin("square"), 3).exponent) == 2
    form = recover_right_adjoint_form(builtin("constant-1"), 3)
    assert len(form.exponent) == 0
    assert oracles.natural_iso_exists(builtin("constant-1"), 0, 3)
    assert oracles.natural_iso_exists(builtin("id"), 1, 3)
    assert oracles.natural_iso_exists(builtin("square"), 2, 2)
    with pytest.raises(NotExponential):
        recover_right_adjoint_form(builtin("x-plus-x"), 2)  # |H2| = 4 but no natural bijection
    with pytest.raises(NotExponential):
        recover_right_adjoint_form(builtin("c01"), 2)


def test_random_corpus_matches_generator():
    docs = corpus_documents()
    shipped = {p.name: json.loads(p.read_text()) for p in corpus_files()}
    assert shipped == docs
    assert random_presentation(4) == random_presentation(4)
    assert sum(name.startswith("random-") for name in shipped) >= 10


# --- eventually constant sequences ---------------------------------------------------------

def test_ev_eval_examples():
    assert len(ev_eval(standard(2), 1)) == 4
    assert len(ev_eval(FinSet(), 3)) == 0
    assert all(len(ev_eval(standard(1), d)) == 1 for d in range(5))


def test_ev_cardinality_is_power():
    for n in range(1, 4):
        for d in range(4):
            assert oracles.ev_cardinality(standard(n), d) == n ** (d + 1)


def test_evseq_normal_form():
    assert EvSeq.normal((1, 2, 2), 2) == EvSeq((1,), 2)
    assert EvSeq.from_entries([0, 1, 1]).stabilizes_by() == 1


def test_evseq_functor_is_functorial():
    H = EvSeqFunctor(2)
    sets = [standard(n) for n in range(3)]
    for X, Y, Z in itertools.product(sets, repeat=3):
        for f in all_maps(X, Y):
            for g in all_maps(Y, Z):
                assert H.mor(g @ f) == H.mor(g) @ H.mor(f)


def test_evseq_preserves_finite_products():
    for d in range(3):
        for m, n in itertools.product(range(4), repeat=2):
            assert ev_product_comparison(standard(m), standard(n), d).is_bijective()


@pytest.mark.parametrize("d,n_max,expected", [(3, 5, 4), (0, 1, 1), (10, 12, 11)])
def test_ev_countable_witness_examples(d, n_max, expected):
    assert ev_countable_witness(d, n_max) == expected == oracles.ev_oracle_witness(d, n_max)


def test_ev_countable_witness_precondition():
    with pytest.raises(ContractViolation):
        ev_countable_witness(3, 3)
