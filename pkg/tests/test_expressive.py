import pytest

from propalg.congruence import basic_form, equal
from propalg.errors import BudgetExceededError
from propalg.expressive import (
    OperatorCatalog,
    enumerate_tc12,
    f_simplify,
    mem_definability_check,
    phi_abc,
    search_equivalent,
    t_simplify,
)
from propalg.syntax import desugar, parse
from propalg.terms import TRUE, Atom, Variety, is_basic

A = Atom("a")
B = Atom("b")
C = Atom("c")


def core(text):
    return basic_form(desugar(parse(text)))


# --- catalogs --------------------------------------------------------------


def test_full_catalog_sizes():
    c1 = OperatorCatalog.full(1)
    # Depth-1 bodies over two placeholders cannot mention both.
    assert len(c1.unary_ops) == 4
    assert len(c1.binary_ops) == 0
    c2 = OperatorCatalog.full(2)
    assert len(c2.unary_ops) == 36
    assert len(c2.binary_ops) == 128
    assert all(is_basic(b) for b in c2.unary_ops + c2.binary_ops)


def test_restricted_catalogs():
    assert len(OperatorCatalog.negation_or().binary_ops) == 1
    assert len(OperatorCatalog.negation_and_or().binary_ops) == 2


# --- shallow strippers and the shape property ------------------------------


def test_simplify_strips_leading_tests():
    p = core("b <| a |> c")
    assert t_simplify(p, A) == core("b")
    assert f_simplify(p, A) == core("c")
    # A different central atom stops the stripping.
    assert t_simplify(p, B) == p
    nested = core("(c <| a |> F) <| a |> F")
    assert t_simplify(nested, A) == core("c")


def test_phi_abc_holds_for_the_conditional():
    assert phi_abc(core("a <| b |> c"), A, B, C)
    # Unaffected by contractible padding.
    assert phi_abc(core("(a <| b |> c) <| b |> (a <| b |> c)"), A, B, C)


def test_phi_abc_fails_off_shape():
    assert not phi_abc(core("a land b"), A, B, C)
    assert not phi_abc(core("(b land a) lor (not b land c)"), A, B, C)
    with pytest.raises(ValueError):
        phi_abc(core("a"), A, A, C)


# --- catalog closure -------------------------------------------------------


def test_enumerate_tc12_contains_the_expected_compositions():
    catalog = OperatorCatalog.negation_or()
    out = enumerate_tc12(("a", "b"), catalog, 2, result_depth=3)
    by_term = {ct.term: ct.two_place_count for ct in out}
    assert by_term[core("a lor b")] == 1
    assert by_term[core("not a")] == 0
    assert by_term[TRUE] == 0
    # Deduplicated, deterministic, two-place counts are minimal.
    assert len(by_term) == len(out) == 466
    assert out == enumerate_tc12(("a", "b"), catalog, 2, result_depth=3)
    assert by_term[core("a lor a")] == 1


def test_enumerate_tc12_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_tc12(("a", "b"), OperatorCatalog.negation_or(), 2, budget=10)


# --- searches --------------------------------------------------------------


def test_search_finds_de_morgan_witness():
    target = desugar(parse("not (a land b)"))
    w = search_equivalent(target, Variety.FR, ("a", "b"), OperatorCatalog.negation_or(), 3)
    assert w is not None
    assert w.two_place_count == 1
    assert equal(w.term, target, Variety.FR)


def test_search_determinism_and_absence():
    catalog = OperatorCatalog.negation_or()
    target = desugar(parse("not (a land b)"))
    first = search_equivalent(target, Variety.FR, ("a", "b"), catalog, 3)
    assert first == search_equivalent(target, Variety.FR, ("a", "b"), catalog, 3)
    # The conditional over three atoms is out of reach at tiny bounds.
    missing = search_equivalent(
        desugar(parse("a <| b |> c")), Variety.FR, ("a", "b", "c"), catalog, 1, result_depth=2
    )
    assert missing is None


def test_mem_definability():
    assert mem_definability_check()
