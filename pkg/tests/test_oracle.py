"""The lazy table oracle, cross-validated against explicit enumeration."""

import itertools

import pytest

from propalg.errors import BudgetExceededError, DepthExhaustedError
from propalg.oracle import (
    compare_terms,
    generate_tables,
    materialize_table,
    satisfying_assignment,
)
from propalg.terms import (
    FALSE,
    TRUE,
    Atom,
    Cond,
    Variety,
    atom,
    depth,
    enumerate_basic_forms,
)
from propalg.valuation import enumerate_tables, evaluate, in_variety

A = Atom("a")
B = Atom("b")
AT = atom("a")
BT = atom("b")


def _table_key(h):
    return tuple(sorted(h.replies.items()))


@pytest.mark.parametrize("k", list(Variety))
def test_state_model_matches_explicit_enumeration_depth2(k):
    lazy = {_table_key(h) for h in generate_tables(k, (A, B), 2)}
    explicit = {_table_key(h) for h in enumerate_tables((A, B), 2, k)}
    assert lazy == explicit


@pytest.mark.parametrize(
    "k",
    [Variety.FR, Variety.RP, Variety.CR, Variety.WM, Variety.MEM, Variety.ST,
     Variety.PMEM, Variety.CR_PMEM, Variety.WM_NMEM],
)
def test_state_model_matches_explicit_enumeration_depth3(k):
    lazy = {_table_key(h) for h in generate_tables(k, (A, B), 3)}
    explicit = {_table_key(h) for h in enumerate_tables((A, B), 3, k)}
    assert lazy == explicit


def test_generated_tables_are_members_and_distinct():
    seen = set()
    for h in generate_tables(Variety.WM, (A, B), 3):
        assert in_variety(h, Variety.WM)
        key = _table_key(h)
        assert key not in seen
        seen.add(key)
    assert len(seen) == 36


# --- compare_terms vs. brute force -----------------------------------------


def _brute_verdict(p, q, k, alphabet, obs_depth):
    value_ok = True
    residual_ok = True
    for h in enumerate_tables(alphabet, obs_depth, k):
        r1 = evaluate(p, h)
        r2 = evaluate(q, h)
        if r1.value != r2.value:
            return "value"
        rem = obs_depth - max(len(r1.trace), len(r2.trace))
        if rem > 0:
            d1 = h.residual(r1.trace) if r1.trace else h
            d2 = h.residual(r2.trace) if r2.trace else h
            for tau in itertools.chain.from_iterable(
                itertools.product(h.names, repeat=n) for n in range(1, rem + 1)
            ):
                if d1.reply(tau) != d2.reply(tau):
                    residual_ok = False
    return "congruent" if residual_ok else "derivative"


@pytest.mark.parametrize(
    "k", [Variety.FR, Variety.RP, Variety.CR, Variety.WM, Variety.MEM, Variety.ST]
)
def test_compare_terms_matches_brute_force(k):
    forms = enumerate_basic_forms(("a", "b"), 1)
    pairs = [(p, q) for p in forms for q in forms]
    for p, q in pairs:
        expected = _brute_verdict(p, q, k, (A, B), 3)
        got = compare_terms(p, q, k, (A, B), 3, residuals=True)
        assert got == expected, (p, q, k)


def test_compare_terms_three_way_verdicts():
    aa = Cond(Cond(TRUE, AT, FALSE), AT, FALSE)
    # a and aa always take equal values under rp but differ in residual depth
    # under fr; at fr even the values differ.
    assert compare_terms(AT, aa, Variety.FR, (A,), 3, residuals=True) == "value"
    assert compare_terms(AT, aa, Variety.RP, (A,), 3, residuals=False) == "congruent"
    assert compare_terms(AT, aa, Variety.RP, (A,), 3, residuals=True) == "congruent"
    a_then_t = Cond(TRUE, AT, TRUE)
    # T and "a then T" always take the value T, but evaluating the right-hand
    # side consumes an a-query whose reply future queries can observe.
    assert compare_terms(TRUE, a_then_t, Variety.FR, (A,), 3, residuals=False) == "congruent"
    assert compare_terms(TRUE, a_then_t, Variety.FR, (A,), 3, residuals=True) == "derivative"
    # Statically the state never advances, so the pair is fully congruent.
    assert compare_terms(TRUE, a_then_t, Variety.ST, (A,), 3, residuals=True) == "congruent"


# --- witnesses -------------------------------------------------------------


def test_satisfying_assignment_replay():
    p = Cond(FALSE, AT, Cond(TRUE, BT, FALSE))  # needs a=F then b=T
    assign = satisfying_assignment(p, Variety.FR, (A, B), 3, target=True)
    assert assign is not None
    h = materialize_table(Variety.FR, (A, B), 3, assign)
    assert evaluate(p, h).value is True


def test_satisfying_assignment_none_for_unsatisfiable():
    assert satisfying_assignment(FALSE, Variety.FR, (A,), 2, target=True) is None
    # "a then not a": memorized replies make this a contradiction.
    contra = Cond(Cond(FALSE, AT, TRUE), AT, FALSE)
    assert satisfying_assignment(contra, Variety.MEM, (A,), 3, target=True) is None
    # The same term is satisfiable when the second reply may flip.
    assert satisfying_assignment(contra, Variety.FR, (A,), 3, target=True) is not None


def test_materialized_tables_respect_the_variety():
    for k in (Variety.RP, Variety.CR, Variety.WM, Variety.MEM, Variety.ST, Variety.PMEM):
        h = materialize_table(k, (A, B), 3, {}, default=True)
        assert in_variety(h, k), k


# --- resource guards -------------------------------------------------------


def test_budget_exhaustion_raises():
    deep = Cond(TRUE, AT, FALSE)
    for _ in range(6):
        deep = Cond(deep, BT, deep)
    with pytest.raises(BudgetExceededError):
        compare_terms(deep, deep, Variety.FR, (A, B), depth(deep) + 1, True, budget=10)


def test_depth_exhaustion_raises():
    with pytest.raises(DepthExhaustedError):
        compare_terms(Cond(BT, AT, BT), TRUE, Variety.FR, (A, B), 1, residuals=False)
