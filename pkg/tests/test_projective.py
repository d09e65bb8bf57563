import pytest
from hypothesis import given, settings, strategies as st

from propalg.congruence import basic_form
from propalg.errors import BudgetExceededError, SyntaxValidationError
from propalg.projective import (
    BUILTIN_SPECS,
    CondRhs,
    IndexedSpec,
    approximants,
    dump_spec,
    eval_spec,
    is_projective,
    load_spec,
    primes_spec,
    project,
    seq_cond,
    unfold_projection,
)
from propalg.syntax import desugar, parse
from propalg.terms import FALSE, TRUE, Atom, Cond, atom, depth
from propalg.valuation import constant_table, static_table

A = Atom("a")
AT = atom("a")
BT = atom("b")


def core(text):
    return desugar(parse(text))


_leaf = st.sampled_from([TRUE, FALSE, AT, BT, atom("c")])
_terms = st.recursive(
    _leaf, lambda ch: st.tuples(ch, ch, ch).map(lambda t: Cond(*t)), max_leaves=8
)


# --- finite projections ----------------------------------------------------


def test_project_truncates_query_levels():
    t = core("b <| a |> c")
    assert project(1, t) == core("T <| a |> F")
    assert project(2, t) == basic_form(t)
    assert project(1, TRUE) is TRUE
    with pytest.raises(ValueError):
        project(0, t)


@given(_terms, st.integers(min_value=1, max_value=4))
@settings(max_examples=60)
def test_projections_are_monotone_and_stabilize(t, n):
    # pi_n(pi_{n+1}(t)) = pi_n(t), and beyond depth(t) projection is identity.
    assert project(n, project(n + 1, t)) == project(n, t)
    assert project(depth(t) + 1, t) == basic_form(t)


@given(_terms)
@settings(max_examples=40)
def test_projection_sequences_are_projective(t):
    levels = [project(n, t) for n in range(1, depth(t) + 2)]
    assert is_projective(levels)


def test_is_projective_rejects_mismatch():
    assert not is_projective([core("T <| a |> F"), basic_form(core("b <| c |> b"))])
    with pytest.raises(ValueError):
        is_projective([])


def test_seq_cond_is_componentwise():
    p = [project(n, core("a")) for n in (1, 2)]
    q = [project(n, core("b")) for n in (1, 2)]
    r = [project(n, core("F")) for n in (1, 2)]
    combined = seq_cond(p, q, r)
    assert is_projective(combined)
    assert combined[1] == project(2, core("a <| b |> F"))
    with pytest.raises(ValueError):
        seq_cond(p, q, [r[0]])


# --- linear specifications -------------------------------------------------


SPEC_TEXT = """\
# X1 diverges on a-replies T, stops on the b-probe otherwise
X1 = X3 <| a |> X2
X2 = b then X1
X3 = T
"""


def test_load_and_dump_spec():
    spec = load_spec(SPEC_TEXT)
    assert spec.start == "X1"
    assert spec.equations["X2"] == CondRhs("X1", Atom("b"), "X1")
    assert load_spec(dump_spec(spec)).equations == spec.equations


@pytest.mark.parametrize(
    "text",
    [
        "X1 = X2 <| a |> X1\n",  # undeclared X2
        "X1 = T\nX1 = F\n",  # duplicate
        "X1 = a\n",  # malformed rhs
        "Y1 = T\n",  # bad variable name
        "",  # no equations
    ],
)
def test_load_spec_rejects_malformed(text):
    with pytest.raises(SyntaxValidationError):
        load_spec(text)


def test_unfold_projection_levels():
    spec = load_spec(SPEC_TEXT)
    assert unfold_projection(spec, "X1", 1) == core("T <| a |> F")
    assert unfold_projection(spec, "X1", 2) == basic_form(core("T <| a |> b"))
    assert unfold_projection(spec, "X1", 3) == basic_form(
        Cond(TRUE, AT, Cond(core("T <| a |> F"), BT, core("T <| a |> F")))
    )
    with pytest.raises(SyntaxValidationError):
        unfold_projection(spec, "X9", 1)


def test_approximants_form_projective_sequences():
    spec = load_spec(SPEC_TEXT)
    approx = approximants(spec, "X1", 5)
    assert len(approx.levels) == 5
    assert is_projective(approx.levels)


def test_indexed_primes_spec():
    approx = approximants(primes_spec(), 0, 5)
    names = []
    t = approx.levels[-1]
    while isinstance(t, Cond):
        names.append(t.cond.atom.name)
        t = t.left
    # Atom at level i is a exactly when i is prime (0,1,2,3,4 -> b,b,a,a,b).
    assert names == ["b", "b", "a", "a", "b"]
    assert is_projective(approx.levels)
    assert "@primes" in BUILTIN_SPECS


def test_unfold_budget():
    spec = IndexedSpec(lambda i: (2 * i + 1, A, 2 * i + 2))
    with pytest.raises(BudgetExceededError):
        unfold_projection(spec, 0, 30, budget=100)


# --- operational evaluation ------------------------------------------------


def test_eval_spec_terminates_or_diverges():
    spec = load_spec(SPEC_TEXT)
    # All-T replies: X1 -> X3 -> T immediately.
    assert eval_spec(spec, "X1", constant_table((A, Atom("b")), 4, True), 10) == "T"
    # a replies F, then the b-guard loops back to X1 forever.
    all_f = constant_table((A, Atom("b")), 8, False)
    assert eval_spec(spec, "X1", all_f, 8) == "diverged"
    assert eval_spec(spec, "X3", all_f, 0) == "T"


def test_eval_spec_agrees_with_projections():
    # When evaluation halts within n queries, it matches the n-th projection.
    from propalg.valuation import evaluate

    spec = load_spec(SPEC_TEXT)
    h = static_table({A: True, Atom("b"): False}, 4)
    assert eval_spec(spec, "X1", h, 4) == "T"
    assert evaluate(unfold_projection(spec, "X1", 4), h).value is True


def test_eval_spec_fuel_zero():
    spec = load_spec("X1 = a then X1\n")
    h = constant_table((A,), 2, True)
    assert eval_spec(spec, "X1", h, 0) == "diverged"
