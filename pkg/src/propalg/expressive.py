"""Definability of the conditional from unary/binary operator catalogs.

The conditional connective cannot be written with one- and two-place
operators alone under the finer congruences; under the coarser ones it can.
This module provides the machinery to corroborate both directions at desk
scale: the shallow T/F strippers, the three-atom shape property they induce,
bounded enumeration of everything a catalog can express, and a first-witness
search for a given target.

Every "absent" verdict is relative to the stated bounds (catalog body depth,
number of binary applications, retained canonical depth); the searches
corroborate the general theorems, they do not prove them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from functools import lru_cache

from .congruence import _combine, basic_form, equal, normalize
from .errors import BudgetExceededError
from .terms import (
    FALSE,
    TRUE,
    Atom,
    AtomTerm,
    Cond,
    FalseConst,
    Term,
    TrueConst,
    Variety,
    depth,
    enumerate_basic_forms,
)

# Placeholder atoms for operator bodies.
X = Atom("x")
Y = Atom("y")

SEARCH_BUDGET = 10**8


@dataclass(frozen=True)
class OperatorCatalog:
    """Unary and binary operator bodies over the placeholders x (and y)."""

    unary_ops: tuple[Term, ...]
    binary_ops: tuple[Term, ...]
    body_depth_bound: int

    @staticmethod
    def full(body_depth: int) -> "OperatorCatalog":
        """Every operator definable by a conditional-composition body of the
        given depth: all basic forms over {x} (unary) and {x, y} (binary)."""
        unary = tuple(t for t in enumerate_basic_forms(("x",), body_depth) if not _is_const(t))
        binary = tuple(
            t
            for t in enumerate_basic_forms(("x", "y"), body_depth)
            if _mentions(t, X) and _mentions(t, Y)
        )
        return OperatorCatalog(unary, binary, body_depth)

    @staticmethod
    def negation_or() -> "OperatorCatalog":
        """The restricted catalog {T, not, left-or} (T is in the base set)."""
        neg = basic_form(Cond(FALSE, AtomTerm(X), TRUE))
        left_or = basic_form(Cond(TRUE, AtomTerm(X), AtomTerm(Y)))
        return OperatorCatalog((neg,), (left_or,), 1)

    @staticmethod
    def negation_and_or() -> "OperatorCatalog":
        """The catalog {not, left-and, left-or}."""
        neg = basic_form(Cond(FALSE, AtomTerm(X), TRUE))
        left_and = basic_form(Cond(AtomTerm(Y), AtomTerm(X), FALSE))
        left_or = basic_form(Cond(TRUE, AtomTerm(X), AtomTerm(Y)))
        return OperatorCatalog((neg,), (left_and, left_or), 1)


@dataclass(frozen=True)
class CompositionTerm:
    term: Term  # fr-canonical form
    two_place_count: int


def _is_const(t: Term) -> bool:
    return isinstance(t, (TrueConst, FalseConst))


def _mentions(t: Term, a: Atom) -> bool:
    if isinstance(t, AtomTerm):
        return t.atom == a
    if isinstance(t, Cond):
        return _mentions(t.left, a) or _mentions(t.cond, a) or _mentions(t.right, a)
    return False


# ---------------------------------------------------------------------------
# Shallow strippers and the three-atom shape property


def t_simplify(p: Term, a: Atom) -> Term:
    """Strip leading tests of a from p under the assumption "a replied T":
    constants are fixed, a different central atom stops, a matching one
    recurses into the T-branch."""
    if _is_const(p):
        return p
    assert isinstance(p, Cond)
    if p.cond.atom == a:  # type: ignore[union-attr]
        return t_simplify(p.left, a)
    return p


def f_simplify(p: Term, a: Atom) -> Term:
    """Dual of t_simplify: strip under the assumption "a replied F"."""
    if _is_const(p):
        return p
    assert isinstance(p, Cond)
    if p.cond.atom == a:  # type: ignore[union-attr]
        return f_simplify(p.right, a)
    return p


def phi_abc(p: Term, a: Atom, b: Atom, c: Atom) -> bool:
    """The shape property of a <| b |> c under contractive congruence.

    On the contractive canonical form of p: after the b-test, the T-side must
    be decided by a single a-test with distinct constant outcomes, and the
    F-side likewise by a single c-test.
    """
    if len({a, b, c}) != 3:
        raise ValueError("phi_abc needs three distinct atoms")
    q = normalize(p, Variety.CR)

    def _decided_by(side: Term, atm: Atom) -> bool:
        if not isinstance(side, Cond) or side.cond != AtomTerm(atm):
            return False
        t_out = normalize(t_simplify(side, atm), Variety.CR)
        f_out = normalize(f_simplify(side, atm), Variety.CR)
        return _is_const(t_out) and _is_const(f_out) and t_out != f_out

    return _decided_by(t_simplify(q, b), a) and _decided_by(f_simplify(q, b), c)


# ---------------------------------------------------------------------------
# Catalog closure


@lru_cache(maxsize=None)
def _apply(body: Term, u: Term, v: Term | None) -> Term:
    """Basic form of body[x := u, y := v]; all three already basic.

    Folding over the body reuses the memoized combine step, which is what
    makes the catalog closure affordable.
    """
    if isinstance(body, (TrueConst, FalseConst)):
        return body
    assert isinstance(body, Cond)
    central = body.cond.atom  # type: ignore[union-attr]
    left = _apply(body.left, u, v)
    right = _apply(body.right, u, v)
    if central == X:
        return _combine(left, u, right)
    assert central == Y and v is not None
    return _combine(left, v, right)


def _apply_unary(body: Term, u: Term) -> Term:
    return _apply(body, u, None)


def _apply_binary(body: Term, u: Term, v: Term) -> Term:
    return _apply(body, u, v)


def enumerate_tc12(
    atom_names: tuple[str, ...] | frozenset[str] | set[str],
    catalog: OperatorCatalog,
    max_2p: int,
    result_depth: int = 3,
    budget: int = SEARCH_BUDGET,
) -> list[CompositionTerm]:
    """All closed catalog compositions with at most max_2p binary applications.

    Deduplicated modulo fr-canonical form (keeping the least two_place_count),
    retaining only results whose canonical depth stays within result_depth;
    deterministic order.  The depth cap is part of the reported bounds of any
    absence verdict derived from the output.
    """
    names = sorted(atom_names)
    steps = 0

    def tick() -> None:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExceededError(f"catalog closure budget {budget} exhausted")

    seen: dict[Term, int] = {}
    strata: list[list[Term]] = []

    def admit(t: Term, c: int, fresh: list[Term]) -> None:
        if depth(t) > result_depth or t in seen:
            return
        seen[t] = c
        fresh.append(t)

    def unary_close(frontier: list[Term], c: int) -> list[Term]:
        out = list(frontier)
        work = list(frontier)
        while work:
            u = work.pop(0)
            for body in catalog.unary_ops:
                tick()
                fresh: list[Term] = []
                admit(_apply_unary(body, u), c, fresh)
                out.extend(fresh)
                work.extend(fresh)
        return out

    base: list[Term] = []
    for t in (TRUE, FALSE, *(Cond(TRUE, AtomTerm(Atom(n)), FALSE) for n in names)):
        fresh: list[Term] = []
        admit(t, 0, fresh)
        base.extend(fresh)
    strata.append(unary_close(base, 0))

    for c in range(1, max_2p + 1):
        frontier: list[Term] = []
        for body in catalog.binary_ops:
            for c1 in range(c):
                for u in strata[c1]:
                    for v in strata[c - 1 - c1]:
                        tick()
                        admit(_apply_binary(body, u, v), c, frontier)
        strata.append(unary_close(frontier, c))

    return [CompositionTerm(t, seen[t]) for stratum in strata for t in stratum]


def search_equivalent(
    target: Term,
    k: Variety,
    atom_names: tuple[str, ...] | frozenset[str] | set[str],
    catalog: OperatorCatalog,
    max_2p: int,
    result_depth: int = 3,
    budget: int = SEARCH_BUDGET,
) -> Optional[CompositionTerm]:
    """First enumerated composition k-equal to the target, or None.

    The enumeration order is fixed, so identical inputs yield the identical
    witness.
    """
    goal = normalize(target, Variety.FR)
    for cand in enumerate_tc12(atom_names, catalog, max_2p, result_depth, budget):
        if k == Variety.FR:
            if cand.term == goal:
                return cand
        elif equal(cand.term, target, k):
            return cand
    return None


def mem_definability_check() -> bool:
    """(b land a) lor (not b land c) coincides with a <| b |> c under the
    memorizing congruence, but under neither the weakly memorizing nor the
    free congruence."""
    a, b, c = AtomTerm(Atom("a")), AtomTerm(Atom("b")), AtomTerm(Atom("c"))
    neg_b = Cond(FALSE, b, TRUE)
    b_and_a = Cond(a, b, FALSE)
    nb_and_c = Cond(c, neg_b, FALSE)
    lhs = Cond(TRUE, b_and_a, nb_and_c)
    rhs = Cond(a, b, c)
    return (
        equal(lhs, rhs, Variety.MEM)
        and not equal(lhs, rhs, Variety.WM)
        and not equal(lhs, rhs, Variety.FR)
    )


__all__ = [
    "OperatorCatalog",
    "CompositionTerm",
    "t_simplify",
    "f_simplify",
    "phi_abc",
    "enumerate_tc12",
    "search_equivalent",
    "mem_definability_check",
    "SEARCH_BUDGET",
]
