"""Lazy quantification over all valuation tables of a variety.

Explicitly enumerating all depth-d tables is hopeless (their number is doubly
exponential), but an evaluation only ever consults the replies along its own
trace.  This module therefore walks the space of tables as a DFS over reply
choices: a table state is a canonical history of (atom, reply) pairs, the
variety's laws determine which replies are forced by the history, and every
unforced reply is a free parameter keyed by (history, atom).  Assigning the
free parameters in all ways visits exactly one representative scenario per
distinguishable table behaviour, so universal and existential statements about
"all tables of the variety at depth d" can be decided without materializing
any table.

The state transition rules per variety:

  fr      nothing forced; every state distinct.
  rp      re-querying the immediately preceding atom repeats its reply
          (the residual still advances).
  cr      as rp, but the repeated query also leaves the state unchanged.
  wm      a re-query of ``a`` is absorbed (reply repeated, state unchanged)
          while all replies since the last query of ``a`` are equal to it.
  mem     a re-query of ``a`` is always absorbed.
  st      replies depend on the queried atom only; the state never changes.
  pmem    a T reply to ``a`` forces T on every later query of ``a``.
  nmem    dually with F.
  crpmem and friends: the two component rules combined.

Correctness of these rules against the string-level variety constraints is
cross-validated in the test suite by exhaustive comparison with explicitly
enumerated tables at small depth.
"""

from __future__ import annotations

from typing import Optional

from .errors import BudgetExceededError, DepthExhaustedError
from .terms import Atom, AtomTerm, Cond, FalseConst, Term, TrueConst, Variety

Hist = tuple[tuple[str, bool], ...]

ORACLE_BUDGET = 10**9


def _resolve(k: Variety, hist: Hist, name: str):
    """Classify the next query of ``name`` in state ``hist``.

    Returns ``(forced_value, key)`` where exactly one of the two is not None:
    either the history forces the reply, or the reply is the free parameter
    identified by ``key``.
    """
    if k == Variety.FR:
        return None, (hist, name)
    if k == Variety.RP or k == Variety.CR:
        if hist and hist[-1][0] == name:
            return hist[-1][1], None
        return None, (hist, name)
    if k == Variety.WM:
        for j in range(len(hist) - 1, -1, -1):
            if hist[j][0] == name:
                v = hist[j][1]
                if all(entry[1] == v for entry in hist[j + 1 :]):
                    return v, None
                break
        return None, (hist, name)
    if k == Variety.MEM:
        for entry in hist:
            if entry[0] == name:
                return entry[1], None
        return None, (hist, name)
    if k == Variety.ST:
        return None, (name,)
    if k == Variety.PMEM:
        if (name, True) in hist:
            return True, None
        return None, (hist, name)
    if k == Variety.NMEM:
        if (name, False) in hist:
            return False, None
        return None, (hist, name)
    if k in (Variety.CR_PMEM, Variety.CR_NMEM):
        if hist and hist[-1][0] == name:
            return hist[-1][1], None
        kept = k == Variety.CR_PMEM
        if (name, kept) in hist:
            return kept, None
        return None, (hist, name)
    if k in (Variety.WM_PMEM, Variety.WM_NMEM):
        forced, key = _resolve(Variety.WM, hist, name)
        if forced is not None:
            return forced, None
        kept = k == Variety.WM_PMEM
        if (name, kept) in hist:
            return kept, None
        return None, (hist, name)
    raise ValueError(f"unsupported variety: {k}")


def _advance(k: Variety, hist: Hist, name: str, value: bool, forced: bool) -> Hist:
    """The state after the query (forced re-queries may be absorbed)."""
    if k == Variety.ST:
        return hist
    if forced:
        if k in (Variety.RP, Variety.PMEM, Variety.NMEM):
            return hist + ((name, value),)
        if k in (Variety.CR, Variety.WM, Variety.MEM):
            return hist
        if k in (Variety.CR_PMEM, Variety.CR_NMEM):
            if hist and hist[-1][0] == name:
                return hist
            return hist + ((name, value),)
        if k in (Variety.WM_PMEM, Variety.WM_NMEM):
            if _resolve(Variety.WM, hist, name)[0] is not None:
                return hist
            return hist + ((name, value),)
        # fr never forces
        raise AssertionError
    return hist + ((name, value),)


class _Ctx:
    __slots__ = ("variety", "names", "depth", "assign", "steps", "budget", "witness")

    def __init__(self, variety: Variety, names: tuple[str, ...], depth: int, budget: int):
        self.variety = variety
        self.names = names
        self.depth = depth
        self.assign: dict = {}
        self.steps = 0
        self.budget = budget
        self.witness: Optional[dict] = None

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceededError(f"oracle step budget {self.budget} exhausted")


def _query(ctx: _Ctx, hist: Hist, name: str, n: int, forall: bool, cont) -> bool:
    ctx.tick()
    if n >= ctx.depth:
        raise DepthExhaustedError("evaluation needs more queries than the oracle depth")
    forced, key = _resolve(ctx.variety, hist, name)
    if forced is not None:
        return cont(forced, _advance(ctx.variety, hist, name, forced, True), n + 1)
    if key in ctx.assign:
        v = ctx.assign[key]
        return cont(v, _advance(ctx.variety, hist, name, v, False), n + 1)
    for v in (True, False):
        ctx.assign[key] = v
        ok = cont(v, _advance(ctx.variety, hist, name, v, False), n + 1)
        del ctx.assign[key]
        if forall and not ok:
            return False
        if not forall and ok:
            return True
    return forall


def _eval(ctx: _Ctx, t: Term, hist: Hist, n: int, forall: bool, cont) -> bool:
    if isinstance(t, TrueConst):
        return cont(True, hist, n)
    if isinstance(t, FalseConst):
        return cont(False, hist, n)
    if isinstance(t, AtomTerm):
        return _query(ctx, hist, t.atom.name, n, forall, cont)
    if isinstance(t, Cond):

        def after_cond(v: bool, h: Hist, m: int, _t=t) -> bool:
            return _eval(ctx, _t.left if v else _t.right, h, m, forall, cont)

        return _eval(ctx, t.cond, hist, n, forall, after_cond)
    raise TypeError(f"not a core term: {t!r}")


def _determined(ctx: _Ctx, hist: Hist, name: str):
    """Resolve a query against laws and already-assigned parameters.

    Returns (value, key, forced_by_law); value is None when the reply is a
    still-unassigned free parameter (then key identifies it).
    """
    forced, key = _resolve(ctx.variety, hist, name)
    if forced is not None:
        return forced, None, True
    if key in ctx.assign:
        return ctx.assign[key], None, False
    return None, key, False


def _residuals_eq(ctx: _Ctx, h1: Hist, h2: Hist, rem: int) -> bool:
    """True iff every table completion gives the two states identical reply
    behaviour on all extensions of length <= rem."""
    if rem <= 0 or h1 == h2:
        return True
    k = ctx.variety
    for name in ctx.names:
        ctx.tick()
        v1, key1, law1 = _determined(ctx, h1, name)
        v2, key2, law2 = _determined(ctx, h2, name)
        if v1 is not None and v2 is not None:
            if v1 != v2:
                return False
            n1 = _advance(k, h1, name, v1, law1)
            n2 = _advance(k, h2, name, v2, law2)
            if not _residuals_eq(ctx, n1, n2, rem - 1):
                return False
        elif v1 is None and v2 is None:
            if key1 != key2:
                return False
            for v in (True, False):
                ctx.assign[key1] = v
                ok = _residuals_eq(
                    ctx,
                    _advance(k, h1, name, v, False),
                    _advance(k, h2, name, v, False),
                    rem - 1,
                )
                del ctx.assign[key1]
                if not ok:
                    return False
        else:
            # Determined on one side, free on the other: a completion that
            # sets the free parameter to the opposite value distinguishes.
            return False
    return True


def compare_terms(
    p: Term,
    q: Term,
    k: Variety,
    alphabet: tuple[Atom, ...],
    depth: int,
    residuals: bool,
    budget: int = ORACLE_BUDGET,
) -> str:
    """Compare two terms over every variety table at the given depth.

    Returns ``"congruent"`` when values (and, if requested, residuals after
    the evaluation traces) agree for every table; ``"value"`` when some table
    gives different values; ``"derivative"`` when values always agree but some
    table leaves distinguishable residuals.
    """
    names = tuple(a.name for a in alphabet)

    def run(check_residuals: bool) -> bool:
        ctx = _Ctx(k, names, depth, budget)

        def after_p(v1: bool, h1: Hist, n1: int) -> bool:
            def leaf(v2: bool, h2: Hist, n2: int) -> bool:
                if v1 != v2:
                    return False
                if not check_residuals:
                    return True
                return _residuals_eq(ctx, h1, h2, ctx.depth - max(n1, n2))

            return _eval(ctx, q, (), 0, True, leaf)

        return _eval(ctx, p, (), 0, True, after_p)

    if not run(False):
        return "value"
    if residuals and not run(True):
        return "derivative"
    return "congruent"


def satisfying_assignment(
    p: Term,
    k: Variety,
    alphabet: tuple[Atom, ...],
    depth: int,
    target: bool,
    budget: int = ORACLE_BUDGET,
) -> Optional[dict]:
    """A free-parameter assignment under which p evaluates to target, or None.

    The first witness in the deterministic DFS order (T branches first).
    """
    names = tuple(a.name for a in alphabet)
    ctx = _Ctx(k, names, depth, budget)

    def leaf(v: bool, h: Hist, n: int) -> bool:
        if v == target:
            ctx.witness = dict(ctx.assign)
            return True
        return False

    found = _eval(ctx, p, (), 0, False, leaf)
    return ctx.witness if found else None


def materialize_table(
    k: Variety,
    alphabet: tuple[Atom, ...],
    depth: int,
    assign: dict,
    default: bool = True,
):
    """Complete a partial free-parameter assignment into an explicit table.

    Unassigned free parameters take the default reply; forced replies follow
    the variety's laws, so the result is always a member of the variety.
    """
    from .valuation import ValuationTable

    names = tuple(a.name for a in sorted(alphabet))
    scratch = dict(assign)
    replies: dict = {}

    def walk(hist: Hist, prefix: tuple[str, ...]) -> None:
        if len(prefix) == depth:
            return
        for name in names:
            forced, key = _resolve(k, hist, name)
            if forced is not None:
                v = forced
                nxt = _advance(k, hist, name, v, True)
            else:
                v = scratch.setdefault(key, default)
                nxt = _advance(k, hist, name, v, False)
            replies[prefix + (name,)] = v
            walk(nxt, prefix + (name,))

    walk((), ())
    return ValuationTable(tuple(sorted(alphabet)), depth, replies)


def generate_tables(k: Variety, alphabet: tuple[Atom, ...], depth: int):
    """Yield every distinct variety table at the given depth via the state model.

    Exponential; intended for small cross-validation sweeps in tests.
    """
    names = tuple(a.name for a in sorted(alphabet))

    def first_unassigned_key(assign: dict):
        # Walk the full tree and return the first unassigned free key, if any.
        def walk(hist: Hist, prefix: tuple[str, ...]):
            if len(prefix) == depth:
                return None
            for name in names:
                forced, key = _resolve(k, hist, name)
                if forced is not None:
                    v = forced
                    nxt = _advance(k, hist, name, v, True)
                else:
                    if key not in assign:
                        return key
                    v = assign[key]
                    nxt = _advance(k, hist, name, v, False)
                missing = walk(nxt, prefix + (name,))
                if missing is not None:
                    return missing
            return None

        return walk((), ())

    def rec(assign: dict):
        missing = first_unassigned_key(assign)
        if missing is None:
            yield materialize_table(k, alphabet, depth, assign)
            return
        for v in (True, False):
            assign[missing] = v
            yield from rec(assign)
            del assign[missing]

    yield from rec({})
