"""Symbolic lattice terms and a decision procedure for ordered contexts.

Terms are meets and joins of variables and the two constants.  The
grammar (ASCII, left associative, meet binds tighter):

    term ::= disj
    disj ::= conj { "\\/" conj }
    conj ::= atom { "/\\" atom }
    atom ::= "0" | "1" | ident | "(" term ")"
    ident ::= letter { letter | digit | "_" }

Equality of two terms under order hypotheses is decided by evaluating
both over every monotone 0/1 valuation of the context.  That is sound
and complete for bounded distributive lattices: every such lattice
embeds into a power of the two-element chain, and the coordinates of
the embedding are exactly the monotone 0/1 valuations, so an equation
holds in every model satisfying the hypotheses iff it survives them
all.  Contexts may carry a disjunctive case split; a case whose
constraints admit no valuation is vacuously true and flagged as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence, Union

__all__ = [
    "BOT",
    "Decision",
    "Join",
    "Meet",
    "ObligationRecord",
    "OrderContext",
    "TOP",
    "Term",
    "TermSyntaxError",
    "Var",
    "decide_equal",
    "eval_term",
    "monotone_valuations",
    "parse_term",
    "print_term",
    "term_vars",
    "verify_retract_identity_symbolic",
]


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class TopConst:
    pass


@dataclass(frozen=True)
class BotConst:
    pass


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


Term = Union[Var, TopConst, BotConst, Meet, Join]

TOP = TopConst()
BOT = BotConst()


class TermSyntaxError(Exception):
    """A lexical or parse error, with the offending token position."""

    def __init__(self, message: str, token_index: int) -> None:
        super().__init__(f"{message} (at token {token_index})")
        self.token_index = token_index


def _tokenize(src: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if src.startswith("/\\", i) or src.startswith("\\/", i):
            tokens.append(src[i : i + 2])
            i += 2
            continue
        if ch in "()":
            tokens.append(ch)
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            lit = src[i:j]
            if lit not in ("0", "1"):
                raise TermSyntaxError(
                    f"numeric literal must be 0 or 1, got {lit!r}", len(tokens)
                )
            tokens.append(lit)
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(src[i:j])
            i = j
            continue
        raise TermSyntaxError(f"unexpected character {ch!r}", len(tokens))
    return tokens


def parse_term(src: str) -> Term:
    tokens = _tokenize(src)
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def atom() -> Term:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise TermSyntaxError("expected an atom, found end of input", pos)
        if tok == "(":
            pos += 1
            t = disj()
            if peek() != ")":
                raise TermSyntaxError("expected ')'", pos)
            pos += 1
            return t
        if tok == "0":
            pos += 1
            return BOT
        if tok == "1":
            pos += 1
            return TOP
        if tok[0].isalpha():
            pos += 1
            return Var(tok)
        raise TermSyntaxError(f"expected an atom, found {tok!r}", pos)

    def conj() -> Term:
        nonlocal pos
        t = atom()
        while peek() == "/\\":
            pos += 1
            t = Meet(t, atom())
        return t

    def disj() -> Term:
        nonlocal pos
        t = conj()
        while peek() == "\\/":
            pos += 1
            t = Join(t, conj())
        return t

    t = disj()
    if pos != len(tokens):
        raise TermSyntaxError(f"unexpected token {tokens[pos]!r}", pos)
    return t


def _prec(t: Term) -> int:
    if isinstance(t, Join):
        return 1
    if isinstance(t, Meet):
        return 2
    return 3


def print_term(t: Term) -> str:
    """Minimal parentheses; parse(print_term(t)) == t exactly."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, TopConst):
        return "1"
    if isinstance(t, BotConst):
        return "0"
    if isinstance(t, Meet):
        op, me = r" /\ ", 2
    else:
        op, me = r" \/ ", 1
    left = print_term(t.left)
    if _prec(t.left) < me:
        left = f"({left})"
    right = print_term(t.right)
    # Same-precedence right children need parens to keep left associativity.
    if _prec(t.right) <= me:
        right = f"({right})"
    return left + op + right


def term_vars(t: Term) -> tuple[str, ...]:
    """Variable names in first-occurrence order."""
    seen: dict[str, None] = {}

    def walk(t: Term) -> None:
        if isinstance(t, Var):
            seen.setdefault(t.name)
        elif isinstance(t, (Meet, Join)):
            walk(t.left)
            walk(t.right)

    walk(t)
    return tuple(seen)


def subst(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Meet):
        return Meet(subst(t.left, mapping), subst(t.right, mapping))
    if isinstance(t, Join):
        return Join(subst(t.left, mapping), subst(t.right, mapping))
    return t


def eval_term(
    t: Term,
    assignment: Mapping[str, int],
    *,
    meet: Callable[[int, int], int],
    join: Callable[[int, int], int],
    bottom: int,
    top: int,
) -> int:
    if isinstance(t, Var):
        return assignment[t.name]
    if isinstance(t, TopConst):
        return top
    if isinstance(t, BotConst):
        return bottom
    if isinstance(t, Meet):
        return meet(
            eval_term(t.left, assignment, meet=meet, join=join, bottom=bottom, top=top),
            eval_term(t.right, assignment, meet=meet, join=join, bottom=bottom, top=top),
        )
    return join(
        eval_term(t.left, assignment, meet=meet, join=join, bottom=bottom, top=top),
        eval_term(t.right, assignment, meet=meet, join=join, bottom=bottom, top=top),
    )


def _eval01(t: Term, val: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        return val[t.name]
    if isinstance(t, TopConst):
        return 1
    if isinstance(t, BotConst):
        return 0
    if isinstance(t, Meet):
        left = _eval01(t.left, val)
        return _eval01(t.right, val) if left else 0
    left = _eval01(t.left, val)
    return 1 if left else _eval01(t.right, val)


@dataclass(frozen=True)
class OrderContext:
    """Declared variables, order hypotheses, optional disjunctive cases.

    Constraints are (hi, lo) pairs meaning hi >= lo.  When cases are
    present, an equation must hold under the base constraints extended
    by each case in turn.
    """

    variables: tuple[str, ...]
    constraints: tuple[tuple[str, str], ...] = ()
    cases: tuple[tuple[tuple[str, str], ...], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(
            self, "constraints", tuple(tuple(c) for c in self.constraints)
        )
        if self.cases is not None:
            object.__setattr__(
                self,
                "cases",
                tuple(tuple(tuple(c) for c in case) for case in self.cases),
            )
            if not self.cases:
                raise ValueError("a case split needs at least one case")
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise ValueError("duplicate variable declaration")
        all_constraints = list(self.constraints)
        for case in self.cases or ():
            all_constraints.extend(case)
        for hi, lo in all_constraints:
            for v in (hi, lo):
                if v not in declared:
                    raise ValueError(f"constraint mentions undeclared variable {v!r}")


def monotone_valuations(
    variables: Sequence[str], constraints: Sequence[tuple[str, str]]
) -> list[dict[str, int]]:
    """All 0/1 valuations satisfying every hi >= lo constraint.

    Depth-first with pruning, assigning 0 before 1 per variable, so the
    output order is lexicographic and deterministic.
    """
    index = {v: i for i, v in enumerate(variables)}
    for hi, lo in constraints:
        if hi not in index or lo not in index:
            raise ValueError(f"constraint ({hi}, {lo}) mentions undeclared variables")
    # Constraints checked as soon as both endpoints are assigned.
    by_last: list[list[tuple[int, int]]] = [[] for _ in variables]
    for hi, lo in constraints:
        i, j = index[hi], index[lo]
        by_last[max(i, j)].append((i, j))

    out: list[dict[str, int]] = []
    val = [0] * len(variables)

    def assign(pos: int) -> None:
        if pos == len(variables):
            out.append({v: val[i] for i, v in enumerate(variables)})
            return
        for bit in (0, 1):
            val[pos] = bit
            if all(val[i] >= val[j] for i, j in by_last[pos]):
                assign(pos + 1)

    assign(0)
    return out


@dataclass(frozen=True)
class Decision:
    """Outcome of decide_equal."""

    equal: bool
    counterexample: tuple[int, dict[str, int]] | None
    vacuous_cases: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.equal


class UndeclaredVariableError(Exception):
    pass


def decide_equal(t1: Term, t2: Term, ctx: OrderContext) -> Decision:
    """Decide t1 == t2 over every bounded distributive lattice model of ctx.

    Returns a falsifying (case index, valuation) when the terms differ,
    and flags case indices whose constraints admit no valuation at all.
    """
    declared = set(ctx.variables)
    for t in (t1, t2):
        for v in term_vars(t):
            if v not in declared:
                raise UndeclaredVariableError(f"term mentions undeclared {v!r}")
    cases = ctx.cases if ctx.cases is not None else ((),)
    vacuous: list[int] = []
    for case_index, extra in enumerate(cases):
        valuations = monotone_valuations(
            ctx.variables, tuple(ctx.constraints) + tuple(extra)
        )
        if not valuations:
            vacuous.append(case_index)
            continue
        for val in valuations:
            if _eval01(t1, val) != _eval01(t2, val):
                return Decision(False, (case_index, val), tuple(vacuous))
    return Decision(True, None, tuple(vacuous))


# ---------------------------------------------------------------------------
# The retract identities, decided once and for all over symbolic chains.


@dataclass(frozen=True)
class ObligationRecord:
    """One named proof obligation with its outcome."""

    name: str
    status: str  # "pass" | "fail"
    detail: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"


def _fmt_valuation(val: Mapping[str, int]) -> str:
    return ", ".join(f"{k}={v}" for k, v in val.items())


def verify_retract_identity_symbolic(
    n: int, k: int, *, bound: int = 12
) -> list[ObligationRecord]:
    """Decide every retract obligation for dimension n, face k, symbolically.

    The context is a weakly decreasing chain x1 >= ... >= xn (padding
    x0 = 1 and x(n+1) = 0 handled by substitution) plus an interval pair
    y1 >= y2.  The retraction formula joins y1 below position k and
    meets y2 above it.  Inner k passes everything; k = 0 and k = n fail
    exactly the horn case obligation that needs a flat at the matching
    end, reported rather than raised.
    """
    if not 1 <= n <= bound:
        raise ValueError(f"dimension {n} outside 1..{bound}")
    if not 0 <= k <= n:
        raise ValueError(f"face index {k} outside 0..{n}")

    def xt(i: int) -> Term:
        if i == 0:
            return TOP
        if i == n + 1:
            return BOT
        return Var(f"x{i}")

    y1, y2 = Var("y1"), Var("y2")
    xvars = tuple(f"x{i}" for i in range(1, n + 1))
    chain = tuple((f"x{i}", f"x{i+1}") for i in range(1, n))
    x_ctx = OrderContext(xvars, chain)
    xy_vars = xvars + ("y1", "y2")
    xy_constraints = chain + (("y1", "y2"),)

    def out(i: int) -> Term:
        return Join(xt(i), y1) if i <= k else Meet(xt(i), y2)

    records: list[ObligationRecord] = []

    def run(name: str, t1: Term, t2: Term, ctx: OrderContext) -> None:
        d = decide_equal(t1, t2, ctx)
        if d.equal:
            records.append(ObligationRecord(name, "pass"))
        else:
            case_index, val = d.counterexample  # type: ignore[misc]
            records.append(
                ObligationRecord(
                    name,
                    "fail",
                    f"counterexample: {_fmt_valuation(val)}",
                )
            )

    # Section lands in the interval shape: x_k >= x_{k+1}.
    run("s_cod-delta2", Join(xt(k), xt(k + 1)), xt(k), x_ctx)

    # Retraction after section is the identity, coordinate by coordinate.
    for i in range(0, n + 2):
        if i <= k:
            t1 = Join(xt(i), xt(k))
        else:
            t1 = Meet(xt(i), xt(k + 1))
        run(f"rs-identity-i{i}", t1, xt(i), x_ctx)

    # Retraction output is a valid padded point.
    xy_ctx = OrderContext(xy_vars, xy_constraints)
    run("r_cod-top", out(0), TOP, xy_ctx)
    run("r_cod-bottom", out(n + 1), BOT, xy_ctx)
    for i in range(0, n + 1):
        run(f"r_cod-monotone-i{i}", Join(out(i), out(i + 1)), out(i), xy_ctx)

    # A flat away from k in the input stays flat in the output.
    for j in range(0, n + 1):
        if j == k:
            continue
        if j == 0:
            mapping: dict[str, Term] = {"x1": TOP}
        elif j == n:
            mapping = {f"x{n}": BOT}
        else:
            mapping = {f"x{j+1}": Var(f"x{j}")}

        def rewrite(v: str) -> Term:
            return mapping.get(v, Var(v))

        kept_vars = tuple(v for v in xy_vars if v not in mapping)
        new_constraints = []
        for hi, lo in xy_constraints:
            hi_t, lo_t = rewrite(hi), rewrite(lo)
            if hi_t == lo_t or isinstance(hi_t, TopConst) or isinstance(lo_t, BotConst):
                continue
            # Substitutions here only ever map variables to variables or
            # endpoint constants, so both sides stay variables now.
            new_constraints.append((hi_t.name, lo_t.name))  # type: ignore[union-attr]
        ctx_j = OrderContext(kept_vars, tuple(new_constraints))
        run(
            f"r_dom-horn-face-j{j}",
            subst(out(j), mapping),
            subst(out(j + 1), mapping),
            ctx_j,
        )

    # Interval horn inputs: if y1 = 1 the output must be flat at 0,
    # which forces k != 0; if y2 = 0 it must be flat at n, forcing k != n.
    if k == 0:
        records.append(
            ObligationRecord(
                "r_dom-horn-case-y1",
                "fail",
                "needs a flat at position 0, but that is the left-out face (j = 0 = k)",
            )
        )
    else:
        mapping = {"y1": TOP}
        ctx_y1 = OrderContext(xvars + ("y2",), chain)
        run(
            "r_dom-horn-case-y1",
            subst(out(0), mapping),
            subst(out(1), mapping),
            ctx_y1,
        )
    if k == n:
        records.append(
            ObligationRecord(
                "r_dom-horn-case-y2",
                "fail",
                f"needs a flat at position {n}, but that is the left-out face (j = {n} = k)",
            )
        )
    else:
        mapping = {"y2": BOT}
        ctx_y2 = OrderContext(xvars + ("y1",), chain)
        run(
            "r_dom-horn-case-y2",
            subst(out(n), mapping),
            subst(out(n + 1), mapping),
            ctx_y2,
        )
    return records
