"""Quadratic rewriting systems of square-free solutions and monoid normal forms.

Under an enumeration x_1 < ... < x_n every descent x_j x_i (j > i) is rewritten
to r(x_j, x_i).  When the three binomial-ring conditions hold the rules form a
confluent, deg-lex decreasing system and the ordered monomials
x_1^g1 ... x_n^gn are exactly the normal forms of the monoid S(X, r).

Enumerations are tuples ``e`` with ``e[letter] = position``; all rules and
normal forms are expressed in positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .solution import (
    SignedWord,
    Solution,
    SolutionError,
    from_left_action,
    relabel,
    require_valid,
    validate,
)

Enumeration = tuple[int, ...]
MonoidNF = tuple[int, ...]

ORDER_SEARCH_BOUND = 8


class OrderingError(RuntimeError):
    """No enumeration turns the relations into a binomial skew polynomial ring."""


class NotConfluentError(ValueError):
    pass


@dataclass(frozen=True)
class RewriteSystem:
    n: int
    rules: dict  # (j, i) with j > i  ->  (i', j')
    enumeration: Enumeration
    cond_a: bool
    cond_b: bool
    cond_c: bool

    @property
    def ok(self) -> bool:
        return self.cond_a and self.cond_b and self.cond_c

    def flags(self) -> dict:
        return {"a": self.cond_a, "b": self.cond_b, "c": self.cond_c}


def identity_enumeration(n: int) -> Enumeration:
    return tuple(range(n))


def _rules(s: Solution) -> dict:
    return {(j, i): s.r(j, i) for j in range(s.n) for i in range(j)}


def _condition_a(rules: dict) -> bool:
    return all(j > a and a < b for (j, i), (a, b) in rules.items())


def _condition_b(n: int, rules: dict) -> bool:
    return set(rules.values()) == {(i, j) for j in range(n) for i in range(j)}


def rewrite(rules: dict, letters: Sequence[int], max_steps: Optional[int] = None) -> tuple[list[int], int]:
    """Rewrite the leftmost descent until none is left; return (word, steps)."""
    w = list(letters)
    if max_steps is None:
        # each step lowers the word in lex order among words of fixed length and content
        max_steps = 1 + len(w) ** 2 * max(1, len(rules)) ** 2
    steps = 0
    t = 0
    while t < len(w) - 1:
        if w[t] > w[t + 1]:
            w[t], w[t + 1] = rules[w[t], w[t + 1]]
            steps += 1
            if steps > max_steps:
                raise NotConfluentError("rewriting did not terminate")
            t = max(t - 1, 0)
        else:
            t += 1
    return w, steps


def _overlaps_resolve(rules: dict, n: int) -> bool:
    for k, j, i in itertools.product(range(n), repeat=3):
        if not k > j > i:
            continue
        a, b = rules[k, j]
        left, _ = rewrite(rules, [a, b, i])
        b, c = rules[j, i]
        right, _ = rewrite(rules, [k, b, c])
        if left != right:
            return False
    return True


def relations_of(s: Solution, e: Optional[Enumeration] = None) -> RewriteSystem:
    """Rewrite system of ``s`` with letters renamed to positions by ``e``."""
    if e is None:
        e = identity_enumeration(s.n)
    if sorted(e) != list(range(s.n)):
        raise ValueError(f"{e} is not an enumeration of {s.n} letters")
    ordered = relabel(s, e)
    rules = _rules(ordered)
    cond_a = _condition_a(rules)
    cond_b = _condition_b(s.n, rules)
    # without (a) leading terms are not the descents, so the rules cannot be a Groebner basis
    cond_c = cond_a and _overlaps_resolve(rules, s.n)
    return RewriteSystem(s.n, rules, tuple(e), cond_a, cond_b, cond_c)


def find_good_enumeration(s: Solution, bound: int = ORDER_SEARCH_BOUND) -> Enumeration:
    """Lexicographically least enumeration giving a binomial skew polynomial ring."""
    require_valid(s)
    if s.n > bound:
        raise OrderingError(f"n={s.n} exceeds ordering search bound {bound}")
    for e in itertools.permutations(range(s.n)):
        ordered = relabel(s, e)
        rules = _rules(ordered)
        if not _condition_a(rules) or not _condition_b(s.n, rules):
            continue
        if _overlaps_resolve(rules, s.n):
            return e
    raise OrderingError("no good enumeration found")


def normal_form_monoid(rs: RewriteSystem, w: SignedWord) -> MonoidNF:
    """Exponent vector of the ordered monomial equal to the positive word ``w``."""
    if not rs.ok:
        raise NotConfluentError(f"rewrite system fails conditions {rs.flags()}")
    letters = []
    for x, e in w:
        if e < 0:
            raise ValueError("monoid words must have positive exponents")
        if not 0 <= x < rs.n:
            raise SolutionError(f"letter index {x} out of range for n={rs.n}")
        letters.extend([x] * e)
    nf, _ = rewrite(rs.rules, letters)
    gamma = [0] * rs.n
    for x in nf:
        gamma[x] += 1
    return tuple(gamma)


def solution_from_rewrite_system(rs: RewriteSystem) -> Solution:
    """Read the square-free solution (in position labels) off the relations."""
    if not rs.ok:
        raise NotConfluentError(f"rewrite system fails conditions {rs.flags()}")
    n = rs.n
    left = [[None] * n for _ in range(n)]
    for x in range(n):
        left[x][x] = x
    for (j, i), (a, b) in rs.rules.items():
        left[j][i] = a
        # involutive mirror r(x_a, x_b) = (x_j, x_i)
        left[a][b] = j
    if any(v is None for row in left for v in row):
        raise NotConfluentError("relations do not determine r on every pair")
    s = from_left_action(left)
    report = validate(s)
    if not report.ok or _rules(s) != rs.rules:
        raise NotConfluentError("relations do not define a square-free solution")
    return s
