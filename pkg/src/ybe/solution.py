"""Finite quadratic sets (X, r) given by left/right action tables.

Letters of X are the integers 0..n-1 (rendered ``x1..xn`` in text).  A
solution is stored as two tables::

    left[x][y]  = L_x(y)      (the left action  ^x y)
    right[y][x] = R_y(x)      (the right action x^y)

so that ``r(x, y) = (left[x][y], right[y][x])``.  Both tables are kept even
though for square-free solutions the right one is the inverse of the left one
row by row; ``validate`` cross-checks them.

Signed words are tuples of ``(letter, exponent)`` pairs with nonzero
exponents, the empty tuple being the identity.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

Perm = tuple[int, ...]
SignedWord = tuple[tuple[int, int], ...]

ENUMERATION_BOUND = 5

AXIOMS = ("nondegenerate", "square_free", "involutive", "lri", "braided")


class SolutionError(ValueError):
    """Raised for malformed tables or solutions that fail validation."""


# -- permutations as image tuples ----------------------------------------

def is_permutation(row: Sequence[int], n: int) -> bool:
    return len(row) == n and sorted(row) == list(range(n))


def perm_inverse(perm: Perm) -> Perm:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


def perm_compose(f: Perm, g: Perm) -> Perm:
    """Return f o g (apply g first)."""
    return tuple(f[i] for i in g)


def perm_power(perm: Perm, k: int) -> Perm:
    if k < 0:
        perm, k = perm_inverse(perm), -k
    out = tuple(range(len(perm)))
    base = perm
    while k:
        if k & 1:
            out = perm_compose(base, out)
        base = perm_compose(base, base)
        k >>= 1
    return out


def perm_order(perm: Perm) -> int:
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        order = math.lcm(order, length)
    return order


def cycle_to_perm(n: int, *cycles: Sequence[int]) -> Perm:
    """Build a permutation of 0..n-1 from disjoint cycles."""
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + type(cyc)(cyc[:1])):
            img[a] = b
    return tuple(img)


# -- solutions -------------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    n: int
    left: tuple[Perm, ...]
    right: tuple[Perm, ...]
    name: Optional[str] = field(default=None, compare=False)

    def r(self, x: int, y: int) -> tuple[int, int]:
        return self.left[x][y], self.right[y][x]

    def __str__(self):
        rows = "; ".join(" ".join(str(v + 1) for v in row) for row in self.left)
        return f"Solution(n={self.n}, left=[{rows}])"


@dataclass(frozen=True)
class ValidationReport:
    nondegenerate: bool
    involutive: bool
    braided: bool
    square_free: bool
    lri_holds: bool
    # (axiom, indices) for the first failing instance, if any
    first_violation: Optional[tuple[str, tuple[int, ...]]] = None

    @property
    def ok(self) -> bool:
        return self.first_violation is None

    def as_dict(self) -> dict:
        return {
            "nondegenerate": self.nondegenerate,
            "involutive": self.involutive,
            "braided": self.braided,
            "square_free": self.square_free,
            "lri": self.lri_holds,
            "first_violation": (
                None if self.first_violation is None
                else {"axiom": self.first_violation[0],
                      "letters": [i + 1 for i in self.first_violation[1]]}
            ),
        }


def from_left_action(left: Sequence[Sequence[int]], name: Optional[str] = None) -> Solution:
    """Build the solution r(x, y) = (L_x(y), L_y^{-1}(x)) from 0-based left tables.

    Only row bijectivity is checked; run ``validate`` for the axioms.
    """
    n = len(left)
    if n < 1:
        raise SolutionError("a solution needs at least one letter")
    rows = []
    for x, row in enumerate(left):
        row = tuple(int(v) for v in row)
        if not is_permutation(row, n):
            raise SolutionError(f"row {x + 1} not a permutation")
        rows.append(row)
    right = tuple(perm_inverse(row) for row in rows)
    return Solution(n, tuple(rows), right, name)


def trivial(n: int) -> Solution:
    ident = tuple(range(n))
    return from_left_action([ident] * n, name=f"trivial({n})")


def holds(s: Solution, axiom: str, args: tuple[int, ...]) -> bool:
    """Evaluate one instance of an axiom; used by validate and to replay witnesses."""
    n, left, right = s.n, s.left, s.right
    if axiom == "nondegenerate":
        (x,) = args
        return is_permutation(left[x], n) and is_permutation(right[x], n)
    if axiom == "square_free":
        (x,) = args
        return left[x][x] == x and right[x][x] == x
    if axiom == "involutive":
        x, y = args
        z, t = s.r(x, y)
        return s.r(z, t) == (x, y)
    if axiom == "lri":
        x, y = args
        return right[x][left[x][y]] == y and left[x][right[x][y]] == y
    if axiom == "braided":
        x, y, z = args
        # r12 r23 r12
        a, b = s.r(x, y)
        b, c = s.r(b, z)
        a, b = s.r(a, b)
        lhs = (a, b, c)
        # r23 r12 r23
        b, c = s.r(y, z)
        a, b = s.r(x, b)
        b, c = s.r(b, c)
        return lhs == (a, b, c)
    raise ValueError(f"unknown axiom {axiom!r}")


def _instances(n: int, axiom: str) -> Iterator[tuple[int, ...]]:
    arity = {"nondegenerate": 1, "square_free": 1, "involutive": 2, "lri": 2, "braided": 3}[axiom]
    return itertools.product(range(n), repeat=arity)


def validate(s: Solution) -> ValidationReport:
    flags = {}
    first = None
    for axiom in AXIOMS:
        ok = True
        # tables that are not permutations make later checks meaningless but harmless
        for args in _instances(s.n, axiom):
            if not holds(s, axiom, args):
                ok = False
                if first is None:
                    first = (axiom, args)
                break
        flags[axiom] = ok
    return ValidationReport(
        nondegenerate=flags["nondegenerate"],
        involutive=flags["involutive"],
        braided=flags["braided"],
        square_free=flags["square_free"],
        lri_holds=flags["lri"],
        first_violation=first,
    )


def require_valid(s: Solution) -> None:
    report = validate(s)
    if not report.ok:
        axiom, args = report.first_violation
        letters = ", ".join(f"x{i + 1}" for i in args)
        raise SolutionError(f"not a square-free solution: {axiom} fails at ({letters})")


def cyclic_degree(s: Solution) -> int:
    """lcm of the orders of the left actions L_x."""
    require_valid(s)
    return math.lcm(*(perm_order(row) for row in s.left))


def relabel(s: Solution, sigma: Sequence[int]) -> Solution:
    """Rename every letter x as sigma[x]."""
    n = s.n
    left = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            left[sigma[x]][sigma[y]] = sigma[s.left[x][y]]
    return from_left_action(left, name=s.name)


def are_isomorphic(s1: Solution, s2: Solution) -> bool:
    if s1.n != s2.n:
        return False
    return any(relabel(s1, sigma).left == s2.left
               for sigma in itertools.permutations(range(s1.n)))


# -- actions of signed words on X -------------------------------------------

def _check_letter(s: Solution, x: int) -> None:
    if not 0 <= x < s.n:
        raise SolutionError(f"letter index {x} out of range for n={s.n}")


def letter_perm(s: Solution, side: str, letter: int, exponent: int) -> Perm:
    """Permutation of X by which x^e acts on the given side.

    Inverse letters act through the opposite table: ^{x^-1}y = y^x and
    y^{x^-1} = ^x y.
    """
    _check_letter(s, letter)
    if side == "left":
        base = s.left[letter] if exponent > 0 else s.right[letter]
    elif side == "right":
        base = s.right[letter] if exponent > 0 else s.left[letter]
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return perm_power(base, abs(exponent))


def word_perm(s: Solution, side: str, word: SignedWord) -> Perm:
    """The permutation of X induced by a signed word acting on the given side."""
    out = tuple(range(s.n))
    for letter, exponent in word:
        p = letter_perm(s, side, letter, exponent)
        # left: ^{ab}y = ^a(^b y);  right: y^{ab} = (y^a)^b
        out = perm_compose(out, p) if side == "left" else perm_compose(p, out)
    return out


def act(s: Solution, side: str, actor: SignedWord, target: int) -> int:
    _check_letter(s, target)
    return word_perm(s, side, actor)[target]


# -- words -------------------------------------------------------------------

_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, n: int) -> SignedWord:
    """Parse ``"x3 x1^-2"`` (1-based letters) into a 0-based signed word."""
    word = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise SolutionError(f"bad word token {tok!r}")
        letter = int(m.group(1)) - 1
        exponent = int(m.group(2)) if m.group(2) is not None else 1
        if not 0 <= letter < n:
            raise SolutionError(f"letter {tok!r} out of range for n={n}")
        if exponent:
            word.append((letter, exponent))
    return tuple(word)


def format_word(word: SignedWord) -> str:
    return " ".join(f"x{x + 1}" if e == 1 else f"x{x + 1}^{e}" for x, e in word) or "1"


def word(*letters: int) -> SignedWord:
    """Positive word from 0-based letters."""
    return tuple((x, 1) for x in letters)


# -- enumeration of small square-free solutions ---------------------------------

def _partial_r(L: dict, Linv: dict, x: int, y: int) -> tuple[int, int]:
    return L[x][y], Linv[y][x]


def _partial_ok(n: int, L: dict, Linv: dict) -> bool:
    """Check every involutive/braid instance decidable from the assigned rows."""
    for x, y in itertools.product(range(n), repeat=2):
        try:
            z, t = _partial_r(L, Linv, x, y)
            if _partial_r(L, Linv, z, t) != (x, y):
                return False
        except KeyError:
            pass
    for x, y, z in itertools.product(range(n), repeat=3):
        try:
            a, b = _partial_r(L, Linv, x, y)
            b, c = _partial_r(L, Linv, b, z)
            a, b = _partial_r(L, Linv, a, b)
            lhs = (a, b, c)
            b, c = _partial_r(L, Linv, y, z)
            a, b = _partial_r(L, Linv, x, b)
            b, c = _partial_r(L, Linv, b, c)
            if lhs != (a, b, c):
                return False
        except KeyError:
            pass
    return True


def canonical_form(s: Solution) -> tuple[Perm, ...]:
    """Lexicographically least left table over all relabelings."""
    return min(relabel(s, sigma).left for sigma in itertools.permutations(range(s.n)))


def enumerate_square_free(n: int, up_to_iso: bool = False,
                          bound: int = ENUMERATION_BOUND) -> list[Solution]:
    """All square-free solutions on n letters, sorted by left table.

    With ``up_to_iso`` each isomorphism class is represented by its canonical
    (lexicographically least) relabeling.
    """
    if n < 1:
        raise SolutionError("n must be positive")
    if n > bound:
        raise SolutionError(f"n={n} exceeds enumeration bound {bound}")

    # L_x ranges over permutations fixing x
    choices = [[p for p in itertools.permutations(range(n)) if p[x] == x] for x in range(n)]
    found = []

    def extend(x: int, L: dict, Linv: dict) -> None:
        if x == n:
            s = from_left_action([L[i] for i in range(n)])
            if validate(s).ok:
                found.append(s)
            return
        for p in choices[x]:
            L[x], Linv[x] = p, perm_inverse(p)
            if _partial_ok(n, L, Linv):
                extend(x + 1, L, Linv)
            del L[x], Linv[x]

    extend(0, {}, {})
    if up_to_iso:
        canon = {canonical_form(s) for s in found}
        found = [from_left_action(t) for t in canon]
    found.sort(key=lambda s: s.left)
    return found
