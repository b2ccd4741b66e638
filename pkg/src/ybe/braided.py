"""The braided group G(X, r) of a finite square-free solution.

Every element of G is stored in the normal form ``y . W`` where
``y = x_1^a1 ... x_n^an`` with ``0 <= a_i < p`` and
``W = x_1^(p k1) ... x_n^(p kn)`` lies in the free abelian subgroup F_p
generated by the p-th powers of the letters (p is the cyclic degree).

Because F_p sits inside the socle, an F_p factor moves past any element u
as ``W u = u W^u`` and ``W^u`` just permutes the exponent vector k by the
right action of u on X.  Multiplication therefore never needs conjugation at
word level: positive parts are normalised with the PBW rewriting system and
the overflow above p-1 is pushed into k.

The left and right actions of G on itself are computed on signed words with
the braiding of signed letters (``^s t``, ``s^t``), moving each letter of the
acted-upon word across the acting word.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .pbw import RewriteSystem, find_good_enumeration, relations_of, rewrite
from .solution import (
    Perm,
    SignedWord,
    Solution,
    SolutionError,
    cyclic_degree,
    perm_compose,
    perm_power,
    relabel,
    require_valid,
)

QUOTIENT_BOUND = 10 ** 5

# a signed letter is (letter, +1 | -1)
Letter = tuple[int, int]


@dataclass(frozen=True)
class GroupElement:
    alpha: tuple[int, ...]
    kappa: tuple[int, ...]

    def __str__(self):
        a = ",".join(map(str, self.alpha))
        k = ",".join(map(str, self.kappa))
        return f"alpha=({a}), kappa=({k})"


@dataclass(frozen=True)
class GroupContext:
    solution: Solution  # relabeled so that the identity enumeration is good
    p: int
    rs: RewriteSystem
    enumeration: tuple[int, ...]  # letter of the input solution -> position
    original: Optional[Solution] = field(default=None, compare=False)
    # (alpha, letter, b) -> split of y x^b; filled lazily, never invalidated
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.solution.n

    def translate(self, w: SignedWord) -> SignedWord:
        """Rename a word over the input solution's letters into positions."""
        return tuple((self.enumeration[x], e) for x, e in w)


def make_context(s: Solution) -> GroupContext:
    require_valid(s)
    e = find_good_enumeration(s)
    ordered = relabel(s, e)
    return GroupContext(ordered, cyclic_degree(ordered), relations_of(ordered), e, s)


def identity(ctx: GroupContext) -> GroupElement:
    zero = (0,) * ctx.n
    return GroupElement(zero, zero)


def unit_vector(n: int, i: int, k: int = 1) -> tuple[int, ...]:
    v = [0] * n
    v[i] = k
    return tuple(v)


def generator(ctx: GroupContext, i: int, exponent: int = 1) -> GroupElement:
    return reduce_word(ctx, ((i, exponent),))


def canonical_word(ctx: GroupContext, g: GroupElement) -> SignedWord:
    """x_1^a1 ... x_n^an x_1^(p k1) ... x_n^(p kn)."""
    head = [(i, a) for i, a in enumerate(g.alpha) if a]
    tail = [(i, ctx.p * k) for i, k in enumerate(g.kappa) if k]
    return tuple(head + tail)


# -- normal form -----------------------------------------------------------

def _right_perm(ctx: GroupContext, x: int, k: int) -> Perm:
    return perm_power(ctx.solution.right[x], k)


def _slide(kappa: Sequence[int], perm: Perm) -> list[int]:
    """Exponents of W^u where perm is the right action of u on X."""
    out = [0] * len(kappa)
    for i, k in enumerate(kappa):
        out[perm[i]] += k
    return out


def _split(ctx: GroupContext, gamma: Sequence[int]) -> tuple[list[int], list[int]]:
    """Ordered monomial x^gamma = y . W with y in Y; returns (alpha, kappa of W)."""
    n, p = ctx.n, ctx.p
    alpha = [g % p for g in gamma]
    kappa = [0] * n
    for i in range(n):
        delta = gamma[i] // p
        if not delta:
            continue
        # x_i^(p delta) slides right past x_{i+1}^a_{i+1} ... x_n^a_n
        j = i
        for m in range(i + 1, n):
            if alpha[m]:
                j = _right_perm(ctx, m, alpha[m])[j]
        kappa[j] += delta
    return alpha, kappa


def _times_power(ctx: GroupContext, alpha: Sequence[int], kappa: Sequence[int],
                 x: int, a: int) -> tuple[list[int], list[int]]:
    """(y W) . x^a in normal form."""
    b, c = a % ctx.p, a // ctx.p
    kappa = list(kappa)
    if b:
        # y W x^b = (y x^b) W^(x^b)
        kappa = _slide(kappa, _right_perm(ctx, x, b))
        key = (tuple(alpha), x, b)
        hit = ctx._cache.get(key)
        if hit is None:
            letters = [i for i, ai in enumerate(alpha) for _ in range(ai)] + [x] * b
            nf, _ = rewrite(ctx.rs.rules, letters)
            gamma = [0] * ctx.n
            for i in nf:
                gamma[i] += 1
            hit = ctx._cache[key] = _split(ctx, gamma)
        alpha, extra = hit
        alpha = list(alpha)
        kappa = [k + e for k, e in zip(kappa, extra)]
    else:
        alpha = list(alpha)
    # x^(pc) lies in F_p and merges into W
    kappa[x] += c
    return alpha, kappa


def _mul_word(ctx: GroupContext, g: GroupElement, w: SignedWord) -> GroupElement:
    alpha, kappa = list(g.alpha), list(g.kappa)
    for x, a in w:
        if not 0 <= x < ctx.n:
            raise SolutionError(f"letter index {x} out of range for n={ctx.n}")
        if a:
            alpha, kappa = _times_power(ctx, alpha, kappa, x, a)
    return GroupElement(tuple(alpha), tuple(kappa))


def reduce_word(ctx: GroupContext, w: SignedWord) -> GroupElement:
    """The unique (alpha, kappa) with w = y . W in G."""
    return _mul_word(ctx, identity(ctx), w)


def mul(ctx: GroupContext, g: GroupElement, h: GroupElement) -> GroupElement:
    return _mul_word(ctx, g, canonical_word(ctx, h))


def inv(ctx: GroupContext, g: GroupElement) -> GroupElement:
    w = tuple((x, -e) for x, e in reversed(canonical_word(ctx, g)))
    return reduce_word(ctx, w)


def power(ctx: GroupContext, g: GroupElement, k: int) -> GroupElement:
    if k < 0:
        g, k = inv(ctx, g), -k
    out = identity(ctx)
    for _ in range(k):
        out = mul(ctx, out, g)
    return out


# -- actions of G on itself ---------------------------------------------------

def _letters(w: SignedWord) -> list[Letter]:
    return [(x, 1 if e > 0 else -1) for x, e in w for _ in range(abs(e))]


def _letter_left(s: Solution, actor: Letter) -> Perm:
    x, sign = actor
    # ^{x^-1} y = y^x
    return s.left[x] if sign > 0 else s.right[x]


def _letter_right(s: Solution, actor: Letter) -> Perm:
    x, sign = actor
    # y^{x^-1} = ^x y
    return s.right[x] if sign > 0 else s.left[x]


def braid_words(s: Solution, a: SignedWord, u: SignedWord) -> tuple[SignedWord, SignedWord]:
    """sigma(a, u) = (^a u, a^u) computed letter by letter on signed words.

    Each letter t of u crosses a from right to left; at every crossing the
    pair (s, t) becomes (s^t, ^s t).
    """
    acting = _letters(a)
    moved = []
    for t in _letters(u):
        for idx in range(len(acting) - 1, -1, -1):
            sl = acting[idx]
            acting[idx] = (_letter_right(s, t)[sl[0]], sl[1])
            t = (_letter_left(s, sl)[t[0]], t[1])
        moved.append(t)
    return tuple(moved), tuple(acting)


def act_group(ctx: GroupContext, side: str, actor: GroupElement, target: GroupElement) -> GroupElement:
    """``^actor target`` for side='left', ``target^actor`` for side='right'."""
    a = canonical_word(ctx, actor)
    u = canonical_word(ctx, target)
    if side == "left":
        moved, _ = braid_words(ctx.solution, a, u)
        return reduce_word(ctx, moved)
    if side == "right":
        _, acted = braid_words(ctx.solution, u, a)
        return reduce_word(ctx, acted)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def left_perm(ctx: GroupContext, g: GroupElement) -> Perm:
    """The permutation L(g) of X (left action of g on letters)."""
    out = tuple(range(ctx.n))
    for x, e in canonical_word(ctx, g):
        out = perm_compose(out, perm_power(ctx.solution.left[x], e))
    return out


def in_socle(ctx: GroupContext, g: GroupElement) -> bool:
    """True iff g acts trivially on G from the left.

    The orbit of g under right actions by letters is finite (it factors
    through the permutation group); g lies in the socle iff every element of
    that orbit fixes each letter.
    """
    letters = [generator(ctx, i, e) for i in range(ctx.n) for e in (1, -1)]
    positive = letters[::2]
    seen = {g}
    queue = [g]
    while queue:
        h = queue.pop()
        for x in positive:
            if act_group(ctx, "left", h, x) != x:
                return False
        for x in letters:
            h2 = act_group(ctx, "right", x, h)
            if h2 not in seen:
                seen.add(h2)
                queue.append(h2)
    return True


# -- exhaustive checks on bounded words --------------------------------------

def signed_words(n: int, max_len: int) -> Iterator[SignedWord]:
    letters = [(x, e) for x in range(n) for e in (1, -1)]
    for length in range(max_len + 1):
        yield from itertools.product(letters, repeat=length)


def check_fp_ideal(ctx: GroupContext, word_length_bound: int) -> dict:
    """Normality and G-invariance of F_p over all short words a and W = x_i^(+-p)."""
    if word_length_bound < 0:
        raise ValueError("word_length_bound must be >= 0")
    n = ctx.n
    gens = [GroupElement((0,) * n, unit_vector(n, i, k)) for i in range(n) for k in (1, -1)]
    zero = (0,) * n
    checked = 0
    violations = []
    for w in signed_words(n, word_length_bound):
        a = reduce_word(ctx, w)
        a_inv = inv(ctx, a)
        for W in gens:
            checked += 1
            conj = mul(ctx, mul(ctx, a, W), a_inv)
            image = act_group(ctx, "left", a, W)
            if conj.alpha != zero or image.alpha != zero or conj != image:
                violations.append({"word": w, "W": W.kappa,
                                   "conjugate": str(conj), "action": str(image)})
    return {"checked": checked, "violations": violations, "ok": not violations}


def check_normal_form(ctx: GroupContext, length_bound: int = 4, seed: int = 0,
                      samples: int = 200) -> dict:
    """Homomorphism, idempotence and coset checks for the y.W normal form."""
    n, p = ctx.n, ctx.p
    rng = random.Random(seed)
    failures = []
    reduced = {}
    for w in signed_words(n, length_bound):
        whole = reduced[w] = reduce_word(ctx, w)
        # every prefix and suffix is a shorter word, already reduced
        for cut in range(1, len(w)):
            if mul(ctx, reduced[w[:cut]], reduced[w[cut:]]) != whole:
                failures.append(("homomorphism", w, cut))
                break
    words = len(reduced)
    ys = [tuple(a) for a in itertools.product(range(p), repeat=n)]
    zero = (0,) * n
    for _ in range(samples):
        y = rng.choice(ys)
        z = rng.choice(ys)
        k1 = tuple(rng.randint(-2, 2) for _ in range(n))
        k2 = tuple(rng.randint(-2, 2) for _ in range(n))
        g = GroupElement(y, k1)
        if reduce_word(ctx, canonical_word(ctx, g)) != g:
            failures.append(("idempotent", y, k1))
        coset = mul(ctx, GroupElement(y, zero), GroupElement(zero, k1))
        if coset != g:
            failures.append(("coset", y, k1))
        # the Y-part of a product only depends on the Y-parts of the factors
        if mul(ctx, g, GroupElement(z, k2)).alpha != mul(ctx, GroupElement(y, zero), GroupElement(z, zero)).alpha:
            failures.append(("well_defined", y, z))
    return {"words": words, "samples": samples, "failures": failures, "ok": not failures}


def check_action_identities(ctx: GroupContext, length_bound: int = 2,
                            k_max: Optional[int] = None) -> dict:
    """Identities between actions, inverses and powers of letters.

    For x in X and X^-1, a of word length <= length_bound and 1 <= k <= k_max
    (default 2p).
    """
    if k_max is None:
        k_max = 2 * ctx.p
    L = lambda a, u: act_group(ctx, "left", a, u)
    R = lambda u, a: act_group(ctx, "right", a, u)  # u^a
    xs = [generator(ctx, i, e) for i in range(ctx.n) for e in (1, -1)]
    actors = sorted({reduce_word(ctx, w) for w in signed_words(ctx.n, length_bound)},
                    key=lambda g: (g.alpha, g.kappa))
    failures = []
    checked = 0

    def expect(name, lhs, rhs, a, x, k=None):
        nonlocal checked
        checked += 1
        if lhs != rhs:
            failures.append((name, str(a), str(x), k))

    for a in actors:
        a_inv = inv(ctx, a)
        for x in xs:
            x_inv = inv(ctx, x)
            xa, ax = R(x, a), L(a, x)
            expect("^a(x^a) = x", L(a, xa), x, a, x)
            expect("(^a x)^a = x", R(ax, a), x, a, x)
            expect("^(a^-1) x = x^a", L(a_inv, x), xa, a, x)
            expect("x^(a^-1) = ^a x", R(x, a_inv), ax, a, x)
            expect("(x^a)^-1 = (x^-1)^a", inv(ctx, xa), R(x_inv, a), a, x)
            expect("(^a x)^-1 = ^a(x^-1)", inv(ctx, ax), L(a, x_inv), a, x)
            expect("^(a^x) x = ^a x", L(R(a, x), x), ax, a, x)
            expect("x^(^x a) = x^a", R(x, L(x, a)), xa, a, x)
            for k in range(1, k_max + 1):
                xk = power(ctx, x, k)
                expect("^(a^(x^k)) x = ^a x", L(R(a, xk), x), ax, a, x, k)
                expect("x^(^(x^k) a) = x^a", R(x, L(xk, a)), xa, a, x, k)
                expect("^a(x^k) = (^a x)^k", L(a, xk), power(ctx, ax, k), a, x, k)
                expect("(x^k)^a = (x^a)^k", R(xk, a), power(ctx, xa, k), a, x, k)
    return {"checked": checked, "failures": failures, "ok": not failures}


# -- the finite quotient G / F_p -----------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteBraidedGroup:
    p: int
    n: int
    elements: tuple[tuple[int, ...], ...]  # alpha vectors, base-p order
    mul: np.ndarray         # mul[a, b] = a b
    left_act: np.ndarray    # left_act[a, u] = ^a u
    right_act: np.ndarray   # right_act[u, a] = a^u   (actor first)
    unit: int
    letter_perms: tuple[Perm, ...]  # L_x for each letter x

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, alpha: Sequence[int]) -> int:
        out = 0
        for a in alpha:
            out = out * self.p + a
        return out

    def label(self, i: int) -> str:
        sep = "" if self.p <= 10 else "."
        return sep.join(map(str, self.elements[i]))

    def letter_index(self, i: int) -> int:
        return self.index(unit_vector(self.n, i, 1 % self.p))

    def copy_with(self, **tables) -> "FiniteBraidedGroup":
        fields = dict(p=self.p, n=self.n, elements=self.elements, mul=self.mul,
                      left_act=self.left_act, right_act=self.right_act,
                      unit=self.unit, letter_perms=self.letter_perms)
        fields.update(tables)
        return FiniteBraidedGroup(**fields)


def project(fbg: FiniteBraidedGroup, g: GroupElement) -> int:
    return fbg.index(g.alpha)


def quotient(ctx: GroupContext, bound: int = QUOTIENT_BOUND) -> FiniteBraidedGroup:
    """Tables of G / F_p.

    Products and actions with a single letter are computed in G; the full
    tables are then generated from them along canonical words (u = u' x):
    ``a u = (a u') x``, ``a^u = (a^u')^x`` and ``^a u = (^a u')(^(a^u') x)``.
    """
    n, p = ctx.n, ctx.p
    size = p ** n
    if size > bound:
        raise ValueError(f"quotient of order {size} exceeds bound {bound}")
    elements = tuple(itertools.product(range(p), repeat=n))
    zero = (0,) * n
    index = {a: i for i, a in enumerate(elements)}
    reps = [GroupElement(a, zero) for a in elements]
    xs = [generator(ctx, i) for i in range(n)]

    gen_mul = np.empty((size, n), dtype=np.int64)
    gen_left = np.empty((size, n), dtype=np.int64)   # ^a x_i
    gen_right = np.empty((size, n), dtype=np.int64)  # a^(x_i)
    for a, g in enumerate(reps):
        for i, x in enumerate(xs):
            gen_mul[a, i] = index[mul(ctx, g, x).alpha]
            gen_left[a, i] = index[act_group(ctx, "left", g, x).alpha]
            gen_right[a, i] = index[act_group(ctx, "right", x, g).alpha]

    mul_t = np.empty((size, size), dtype=np.int64)
    left_t = np.empty((size, size), dtype=np.int64)
    right_t = np.empty((size, size), dtype=np.int64)
    unit = index[zero]
    everything = np.arange(size)
    mul_t[:, unit] = everything
    left_t[:, unit] = unit
    right_t[unit, :] = everything
    # u = u' x_i with x_i the last letter of the canonical word of u;
    # elements in order of degree so that u' is always done before u
    steps = []
    for u in sorted(range(size), key=lambda i: (sum(elements[i]), i)):
        if u == unit:
            continue
        alpha = list(elements[u])
        i = max(j for j in range(n) if alpha[j])
        alpha[i] -= 1
        steps.append((u, index[tuple(alpha)], i))
    for u, v, i in steps:
        mul_t[:, u] = gen_mul[mul_t[:, v], i]
    for u, v, i in steps:
        right_t[u, :] = gen_right[right_t[v, :], i]
        left_t[:, u] = mul_t[left_t[:, v], gen_left[right_t[v, :], i]]
    return FiniteBraidedGroup(p, n, elements, mul_t, left_t, right_t, unit,
                              tuple(ctx.solution.left))


def _first_false(mask: np.ndarray) -> Optional[tuple[int, ...]]:
    if mask.all():
        return None
    return tuple(int(v) for v in np.argwhere(~mask)[0])


def check_braided_axioms(fbg: FiniteBraidedGroup) -> dict:
    """Exhaustive check of the group and braided-group axioms on the tables."""
    M, La, Ra, e = fbg.mul, fbg.left_act, fbg.right_act, fbg.unit
    N = fbg.order
    ar = np.arange(N)
    results: dict[str, Optional[tuple[int, ...]]] = {}

    def record(name, mask):
        if results.get(name) is None:
            results[name] = _first_false(mask)

    def is_perm_rows(T):
        return np.array([len(set(row.tolist())) == N for row in T])

    record("unit", (M[e, :] == ar) & (M[:, e] == ar))
    record("inverses", np.array([(M[a, :] == e).sum() == 1 and
                                 (M[np.argmax(M[a, :] == e), a] == e) for a in range(N)]))
    record("ML0", (La[:, e] == e) & (La[e, :] == ar))
    record("MR0", (Ra[:, e] == e) & (Ra[e, :] == ar))
    # M3: u v = (^u v)(u^v)
    record("M3", M == M[La, Ra.T])
    # involutive: sigma(sigma(a, u)) = (a, u) with sigma(a, u) = (^a u, a^u)
    b, c = La, Ra.T
    record("involutive", (La[b, c] == ar[:, None]) & (Ra[c, b] == ar[None, :]))
    record("nondegenerate", is_perm_rows(La) & is_perm_rows(Ra))

    for a in range(N):
        A = a
        # associativity: (a b) c = a (b c)
        record("associative", M[M[A, :], :] == M[A][M])
        # ML1: ^(ab) u = ^a(^b u)
        record("ML1", La[M[A, :], :] == La[A][La])
        # ML2: ^a(u v) = (^a u)(^(a^u) v)
        record("ML2", La[A][M] == M[La[A, :][:, None], La[Ra[:, A]]])
        # MR1: a^(uv) = (a^u)^v
        record("MR1", Ra[M, A] == Ra[ar[None, :], Ra[:, A][:, None]])
        # MR2: (a b)^u = a^(^b u) b^u   (rows: b, columns: u)
        record("MR2", Ra[:, M[A, :]].T == M[Ra[La, A], Ra.T])
    results = {k: v for k, v in results.items()}
    return {
        "order": N,
        "checks": {k: v is None for k, v in results.items()},
        "witnesses": {k: list(v) for k, v in results.items() if v is not None},
        "ok": all(v is None for v in results.values()),
    }


def x_embeds(fbg: FiniteBraidedGroup) -> bool:
    images = {fbg.letter_index(i) for i in range(fbg.n)}
    return len(images) == fbg.n and fbg.unit not in images


# -- the permutation group of left actions -------------------------------------

@dataclass(frozen=True)
class PermGroup:
    generators: tuple[Perm, ...]
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)


def permutation_group(s: Solution) -> PermGroup:
    require_valid(s)
    gens = tuple(s.left)
    ident = tuple(range(s.n))
    elements = {ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for h in gens:
            gh = perm_compose(g, h)
            if gh not in elements:
                elements.add(gh)
                frontier.append(gh)
    return PermGroup(gens, frozenset(elements))


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0 and m > 1:
        m //= p
    return m == 1


def quotient_epimorphism_check(fbg: FiniteBraidedGroup, pg: PermGroup) -> dict:
    """The map y -> L(y) from the quotient onto the permutation group."""
    N = fbg.order
    images = []
    for alpha in fbg.elements:
        perm = tuple(range(fbg.n))
        for x, a in enumerate(alpha):
            perm = perm_compose(perm, perm_power(fbg.letter_perms[x], a))
        images.append(perm)
    same_generators = tuple(pg.generators) == tuple(fbg.letter_perms)
    homomorphism = all(images[fbg.mul[a, b]] == perm_compose(images[a], images[b])
                       for a in range(N) for b in range(N))
    surjective = set(images) == set(pg.elements)
    ident = tuple(range(fbg.n))
    kernel = sum(1 for im in images if im == ident)
    divides = N % pg.order == 0
    prime = fbg.p > 1 and all(fbg.p % d for d in range(2, math.isqrt(fbg.p) + 1))
    report = {
        "quotient_order": N,
        "group_order": pg.order,
        "kernel_order": kernel,
        "same_generators": same_generators,
        "homomorphism": homomorphism,
        "surjective": surjective,
        "divides": divides,
        "p_prime": prime,
        "p_group": _is_power_of(pg.order, fbg.p) if prime else None,
    }
    report["ok"] = (same_generators and homomorphism and surjective and divides
                    and kernel * pg.order == N and report["p_group"] is not False)
    return report


def socle_quotient_order(ctx: GroupContext, fbg: FiniteBraidedGroup) -> int:
    """|Gamma / F_p|: quotient elements acting trivially on X."""
    return sum(1 for alpha in fbg.elements
               if left_perm(ctx, GroupElement(alpha, (0,) * ctx.n)) == tuple(range(ctx.n)))
