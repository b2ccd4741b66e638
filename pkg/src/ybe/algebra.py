"""Exact arithmetic in the group algebra k[G] over Q or a prime field.

An element of k[G] is a finite map from group elements (in y.W normal form)
to nonzero scalars.  Laurent polynomials over k[F_p] are maps from exponent
vectors k (standing for x_1^(p k1) ... x_n^(p kn)) to scalars; F_p is free
abelian, so they multiply by adding exponents.

Since G is the disjoint union of the cosets y F_p, collecting terms by their
Y-part writes any element as sum_y y . f_y (right decomposition) or, moving
the F_p factor across y with ``y W = (^y W) y``, as sum_y f'_y . y.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from . import braided
from .braided import GroupContext, GroupElement


class FieldMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """Q when ``char`` is 0, otherwise the prime field with ``char`` elements."""

    char: int = 0

    def __post_init__(self):
        q = self.char
        if q < 0 or q == 1 or (q > 1 and any(q % d == 0 for d in range(2, int(q ** 0.5) + 1))):
            raise ValueError(f"characteristic must be 0 or a prime, got {q}")

    def __call__(self, value):
        if self.char == 0:
            return Fraction(value)
        value = Fraction(value)
        return value.numerator * pow(value.denominator, -1, self.char) % self.char

    @property
    def name(self) -> str:
        return "rational" if self.char == 0 else f"p:{self.char}"


QQ = Field(0)


def parse_field(text: str) -> Field:
    """``rational`` or ``p:<q>``."""
    if text == "rational":
        return QQ
    if text.startswith("p:"):
        return Field(int(text[2:]))
    raise ValueError(f"unknown field {text!r}")


def _combine(field: Field, *maps: Mapping) -> dict:
    out: dict = {}
    for m in maps:
        for key, c in m.items():
            out[key] = field(out.get(key, 0) + c)
    return {k: c for k, c in out.items() if c != 0}


class LaurentPoly:
    """Element of k[F_p]: exponent vector (in units of p) -> scalar."""

    def __init__(self, terms: Mapping[tuple[int, ...], object], field: Field = QQ):
        self.field = field
        self.terms = {tuple(k): field(c) for k, c in terms.items() if field(c) != 0}

    @classmethod
    def monomial(cls, kappa, coeff=1, field: Field = QQ):
        return cls({tuple(kappa): coeff}, field)

    def __add__(self, other):
        self._same_field(other)
        return LaurentPoly(_combine(self.field, self.terms, other.terms), self.field)

    def __mul__(self, other):
        self._same_field(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out, self.field)

    def permuted(self, perm) -> "LaurentPoly":
        """Rename exponent position i as perm[i]."""
        out = {}
        for k, c in self.terms.items():
            new = [0] * len(k)
            for i, v in enumerate(k):
                new[perm[i]] = v
            out[tuple(new)] = c
        return LaurentPoly(out, self.field)

    def _same_field(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field.name} vs {other.field.name}")

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.field == other.field and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.terms!r})"


class AlgebraElement:
    """Element of k[G]: group element -> nonzero scalar."""

    def __init__(self, terms: Mapping[GroupElement, object], field: Field = QQ):
        self.field = field
        self.terms = {g: field(c) for g, c in terms.items() if field(c) != 0}

    def _same_field(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field.name} vs {other.field.name}")

    def __add__(self, other):
        return algebra_add(self, other)

    def __neg__(self):
        return algebra_scale(-1, self)

    def __sub__(self, other):
        return algebra_add(self, -other)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.field == other.field and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        inner = ", ".join(f"{c}*[{g}]" for g, c in sorted(self.terms.items(),
                                                          key=lambda t: (t[0].alpha, t[0].kappa)))
        return f"AlgebraElement({inner})"


def term(g: GroupElement, coeff=1, field: Field = QQ) -> AlgebraElement:
    return AlgebraElement({g: coeff}, field)


def one(ctx: GroupContext, field: Field = QQ) -> AlgebraElement:
    return term(braided.identity(ctx), 1, field)


def algebra_add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._same_field(b)
    return AlgebraElement(_combine(a.field, a.terms, b.terms), a.field)


def algebra_scale(c, a: AlgebraElement) -> AlgebraElement:
    c = a.field(c)
    return AlgebraElement({g: c * v for g, v in a.terms.items()}, a.field)


def algebra_mul(ctx: GroupContext, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._same_field(b)
    out: dict = {}
    for g, c1 in a.terms.items():
        for h, c2 in b.terms.items():
            gh = braided.mul(ctx, g, h)
            out[gh] = out.get(gh, 0) + c1 * c2
    return AlgebraElement(out, a.field)


# -- free module structure over k[F_p] -------------------------------------------

def _y_perm(ctx: GroupContext, alpha) -> tuple[int, ...]:
    return braided.left_perm(ctx, GroupElement(tuple(alpha), (0,) * ctx.n))


def decompose(ctx: GroupContext, a: AlgebraElement, side: str = "right") -> dict:
    """Coefficients over the basis Y: alpha -> LaurentPoly.

    right: a = sum_y y . f_y;   left: a = sum_y f'_y . y.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    right: dict = {}
    for g, c in a.terms.items():
        right.setdefault(g.alpha, {})[g.kappa] = c
    coeffs = {y: LaurentPoly(t, a.field) for y, t in right.items()}
    if side == "left":
        # y W = (^y W) y and ^y permutes the letters of W
        coeffs = {y: f.permuted(_y_perm(ctx, y)) for y, f in coeffs.items()}
    return coeffs


def recompose(ctx: GroupContext, coeffs: Mapping[tuple[int, ...], LaurentPoly],
              side: str = "right", field: Field = QQ) -> AlgebraElement:
    """Inverse of ``decompose``; products are taken in G."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    zero = (0,) * ctx.n
    out: dict = {}
    for y, f in coeffs.items():
        if f.field != field:
            raise FieldMismatch(f"{f.field.name} vs {field.name}")
        yel = GroupElement(tuple(y), zero)
        for kappa, c in f.terms.items():
            W = GroupElement(zero, kappa)
            g = braided.mul(ctx, yel, W) if side == "right" else braided.mul(ctx, W, yel)
            out[g] = out.get(g, 0) + c
    return AlgebraElement(out, field)


# -- power sums and the center --------------------------------------------------

def power_sum(ctx: GroupContext, k: int, field: Field = QQ) -> AlgebraElement:
    """s_k = x_1^(kp) + ... + x_n^(kp)."""
    if k < 1:
        raise ValueError("k must be positive")
    zero = (0,) * ctx.n
    return AlgebraElement({GroupElement(zero, braided.unit_vector(ctx.n, i, k)): 1
                           for i in range(ctx.n)}, field)


def is_symmetric(a: AlgebraElement) -> bool:
    """a lies in k[x_1^p, ..., x_n^p] and is invariant under permuting the x_i^p."""
    if any(any(g.alpha) or min(g.kappa, default=0) < 0 for g in a.terms):
        return False
    n = len(next(iter(a.terms)).kappa) if a.terms else 0
    f = LaurentPoly({g.kappa: c for g, c in a.terms.items()}, a.field)
    for i in range(n - 1):
        swap = list(range(n))
        swap[i], swap[i + 1] = swap[i + 1], swap[i]
        if f.permuted(swap) != f:
            return False
    return True


def generator_terms(ctx: GroupContext, field: Field = QQ) -> list[tuple[str, AlgebraElement]]:
    out = []
    for i in range(ctx.n):
        out.append((f"x{i + 1}", term(braided.generator(ctx, i), 1, field)))
        out.append((f"x{i + 1}^-1", term(braided.generator(ctx, i, -1), 1, field)))
    return out


def is_central_on_generators(ctx: GroupContext, a: AlgebraElement) -> dict:
    """Check a g = g a for every x_i and x_i^-1; these generate G."""
    for name, g in generator_terms(ctx, a.field):
        if algebra_mul(ctx, a, g) != algebra_mul(ctx, g, a):
            return {"central": False, "witness": name}
    return {"central": True, "witness": None}


# -- checks ---------------------------------------------------------------------

def random_element(ctx: GroupContext, rng: random.Random, field: Field = QQ,
                   max_support: int = 4, kappa_range: int = 2) -> AlgebraElement:
    """Nonzero element with at most ``max_support`` terms, coefficients in -2..2."""
    n, p = ctx.n, ctx.p
    terms: dict = {}
    for _ in range(rng.randint(1, max_support)):
        g = GroupElement(tuple(rng.randrange(p) for _ in range(n)),
                         tuple(rng.randint(-kappa_range, kappa_range) for _ in range(n)))
        terms[g] = rng.choice((-2, -1, 1, 2))
    a = AlgebraElement(terms, field)
    if not a:
        # only possible in characteristic 2 or 3 with cancelling coefficients
        a = term(next(iter(terms)), 1, field)
    return a


def zero_divisor_probe(ctx: GroupContext, seed: int = 0, trials: int = 1000,
                       field: Field = QQ) -> dict:
    """Multiply random nonzero pairs; a zero product would be a bug, not a discovery."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    violations = []
    for t in range(trials):
        a = random_element(ctx, rng, field)
        b = random_element(ctx, rng, field)
        if not algebra_mul(ctx, a, b):
            violations.append({"trial": t, "a": repr(a), "b": repr(b)})
    return {"trials": trials, "seed": seed, "violations": violations, "ok": not violations}


def y_basis(ctx: GroupContext) -> list[tuple[int, ...]]:
    return [tuple(a) for a in itertools.product(range(ctx.p), repeat=ctx.n)]


def check_free_basis(ctx: GroupContext, field: Field = QQ) -> dict:
    """y z = t W for all y, z in Y: one basis coefficient, a monic Laurent monomial."""
    zero = (0,) * ctx.n
    one_ = field(1)
    failures = []
    ys = y_basis(ctx)
    for y, z in itertools.product(ys, repeat=2):
        prod = algebra_mul(ctx, term(GroupElement(y, zero), 1, field),
                           term(GroupElement(z, zero), 1, field))
        coeffs = decompose(ctx, prod, "right")
        ok = (len(coeffs) == 1 and
              all(len(f.terms) == 1 and list(f.terms.values())[0] == one_ for f in coeffs.values()))
        if not ok:
            failures.append((y, z))
    return {"pairs": len(ys) ** 2, "failures": failures, "ok": not failures}


def check_roundtrip(ctx: GroupContext, samples: int = 100, seed: int = 0,
                    field: Field = QQ) -> dict:
    rng = random.Random(seed)
    failures = []
    for t in range(samples):
        a = random_element(ctx, rng, field, max_support=5)
        for side in ("right", "left"):
            if recompose(ctx, decompose(ctx, a, side), side, field) != a:
                failures.append((t, side))
    return {"samples": samples, "failures": failures, "ok": not failures}


def check_power_sums_central(ctx: GroupContext, field: Field = QQ,
                             ks: Optional[Iterable[int]] = None) -> dict:
    """Power sums commute with every x_i, x_i^-1 and with every y in Y."""
    if ks is None:
        ks = range(1, ctx.n + 1)
    zero = (0,) * ctx.n
    positive = [term(GroupElement(y, zero), 1, field) for y in y_basis(ctx)]
    results = {}
    for k in ks:
        s = power_sum(ctx, k, field)
        report = is_central_on_generators(ctx, s)
        monoid_ok = all(algebra_mul(ctx, s, y) == algebra_mul(ctx, y, s) for y in positive)
        results[k] = {"central": report["central"], "witness": report["witness"],
                      "symmetric": is_symmetric(s), "commutes_with_Y": monoid_ok}
    ok = all(r["central"] and r["symmetric"] and r["commutes_with_Y"] for r in results.values())
    return {"field": field.name, "power_sums": results, "ok": ok}
