"""Brute-force references for the rewriting and normal-form code.

Nothing here uses the rewriting system or the y.W normal form:

* ``monoid_classes`` computes the congruence classes of positive words of a
  fixed length directly from the defining relations (they are homogeneous, so
  a class never leaves its length).
* ``group_classes`` joins signed words of bounded length by relation moves
  and free cancellation; words in one class are equal in G.
* ``affine_image`` maps a signed word into Z^n x| Sym(n) via
  x -> (e_x, L_x).  For involutive nondegenerate solutions this
  representation of G is faithful, so it decides equality in G.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .solution import Perm, SignedWord, Solution, perm_compose, perm_inverse


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        parent = self.parent
        parent.setdefault(a, a)
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def monoid_classes(s: Solution, length: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Map each positive word of the given length to its class representative."""
    uf = _UnionFind()
    words = list(itertools.product(range(s.n), repeat=length))
    for w in words:
        uf.find(w)
        for t in range(length - 1):
            z, u = s.r(w[t], w[t + 1])
            uf.union(w, w[:t] + (z, u) + w[t + 2:])
    return {w: uf.find(w) for w in words}


def _pair_moves(s: Solution) -> dict:
    """Equalities between two-letter signed words that follow from xy = zt."""
    moves: dict = {}

    def add(a, b):
        moves.setdefault(a, set()).add(b)
        moves.setdefault(b, set()).add(a)

    for x, y in itertools.product(range(s.n), repeat=2):
        z, t = s.r(x, y)
        add(((x, 1), (y, 1)), ((z, 1), (t, 1)))
        add(((y, -1), (x, -1)), ((t, -1), (z, -1)))
        add(((x, -1), (z, 1)), ((y, 1), (t, -1)))
        add(((z, -1), (x, 1)), ((t, 1), (y, -1)))
    return moves


def group_classes(s: Solution, max_len: int) -> dict[SignedWord, SignedWord]:
    """Classes of signed words (letters with exponent +-1) of length <= max_len."""
    letters = [(x, e) for x in range(s.n) for e in (1, -1)]
    moves = _pair_moves(s)
    uf = _UnionFind()
    words = [w for k in range(max_len + 1) for w in itertools.product(letters, repeat=k)]
    for w in words:
        uf.find(w)
        for t in range(len(w) - 1):
            for alt in moves.get((w[t], w[t + 1]), ()):
                uf.union(w, w[:t] + alt + w[t + 2:])
            if w[t][0] == w[t + 1][0] and w[t][1] == -w[t + 1][1]:
                uf.union(w, w[:t] + w[t + 2:])
    return {w: uf.find(w) for w in words}


def affine_image(s: Solution, w: SignedWord) -> tuple[tuple[int, ...], Perm]:
    """Image of a signed word in Z^n x| Sym(n), (u, f)(v, g) = (u + f.v, f g)."""
    n = s.n
    vec = [0] * n
    perm: Perm = tuple(range(n))
    for x, e in w:
        step = s.left[x] if e > 0 else perm_inverse(s.left[x])
        sign = 1 if e > 0 else -1
        for _ in range(abs(e)):
            if sign > 0:
                # (vec, perm) . (e_x, L_x)
                vec[perm[x]] += 1
            else:
                # (vec, perm) . (-e_x, L_x^-1), using L_x(x) = x
                vec[perm[x]] -= 1
            perm = perm_compose(perm, step)
    return tuple(vec), perm


def affine_of_exponents(s: Solution, p: int, alpha: Sequence[int], kappa: Sequence[int]):
    """Affine image of x_1^a1 ... x_n^an x_1^(p k1) ... x_n^(p kn)."""
    w = [(i, a) for i, a in enumerate(alpha) if a]
    w += [(i, p * k) for i, k in enumerate(kappa) if k]
    return affine_image(s, tuple(w))
