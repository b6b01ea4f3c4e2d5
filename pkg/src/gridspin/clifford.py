"""Independent integer model of the double cover inside a Clifford algebra.

Take generators ``e_0, ..., e_{n-1}`` with ``e_k^2 = -1`` and
``e_i e_j = -e_j e_i`` for ``i != j``.  Sending the lifted transposition
with label ``(a, b)`` to the multivector ``e_a - e_b`` satisfies the whole
presentation with ``z`` acting as ``-1``:

    (e_a - e_b)^2 = -2,
    disjoint labels anticommute,
    (e_a - e_b)(e_b - e_c)(e_a - e_b) = 2 (e_a - e_c).

A product of k such factors therefore equals ``2^(k/2)`` times the image
of the corresponding group element, so the central bit of any word can be
read off by comparing its multivector against the image of the peeled
canonical word of the same permutation.  Everything is exact integer
arithmetic on sparse blade coefficients; only this comparison is used by
the test suite, never by the runtime group law.
"""
from __future__ import annotations

from typing import Iterable, Sequence

MAX_DIMENSION = 8  # 2^n blade coefficients; enough for every desk-scale check

Multivector = dict[int, int]  # blade bitmask -> integer coefficient


class CliffordOverflow(ValueError):
    pass


def _blade_mul(s: int, t: int) -> tuple[int, int]:
    """Product of basis blades: sign and resulting bitmask.

    Generators of t are merged into s one by one, in increasing index
    order; each swap past a higher generator of the accumulator flips the
    sign, and a repeated generator squares to -1.
    """
    sign = 1
    acc = s
    j = 0
    rest = t
    while rest:
        if rest & 1:
            higher = acc >> (j + 1)
            if bin(higher).count("1") & 1:
                sign = -sign
            bit = 1 << j
            if acc & bit:
                sign = -sign  # e_j^2 = -1
                acc &= ~bit
            else:
                acc |= bit
        rest >>= 1
        j += 1
    return sign, acc


def mv_mul(u: Multivector, v: Multivector) -> Multivector:
    out: Multivector = {}
    for s, cu in u.items():
        for t, cv in v.items():
            sign, blade = _blade_mul(s, t)
            c = out.get(blade, 0) + sign * cu * cv
            if c:
                out[blade] = c
            elif blade in out:
                del out[blade]
    return out


def label_vector(a: int, b: int) -> Multivector:
    """The image e_a - e_b of the lifted transposition with label (a, b)."""
    if a == b:
        raise ValueError("label indices must differ")
    return {1 << a: 1, 1 << b: -1}


def word_multivector(labels: Iterable[tuple[int, int]]) -> Multivector:
    out: Multivector = {0: 1}
    for a, b in labels:
        out = mv_mul(out, label_vector(a, b))
    return out


def _peeled_word(perm: Sequence[int]) -> list[tuple[int, int]]:
    # same peel that defines the section, restated here so the oracle does
    # not import the rewriting module
    x = list(perm)
    word = []
    for k in range(len(perm) - 1, 0, -1):
        i = x.index(k)
        if i != k:
            word.append((i, k))
            x[i], x[k] = x[k], x[i]
    word.reverse()
    return word


def clifford_oracle_bit(n: int, labels: Sequence[tuple[int, int]]) -> int:
    """Central bit of the word t(labels[0]) * ... * t(labels[-1]).

    Compares the word's multivector against 2^((k-m)/2) times the
    multivector of the canonical word of the same permutation (k and m
    the two word lengths).
    """
    if n > MAX_DIMENSION:
        raise CliffordOverflow(f"multivector dimension 2^{n} exceeds the oracle bound")
    perm = list(range(n))
    for a, b in labels:
        if not (0 <= a < n and 0 <= b < n and a != b):
            raise ValueError(f"invalid label ({a},{b}) for n={n}")
        perm[a], perm[b] = perm[b], perm[a]
    word_mv = word_multivector(labels)
    canon = _peeled_word(perm)
    excess = len(labels) - len(canon)
    if excess % 2:
        raise AssertionError("word and canonical word parities disagree")
    scale = 2 ** (excess // 2)
    ref = {blade: scale * c for blade, c in word_multivector(canon).items()}
    if word_mv == ref:
        return 0
    if word_mv == {blade: -c for blade, c in ref.items()}:
        return 1
    raise AssertionError(f"multivector is not a signed multiple for labels {labels}")
