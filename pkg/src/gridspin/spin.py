"""Exact arithmetic in the spin double cover of the symmetric group.

Permutations of ``{0, ..., n-1}`` are stored in word form: the tuple
``(x(0), ..., x(n-1))``.  Composition is right-to-left,

    compose(p, q)(k) = p(q(k)),

so multiplying ``x`` on the right by the transposition ``(a b)`` swaps the
*values* of ``x`` at positions ``a`` and ``b``.

The double cover is generated by a central element ``z`` of order two and
one lifted transposition ``t(a, b)`` for every ordered pair ``a != b``,
subject to

    t(a,b)^2 = z,                 t(b,a) = z * t(a,b),
    t(a,b) * t(c,d) = z * t(c,d) * t(a,b)   when {a,b} and {c,d} are disjoint,
    t(a,b) * t(b,c) * t(a,b) = t(b,c) * t(a,b) * t(b,c) = t(a,c).

All three families follow from the single conjugation rule

    t(a,b) * t(c,d) = z * t(w(c), w(d)) * t(a,b),   w = (a b),   (c,d) != (a,b),

which is what the normal-form routine below applies.

Every element has a unique normal form ``z^u * s(x)`` where the section
``s`` sends ``x`` to the product of lifts of its column-peeling
factorisation

    x = (i_0 0) * (i_1 1) * ... * (i_{n-1} n-1),

obtained by peeling, for k = n-1 down to 0, the factor that moves the
preimage of k into place (factors with i_k = k are omitted).  A
``SpinElement`` stores the pair ``(x, u)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Label = tuple[int, int]


# ---------------------------------------------------------------------------
# Plain permutations


def is_permutation(word: Sequence[int]) -> bool:
    """Check that word lists each of 0..n-1 exactly once.

    >>> is_permutation((1, 0, 2)), is_permutation((1, 1, 2))
    (True, False)
    """
    return sorted(word) == list(range(len(word)))


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def transposition(n: int, a: int, b: int) -> tuple[int, ...]:
    """The transposition exchanging a and b in S_n."""
    if not (0 <= a < n and 0 <= b < n and a != b):
        raise ValueError(f"invalid transposition ({a},{b}) for n={n}")
    word = list(range(n))
    word[a], word[b] = word[b], word[a]
    return tuple(word)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Compose permutations, applying q first: compose(p, q)(k) = p(q(k)).

    >>> compose((1, 0, 2), (0, 2, 1))
    (1, 2, 0)
    """
    if len(p) != len(q):
        raise ValueError(f"size mismatch: {len(p)} vs {len(q)}")
    return tuple(p[j] for j in q)


def inverse_perm(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def signature(p: Sequence[int]) -> int:
    """Parity in {0,1} of the number of transpositions in any factorisation.

    >>> signature((0, 1, 2)), signature((1, 0, 2)), signature((1, 2, 0))
    (0, 1, 0)
    """
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


@lru_cache(maxsize=None)
def canonical_word(perm: tuple[int, ...]) -> tuple[Label, ...]:
    """Column-peeling factorisation of a permutation into transpositions.

    Factors are ordered left to right; each label ``(i, k)`` has ``i < k``
    and the second entries strictly increase.  The identity gives the
    empty word.

    >>> canonical_word((1, 2, 0))
    ((0, 1), (1, 2))
    >>> canonical_word((0, 1, 2))
    ()
    """
    x = list(perm)
    word = []
    for k in range(len(perm) - 1, 0, -1):
        i = x.index(k)
        if i != k:
            word.append((i, k))
            x[i], x[k] = x[k], x[i]
    word.reverse()
    return tuple(word)


# ---------------------------------------------------------------------------
# Normal-form core


@lru_cache(maxsize=None)
def _right_mul(perm: tuple[int, ...], a: int, b: int) -> tuple[tuple[int, ...], int]:
    """Normal form of s(perm) * t(a, b); returns (perm * (a b), phi).

    phi in {0,1} is the exponent of z, i.e. s(perm) * t(a,b) equals
    z^phi * s(perm * (a b)).

    The loop peels the top canonical factor of perm and pushes the lift
    through it with the conjugation rule.  Each pass either ends the
    reduction (the lift matches the peeled factor and squares to z, or it
    lands in canonical position) or makes the working permutation fix the
    top position, after which the top strips off.  The label keeps its
    indices while being pushed except when it contains the top index,
    which the conjugation replaces by the peeled position.
    """
    bit = 0
    if a > b:
        a, b = b, a
        bit = 1
    y = list(perm)
    y[a], y[b] = y[b], y[a]
    x = list(perm)
    m = len(x)
    while True:
        top = m - 1
        if x[top] == top:
            if b == top:
                break  # canonical append: s(x) * t(a, top) is already normal
            m -= 1
            continue
        p = x.index(top)
        if a == p and b == top:
            bit ^= 1  # t(p, top)^2 = z
            break
        bit ^= 1  # conjugation past the peeled factor t(p, top)
        x[p], x[top] = x[top], x[p]
        if b == top:
            if a < p:
                b = p
            else:
                a, b = p, a
                bit ^= 1
    return tuple(y), bit


# ---------------------------------------------------------------------------
# Spin elements


@dataclass(frozen=True)
class SpinElement:
    """Normal form z^bit * s(perm) of an element of the double cover."""

    perm: tuple[int, ...]
    bit: int

    def __post_init__(self) -> None:
        assert self.bit in (0, 1)

    @property
    def n(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "SpinElement") -> "SpinElement":
        return multiply(self, other)

    def inv(self) -> "SpinElement":
        return inverse(self)

    def sign(self) -> int:
        """The central bit as a sign, z mapped to -1."""
        return -1 if self.bit else 1


def section(perm: Sequence[int]) -> SpinElement:
    """The set-theoretic section s: bit 0 on every permutation."""
    perm = tuple(perm)
    if not is_permutation(perm):
        raise ValueError(f"not a permutation: {perm}")
    return SpinElement(perm, 0)

def spin_identity(n: int) -> SpinElement:
    return SpinElement(identity(n), 0)


def central(n: int) -> SpinElement:
    return SpinElement(identity(n), 1)


def lift(n: int, label: Label) -> SpinElement:
    """The lifted transposition t(a, b); the descending label costs one z."""
    a, b = label
    perm = transposition(n, a, b)
    return SpinElement(perm, 1 if a > b else 0)


def right_mul_transposition(g: SpinElement, label: Label) -> SpinElement:
    """Normal form of g * t(a, b)."""
    a, b = label
    if not (0 <= a < g.n and 0 <= b < g.n and a != b):
        raise ValueError(f"invalid label {label} for n={g.n}")
    y, phi = _right_mul(g.perm, a, b)
    return SpinElement(y, g.bit ^ phi)


def multiply(g: SpinElement, h: SpinElement) -> SpinElement:
    """Group law, by folding h's canonical word into g from the right."""
    if g.n != h.n:
        raise ValueError(f"size mismatch: {g.n} vs {h.n}")
    perm, bit = g.perm, g.bit ^ h.bit
    for a, b in canonical_word(h.perm):
        perm, phi = _right_mul(perm, a, b)
        bit ^= phi
    return SpinElement(perm, bit)


def inverse(g: SpinElement) -> SpinElement:
    """The inverse; multiply(g, inverse(g)) is the identity with bit 0."""
    w = inverse_perm(g.perm)
    residue = multiply(g, SpinElement(w, 0))
    assert residue.perm == identity(g.n)
    return SpinElement(w, residue.bit)


def cocycle(p: Sequence[int], q: Sequence[int]) -> int:
    """The {+1,-1}-valued 2-cocycle measuring s(p)*s(q) = c(p,q)*s(p*q).

    >>> cocycle((1, 0), (1, 0))
    -1
    >>> cocycle((0, 1), (1, 0))
    1
    """
    prod = multiply(section(p), section(q))
    return -1 if prod.bit else 1


def conjugate_transposition(g: SpinElement, label: Label) -> tuple[int, Label]:
    """Conjugation g * t(a,b) * g^-1 = z^flip * t(x(a), x(b)).

    The flip is the signature of the underlying permutation; the central
    bit of g cancels against itself.
    """
    a, b = label
    if not (0 <= a < g.n and 0 <= b < g.n and a != b):
        raise ValueError(f"invalid label {label} for n={g.n}")
    return signature(g.perm), (g.perm[a], g.perm[b])


# ---------------------------------------------------------------------------
# Words


@dataclass(frozen=True)
class GeneratorWord:
    """A formal product of lifted transpositions times z^zexp."""

    factors: tuple[Label, ...]
    zexp: int = 0


def evaluate_word(n: int, word: GeneratorWord | Iterable[Label], zexp: int = 0) -> SpinElement:
    """Evaluate a word of labels left to right under the group law."""
    if isinstance(word, GeneratorWord):
        zexp ^= word.zexp
        labels = word.factors
    else:
        labels = tuple(word)
    g = SpinElement(identity(n), zexp & 1)
    for label in labels:
        g = right_mul_transposition(g, label)
    return g


def sigma_element(n: int) -> SpinElement:
    """The distinguished lift t(0,1)*t(1,2)*...*t(n-2,n-1) of the n-cycle."""
    return evaluate_word(n, [(i, i + 1) for i in range(n - 1)])


def all_permutations(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(n))


def all_spin_elements(n: int) -> Iterator[SpinElement]:
    for perm in all_permutations(n):
        yield SpinElement(perm, 0)
        yield SpinElement(perm, 1)
