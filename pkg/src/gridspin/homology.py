"""Exact integer homology of the fully graded complex.

Generators split by (Maslov, Alexander) bigrading and the marker-free
differential maps each piece to the piece one Maslov degree down.  Free
ranks and torsion come from Smith normal forms of the incoming and
outgoing boundary matrices over Z; everything downstream (Poincare and
Euler polynomials, the hat reduction, the Alexander polynomial) is exact
Laurent-polynomial arithmetic.

Alexander exponents are half-integers in general, so t-exponents are
stored doubled throughout; q-exponents (Maslov) stay plain integers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from . import complexes as _cx
from . import grid as _grid
from .grid import ComponentData, GridDiagram


class NotDivisible(ArithmeticError):
    """Hat reduction failed: the tilde polynomial lacks the predicted factor."""


# ---------------------------------------------------------------------------
# Sparse Laurent polynomials in q, t_1..t_l (t-exponents doubled)

Exponent = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class Laurent:
    """Integer Laurent polynomial; terms maps (q_exp, t2_exps) -> coeff."""

    nvars: int  # number of t variables
    terms: tuple[tuple[Exponent, int], ...]

    @classmethod
    def from_dict(cls, nvars: int, d: dict[Exponent, int]) -> "Laurent":
        return cls(nvars, tuple(sorted((e, c) for e, c in d.items() if c)))

    @classmethod
    def zero(cls, nvars: int) -> "Laurent":
        return cls(nvars, ())

    @classmethod
    def one(cls, nvars: int) -> "Laurent":
        return cls.from_dict(nvars, {(0, (0,) * nvars): 1})

    @classmethod
    def monomial(cls, nvars: int, q: int, t2: Sequence[int], coeff: int = 1) -> "Laurent":
        return cls.from_dict(nvars, {(q, tuple(t2)): coeff})

    def as_dict(self) -> dict[Exponent, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Laurent") -> "Laurent":
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return Laurent.from_dict(self.nvars, d)

    def __neg__(self) -> "Laurent":
        return Laurent(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        d: dict[Exponent, int] = {}
        for (q1, t1), c1 in self.terms:
            for (q2, t2), c2 in other.terms:
                e = (q1 + q2, tuple(a + b for a, b in zip(t1, t2)))
                d[e] = d.get(e, 0) + c1 * c2
        return Laurent.from_dict(self.nvars, d)

    def substitute_q(self, value: int) -> "Laurent":
        """Replace q by an integer (used with -1 for Euler characteristics)."""
        d: dict[Exponent, int] = {}
        for (q, t2), c in self.terms:
            if value == -1:
                c = -c if q % 2 else c
            elif value == 1:
                pass
            else:
                if q < 0:
                    raise ValueError("negative q power under integer substitution")
                c *= value**q
            e = (0, t2)
            d[e] = d.get(e, 0) + c
        return Laurent.from_dict(self.nvars, d)

    def shifted(self, dq: int = 0, dt2: Sequence[int] | None = None) -> "Laurent":
        dt2 = tuple(dt2) if dt2 is not None else (0,) * self.nvars
        return Laurent(
            self.nvars,
            tuple(
                ((q + dq, tuple(a + b for a, b in zip(t2, dt2))), c)
                for (q, t2), c in self.terms
            ),
        )

    def t_reversed(self) -> "Laurent":
        """Substitute every t_i by its inverse."""
        return Laurent.from_dict(
            self.nvars, {(q, tuple(-a for a in t2)): c for (q, t2), c in self.terms}
        )

    def divide_exact(self, divisor: "Laurent") -> "Laurent":
        """Exact division; raises NotDivisible when a remainder survives.

        Both operands are shifted into non-negative exponents, divided by
        repeated leading-term elimination under lexicographic order, and
        the quotient shifted back.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Laurent.zero(self.nvars)

        def mins(p: Laurent) -> tuple[int, tuple[int, ...]]:
            qs = [q for (q, _), _ in p.terms]
            ts = [min(t2[i] for (_, t2), _ in p.terms) for i in range(p.nvars)]
            return min(qs), tuple(ts)

        fq, ft = mins(self)
        gq, gt = mins(divisor)
        f = self.shifted(-fq, tuple(-a for a in ft)).as_dict()
        g = divisor.shifted(-gq, tuple(-a for a in gt)).as_dict()
        glead = max(g)
        gc = g[glead]
        quotient: dict[Exponent, int] = {}
        while f:
            flead = max(f)
            fc = f[flead]
            dq = flead[0] - glead[0]
            dt = tuple(a - b for a, b in zip(flead[1], glead[1]))
            if dq < 0 or any(a < 0 for a in dt) or fc % gc:
                raise NotDivisible(f"remainder with leading term {flead}: {fc}")
            qc = fc // gc
            quotient[(dq, dt)] = qc
            for (eq, et), c in g.items():
                key = (eq + dq, tuple(a + b for a, b in zip(et, dt)))
                nc = f.get(key, 0) - qc * c
                if nc:
                    f[key] = nc
                elif key in f:
                    del f[key]
        return Laurent.from_dict(self.nvars, quotient).shifted(
            fq - gq, tuple(a - b for a, b in zip(ft, gt))
        )

    def __str__(self) -> str:
        return render_polynomial(self)


def _exp_str(e2: int) -> str:
    if e2 % 2 == 0:
        return str(e2 // 2)
    return f"({e2}/2)"


def render_polynomial(p: Laurent) -> str:
    """Canonical string: terms in descending lexicographic exponent order."""
    if p.is_zero():
        return "0"
    tnames = ["t"] if p.nvars == 1 else [f"t{i+1}" for i in range(p.nvars)]
    chunks = []
    for (q, t2), c in sorted(p.terms, reverse=True):
        factors = []
        if q:
            factors.append("q" if q == 1 else f"q^{q}")
        for name, e2 in zip(tnames, t2):
            if e2:
                factors.append(name if e2 == 2 else f"{name}^{_exp_str(e2)}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        chunks.append((c < 0, body))
    out = ("-" if chunks[0][0] else "") + chunks[0][1]
    for neg, body in chunks[1:]:
        out += (" - " if neg else " + ") + body
    return out


def equal_up_to_t_shift(p: Laurent, q: Laurent) -> tuple[int, ...] | None:
    """If q equals p with every t_i shifted by a constant, return the
    doubled shifts (q-exponents must match on the nose); else None."""
    if p.is_zero() and q.is_zero():
        return (0,) * p.nvars
    if p.is_zero() or q.is_zero() or len(p.terms) != len(q.terms):
        return None
    (q1, t1), _ = max(p.terms)
    (q2, t2), _ = max(q.terms)
    if q1 != q2:
        return None
    shift = tuple(b - a for a, b in zip(t1, t2))
    return shift if p.shifted(0, shift) == q else None


# ---------------------------------------------------------------------------
# Integer matrices and Smith normal form


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...]  # (row, col, value), no zeros

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, int]]) -> "IntegerMatrix":
        merged: dict[tuple[int, int], int] = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
            merged[(r, c)] = merged.get((r, c), 0) + v
        return cls(rows, cols, tuple((r, c, v) for (r, c), v in sorted(merged.items()) if v))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> "IntegerMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_entries(
            rows, cols, ((r, c, v) for r, row in enumerate(dense) for c, v in enumerate(row))
        )

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out


@dataclass(frozen=True)
class SmithForm:
    """Nonzero invariant factors d1 | d2 | ... and the unimodular transforms
    with U * A * V equal to the padded diagonal."""

    diagonal: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def _pivot(D: list[list[int]], t: int, m: int, n: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, m):
        row = D[i]
        for j in range(t, n):
            v = row[j]
            if v:
                a = abs(v)
                if a == 1:
                    return (i, j)
                if best is None or a < best[0]:
                    best = (a, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(A: IntegerMatrix) -> SmithForm:
    """Diagonalise over Z by unimodular row and column operations.

    Pivots prefer entries of absolute value one, then minimal absolute
    value, which keeps intermediate growth tame on boundary matrices.
    Python integers make the arithmetic exact at any size.
    """
    m, n = A.rows, A.cols
    D = A.to_dense()
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i: int, k: int, q: int) -> None:  # row_i -= q * row_k
        if not q:
            return
        D[i] = [a - q * b for a, b in zip(D[i], D[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]

    def col_op(j: int, k: int, q: int) -> None:  # col_j -= q * col_k
        if not q:
            return
        for row in D:
            row[j] -= q * row[k]
        for row in V:
            row[j] -= q * row[k]

    def swap_rows(i: int, k: int) -> None:
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j: int, k: int) -> None:
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def diagonalize(start: int) -> int:
        t = start
        while t < min(m, n):
            pv = _pivot(D, t, m, n)
            if pv is None:
                break
            while True:
                # re-selecting the smallest pivot before every sweep keeps
                # the gcd cascade at the pivot position and tames growth
                i, j = pv
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                for i in range(t + 1, m):
                    if D[i][t]:
                        row_op(i, t, D[i][t] // D[t][t])
                for j in range(t + 1, n):
                    if D[t][j]:
                        col_op(j, t, D[t][j] // D[t][t])
                if not any(D[i][t] for i in range(t + 1, m)) and not any(
                    D[t][j] for j in range(t + 1, n)
                ):
                    break
                pv = _pivot(D, t, m, n)
            t += 1
        return t

    rank = diagonalize(0)
    # enforce the divisibility chain: fold an offending column into an
    # earlier one and re-diagonalize from there; each fold replaces the
    # earlier diagonal entry by a proper divisor, so this terminates
    while True:
        offender = None
        for i in range(rank - 1):
            for j in range(i + 1, rank):
                if D[j][j] % D[i][i]:
                    offender = (i, j)
                    break
            if offender:
                break
        if offender is None:
            break
        i, j = offender
        col_op(i, j, -1)  # col_i += col_j
        diagonalize(i)
    for i in range(rank):
        if D[i][i] < 0:
            for j in range(n):
                D[i][j] = -D[i][j]
            for j in range(m):
                U[i][j] = -U[i][j]

    diagonal = tuple(D[i][i] for i in range(rank))
    assert all(diagonal[i + 1] % diagonal[i] == 0 for i in range(rank - 1))
    return SmithForm(diagonal, tuple(map(tuple, U)), tuple(map(tuple, V)))


def snf_product_check(A: IntegerMatrix, S: SmithForm) -> bool:
    """U * A * V equals the padded diagonal; used by the test suite."""
    m, n = A.rows, A.cols
    dense = A.to_dense()
    UA = [[sum(S.U[i][k] * dense[k][j] for k in range(m)) for j in range(n)] for i in range(m)]
    UAV = [[sum(UA[i][k] * S.V[k][j] for k in range(n)) for j in range(n)] for i in range(m)]
    for i in range(m):
        for j in range(n):
            want = S.diagonal[i] if i == j and i < len(S.diagonal) else 0
            if UAV[i][j] != want:
                return False
    return True


# ---------------------------------------------------------------------------
# Bigraded homology


class Bigrading(NamedTuple):
    maslov: int
    alexander2: tuple[int, ...]


@dataclass(frozen=True)
class HomologySummary:
    flavor: str
    l: int
    n_i: tuple[int, ...]
    pieces: tuple[tuple[Bigrading, int, tuple[int, ...]], ...]  # (bigrading, free rank, torsion)
    poincare: Laurent
    euler: Laurent

    @property
    def total_rank(self) -> int:
        return sum(rank for _, rank, _ in self.pieces)

    @property
    def has_torsion(self) -> bool:
        return any(tor for _, _, tor in self.pieces)

    def piece(self, maslov: int, alexander2: Sequence[int]) -> tuple[int, tuple[int, ...]]:
        for bg, rank, tor in self.pieces:
            if bg == Bigrading(maslov, tuple(alexander2)):
                return rank, tor
        return 0, ()

    def to_json_dict(self) -> dict:
        return {
            "flavor": self.flavor,
            "pieces": [
                {
                    "maslov": bg.maslov,
                    "alexander2": list(bg.alexander2),
                    "free_rank": rank,
                    "torsion": list(tor),
                }
                for bg, rank, tor in self.pieces
            ],
            "poincare": render_polynomial(self.poincare),
            "euler": render_polynomial(self.euler),
        }


def bigraded_homology(G: GridDiagram) -> HomologySummary:
    """Homology of the marker-free differential, split by bigrading."""
    comps = G.components
    gens = list(itertools.permutations(range(G.n)))
    grading = {x: Bigrading(_grid.maslov(G, x), _grid.alexander2(G, x)) for x in gens}
    by_grading: dict[Bigrading, list[tuple[int, ...]]] = {}
    for x in gens:
        by_grading.setdefault(grading[x], []).append(x)
    index = {
        bg: {x: i for i, x in enumerate(members)} for bg, members in by_grading.items()
    }

    # boundary matrices keyed by source bigrading
    matrices: dict[Bigrading, IntegerMatrix] = {}
    for bg, members in by_grading.items():
        target_bg = Bigrading(bg.maslov - 1, bg.alexander2)
        targets = index.get(target_bg, {})
        entries = []
        for col, x in enumerate(members):
            for y, sign, _ in _cx.differential_terms(G, x, _cx.Flavor.TILDE_GRADED):
                entries.append((targets[y], col, sign))  # targets has every y by grading drop
        matrices[bg] = IntegerMatrix.from_entries(len(targets), len(members), entries)

    snfs = {bg: smith_normal_form(M) for bg, M in matrices.items()}
    pieces = []
    poincare: dict[Exponent, int] = {}
    for bg in sorted(by_grading):
        dim = len(by_grading[bg])
        rank_out = snfs[bg].rank
        up = Bigrading(bg.maslov + 1, bg.alexander2)
        rank_in = snfs[up].rank if up in snfs else 0
        torsion = snfs[up].torsion() if up in snfs else ()
        free = dim - rank_out - rank_in
        assert free >= 0
        if free or torsion:
            pieces.append((bg, free, torsion))
        if free:
            poincare[(bg.maslov, bg.alexander2)] = free
    p = Laurent.from_dict(comps.l, poincare)
    return HomologySummary(
        flavor="tilde",
        l=comps.l,
        n_i=comps.n_i,
        pieces=tuple(pieces),
        poincare=p,
        euler=p.substitute_q(-1),
    )


def hat_reduction(H: HomologySummary, components: ComponentData) -> HomologySummary:
    """Divide the Poincare polynomial by (1 + q^-1 t_i^-1)^(n_i - 1) per
    component; a remainder or negative quotient coefficient signals an
    upstream bug and raises NotDivisible."""
    if H.flavor != "tilde":
        raise ValueError("hat reduction applies to tilde summaries")
    if H.has_torsion:
        raise NotDivisible("tilde homology has torsion; hat ranks are undefined here")
    l = components.l
    quotient = H.poincare
    for j in range(l):
        t2 = [0] * l
        t2[j] = -2
        factor = Laurent.one(l) + Laurent.monomial(l, -1, t2)
        for _ in range(components.n_i[j] - 1):
            quotient = quotient.divide_exact(factor)
    pieces = []
    for (q, t2), c in sorted(quotient.terms):
        if c < 0:
            raise NotDivisible("negative rank in hat quotient")
        pieces.append((Bigrading(q, t2), c, ()))
    return HomologySummary(
        flavor="hat",
        l=l,
        n_i=components.n_i,
        pieces=tuple(pieces),
        poincare=quotient,
        euler=quotient.substitute_q(-1),
    )


def alexander_polynomial(G: GridDiagram) -> Laurent:
    """Euler characteristic of the hat homology, symmetrised under t -> 1/t
    and, for knots, signed so the value at t = 1 is one."""
    comps = G.components
    hat = hat_reduction(bigraded_homology(G), comps)
    e = hat.euler
    if e.is_zero():
        return e
    l = comps.l
    shift = []
    for i in range(l):
        exps = [t2[i] for (_, t2), _ in e.terms]
        lo, hi = min(exps), max(exps)
        if (lo + hi) % 2:
            raise AssertionError("cannot centre the Euler polynomial")
        shift.append(-(lo + hi) // 2)
    e = e.shifted(0, shift)
    if e.t_reversed() != e:
        raise AssertionError("centred Euler polynomial is not symmetric")
    total = sum(c for _, c in e.terms)
    if total < 0 or (total == 0 and max(e.terms)[1] < 0):
        e = -e
    return e
