"""Exact dense linear algebra over Q(sqrt2, tau)."""

from __future__ import annotations

from math import gcd, lcm
from typing import Sequence

from .field import ONE, ZERO, FieldScalar

Matrix = list[list[FieldScalar]]
Vector = tuple[FieldScalar, ...]


def dot(u: Sequence[FieldScalar], v: Sequence[FieldScalar]) -> FieldScalar:
    acc = ZERO
    for x, y in zip(u, v):
        if x.is_zero() or y.is_zero():
            continue
        acc = acc + x * y
    return acc


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return [[dot(row, col) for col in cols] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def trace(a: Matrix) -> FieldScalar:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def matvec(a: Matrix, v: Sequence[FieldScalar]) -> Vector:
    return tuple(dot(row, v) for row in a)


def rank(vectors: Sequence[Sequence[FieldScalar]]) -> int:
    return len(_echelon([list(v) for v in vectors]))


def _echelon(rows: Matrix) -> Matrix:
    rows = [r[:] for r in rows]
    out: Matrix = []
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rows and col < ncols:
        pivot = next((r for r in rows if not r[col].is_zero()), None)
        if pivot is None:
            col += 1
            continue
        rows.remove(pivot)
        inv = pivot[col].invert()
        pivot = [x * inv for x in pivot]
        rows = [[x - r[col] * p for x, p in zip(r, pivot)] if not r[col].is_zero() else r for r in rows]
        out.append(pivot)
        col += 1
    return out


def solve(columns: Sequence[Sequence[FieldScalar]], target: Sequence[FieldScalar]) -> list[FieldScalar] | None:
    """Coefficients c with sum c_k * columns[k] == target, or None if no solution."""
    k = len(columns)
    n = len(target)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    pivots: list[int] = []
    row = 0
    for col in range(k):
        p = next((r for r in range(row, n) if not aug[r][col].is_zero()), None)
        if p is None:
            continue
        aug[row], aug[p] = aug[p], aug[row]
        inv = aug[row][col].invert()
        aug[row] = [x * inv for x in aug[row]]
        for r in range(n):
            if r != row and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    if any(not aug[r][k].is_zero() for r in range(row, n)):
        return None
    sol = [ZERO] * k
    for r, col in enumerate(pivots):
        sol[col] = aug[r][k]
    return sol


# -- packed vectors ---------------------------------------------------------
#
# A vector over Q(sqrt2, tau) stored as (den, A, B, C, D) meaning
# (A + B*sqrt2 + C*tau + D*sqrt2*tau) / den with integer tuples A..D (None when
# all zero), reduced so the whole integer content is coprime to den.  The
# packed form is canonical, so it doubles as a hash key.

# basis (1, sqrt2, tau, sqrt2*tau): product of basis i and j in coordinates of k
_BASIS_MUL = (
    ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    ((0, 1, 0, 0), (2, 0, 0, 0), (0, 0, 0, 1), (0, 0, 2, 0)),
    ((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 1, 0), (0, 1, 0, 1)),
    ((0, 0, 0, 1), (0, 0, 2, 0), (0, 1, 0, 1), (2, 0, 2, 0)),
)

Packed = tuple


def _canon(den: int, comps: list[list[int] | None]) -> Packed:
    g = den
    for comp in comps:
        if comp is not None:
            for x in comp:
                if x:
                    g = gcd(g, x)
                    if g == 1:
                        break
    out = []
    for comp in comps:
        if comp is None or not any(comp):
            out.append(None)
        else:
            out.append(tuple(x // g for x in comp) if g != 1 else tuple(comp))
    if den < 0:
        den, out = -den, [None if c is None else tuple(-x for x in c) for c in out]
    return (den // g, *out)


def pack(v: Sequence[FieldScalar]) -> Packed:
    den = lcm(*(x._den for x in v)) if v else 1
    comps: list[list[int] | None] = [[0] * len(v) for _ in range(4)]
    for i, x in enumerate(v):
        f = den // x._den
        comps[0][i] = x._a * f
        comps[1][i] = x._b * f
        comps[2][i] = x._c * f
        comps[3][i] = x._d * f
    return _canon(den, comps)


def unpack(p: Packed) -> Vector:
    den = p[0]
    n = next(len(c) for c in p[1:] if c is not None) if any(c is not None for c in p[1:]) else None
    if n is None:
        raise ValueError("cannot unpack a zero vector without a length")
    cols = [c if c is not None else (0,) * n for c in p[1:]]
    return tuple(FieldScalar._raw(cols[0][i], cols[1][i], cols[2][i], cols[3][i], den) for i in range(n))


def pdot(p: Packed, q: Packed) -> FieldScalar:
    acc = [0, 0, 0, 0]
    for i in range(4):
        pi = p[i + 1]
        if pi is None:
            continue
        for j in range(4):
            qj = q[j + 1]
            if qj is None:
                continue
            s = sum(x * y for x, y in zip(pi, qj))
            if s:
                m = _BASIS_MUL[i][j]
                for k in range(4):
                    if m[k]:
                        acc[k] += m[k] * s
    return FieldScalar._raw(acc[0], acc[1], acc[2], acc[3], p[0] * q[0])


def psub_scaled(p: Packed, c: FieldScalar, q: Packed) -> Packed:
    """p - c*q in canonical packed form."""
    cc = (c._a, c._b, c._c, c._d)
    n = len(next(x for x in q[1:] if x is not None))
    # c*q over denominator c.den * q.den
    cq: list[list[int] | None] = [None, None, None, None]
    for i in range(4):
        if not cc[i]:
            continue
        for j in range(4):
            qj = q[j + 1]
            if qj is None:
                continue
            m = _BASIS_MUL[i][j]
            for k in range(4):
                if m[k]:
                    f = cc[i] * m[k]
                    if cq[k] is None:
                        cq[k] = [0] * n
                    row = cq[k]
                    for t in range(n):
                        row[t] += f * qj[t]
    d1, d2 = p[0], c._den * q[0]
    out: list[list[int] | None] = []
    for k in range(4):
        pk, ck = p[k + 1], cq[k]
        if pk is None and ck is None:
            out.append(None)
        elif ck is None:
            out.append([x * d2 for x in pk])
        elif pk is None:
            out.append([-y * d1 for y in ck])
        else:
            out.append([x * d2 - y * d1 for x, y in zip(pk, ck)])
    return _canon(d1 * d2, out)
