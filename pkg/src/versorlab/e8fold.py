"""Folding E8 onto H4 inside Cl(8).

Node order of E8 is the chain 1-2-...-7 with node 8 attached to node 5, so
the orthogonal pairs (1,7), (2,6), (3,5), (4,8) fold onto the H4 chain
a1 - a2 - a3 -5- a4.  Roots come from the built-in E8 family (squared length
2) and are scaled to unit length before multiplying.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .clifford import Multivector, inner, sandwich_matrix
from .field import ONE, ZERO, FieldScalar
from .linalg import Matrix, identity, matmul, matvec
from .rootsystem import generate, simple_roots

__all__ = [
    "FoldingConfiguration", "FoldingError", "build_folding", "verify_h4_relations",
    "coxeter_versor", "H4Relations", "CoxeterReport", "FOLDING_PAIRS", "H4_COXETER_MATRIX",
]

FOLDING_PAIRS = ((1, 7), (2, 6), (3, 5), (4, 8))

H4_COXETER_MATRIX = (
    (1, 3, 2, 2),
    (3, 1, 3, 2),
    (2, 3, 1, 5),
    (2, 2, 5, 1),
)

CONVENTIONS = {
    "e8_nodes": "chain 1-2-3-4-5-6-7, node 8 attached to node 5",
    "e8_coordinates": "even-coordinate-sum lattice roots of squared length 2, unit-normalised",
    "h4_nodes": "a1-a2-a3 chain with the 5 on (a3, a4)",
    "sandwich": "x -> reverse(A) x A / (A reverse(A)), minus sign for odd A",
    "orders": "versor order: least k with A^k = 1; map order: least k with A^k = +-1",
}


class FoldingError(ValueError):
    pass


@dataclass(frozen=True)
class FoldingConfiguration:
    roots: tuple[Multivector, ...]
    pairs: tuple[tuple[int, int], ...]
    generators: tuple[Multivector, ...]
    pair_products: tuple[FieldScalar, ...]

    @property
    def orthogonal(self) -> bool:
        return all(p.is_zero() for p in self.pair_products)


def _unit(v: Sequence[FieldScalar]) -> Multivector:
    mv = Multivector.vector(v)
    return mv.scale(inner(mv, mv).sqrt().invert())


def build_folding(pairs: Sequence[tuple[int, int]] = FOLDING_PAIRS) -> FoldingConfiguration:
    roots = tuple(_unit(v) for v in simple_roots("E8"))
    products = tuple(inner(roots[i - 1], roots[j - 1]) for i, j in pairs)
    if any(not p.is_zero() for p in products):
        raise FoldingError(f"folding pairs are not orthogonal: {[str(p) for p in products]}")
    gens = tuple(roots[i - 1] * roots[j - 1] for i, j in pairs)
    return FoldingConfiguration(roots, tuple(tuple(p) for p in pairs), gens, products)


def _is_pm_one(mv: Multivector) -> bool:
    return mv.is_scalar() and mv.scalar_part() in (ONE, -ONE)


def versor_orders(A: Multivector, limit: int = 240) -> tuple[int, int]:
    """(least k with A^k = +-1, least k with A^k = 1) by repeated multiplication."""
    x, k = A, 1
    map_order = None
    while k <= limit:
        if _is_pm_one(x):
            if map_order is None:
                map_order = k
            if x.scalar_part() == ONE:
                return map_order, k
        x = x * A
        k += 1
    raise FoldingError(f"no power of the versor up to {limit} is +-1")


def _matrix_order(m: Matrix, limit: int = 240) -> int:
    one = identity(len(m))
    x, k = m, 1
    while x != one:
        x = matmul(x, m)
        k += 1
        if k > limit:
            raise FoldingError(f"matrix order exceeds {limit}")
    return k


@dataclass
class H4Relations:
    involutions: list[bool]
    square_minus_one: list[bool]
    map_orders: list[list[int]]
    versor_orders: list[list[int]]
    sandwich_orders: list[list[int]]

    @property
    def matches_h4(self) -> bool:
        return [list(r) for r in H4_COXETER_MATRIX] == self.map_orders == self.sandwich_orders

    @property
    def five_fold_pairs(self) -> list[tuple[int, int]]:
        n = len(self.map_orders)
        return [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if self.map_orders[i][j] == 5]

    def to_json(self) -> dict:
        return {
            "involutions": self.involutions,
            "generators_square_to_minus_one": self.square_minus_one,
            "order_matrix": self.sandwich_orders,
            "versor_power_orders_mod_sign": self.map_orders,
            "versor_power_orders": self.versor_orders,
            "expected_h4_matrix": [list(r) for r in H4_COXETER_MATRIX],
            "matches_h4": self.matches_h4,
            "five_fold_pairs": [list(p) for p in self.five_fold_pairs],
        }


def verify_h4_relations(cfg: FoldingConfiguration) -> H4Relations:
    gens = cfg.generators
    n = len(gens)
    mats = [sandwich_matrix(a) for a in gens]
    one = identity(8)
    involutions = [matmul(m, m) == one for m in mats]
    square = [(a * a) == Multivector.scalar(8, -1) for a in gens]
    map_orders = [[0] * n for _ in range(n)]
    ver_orders = [[0] * n for _ in range(n)]
    sand_orders = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # on the diagonal a_i a_i = -1: map order 1, versor order 2
            m, v = versor_orders(gens[i] * gens[j])
            map_orders[i][j], ver_orders[i][j] = m, v
            sand_orders[i][j] = _matrix_order(matmul(mats[i], mats[j]))
    return H4Relations(involutions, square, map_orders, ver_orders, sand_orders)


@dataclass
class CoxeterReport:
    w_terms: int
    h: int
    w_versor_order: int
    w_unit: bool
    w_permutes_roots: bool
    h4_terms: int
    h4_h: int
    h4_versor_order: int
    h4_equals_pm_w: bool
    h4_equals_pm_paired_product: bool

    def to_json(self) -> dict:
        return {
            "coxeter_versor": "W = alpha1 alpha2 ... alpha8",
            "W_terms": self.w_terms,
            "W_reverse_W_is_one": self.w_unit,
            "h": self.h,
            "W_versor_order": self.w_versor_order,
            "W_permutes_240_roots": self.w_permutes_roots,
            "W_H4": "a1 a2 a3 a4",
            "W_H4_terms": self.h4_terms,
            "h_H4": self.h4_h,
            "W_H4_versor_order": self.h4_versor_order,
            "W_H4_equals_pm_W": self.h4_equals_pm_w,
            "W_H4_equals_pm_alpha1_alpha7_alpha2_alpha6_alpha3_alpha5_alpha4_alpha8": self.h4_equals_pm_paired_product,
        }


def _product(mvs: Sequence[Multivector]) -> Multivector:
    out = Multivector.scalar(mvs[0].dimension, 1)
    for m in mvs:
        out = out * m
    return out


def coxeter_versor(cfg: FoldingConfiguration, check_roots: bool = True) -> CoxeterReport:
    """W = alpha1...alpha8, its order up to sign, and the folded a1a2a3a4 beside it."""
    W = _product(cfg.roots)
    h, wv = versor_orders(W)
    unit = W * W.reverse() == Multivector.scalar(8, 1)
    permutes = True
    if check_roots:
        phi = generate(simple_roots("E8"), name="E8")
        M = sandwich_matrix(W)
        images = {matvec(M, r) for r in phi.roots}
        permutes = all(v in phi for v in images) and len(images) == len(phi)
    W4 = _product(cfg.generators)
    h4, w4v = versor_orders(W4)
    paired = _product([cfg.roots[k - 1] for pair in cfg.pairs for k in pair])
    return CoxeterReport(
        w_terms=len(W.terms()), h=h, w_versor_order=wv, w_unit=unit, w_permutes_roots=permutes,
        h4_terms=len(W4.terms()), h4_h=h4, h4_versor_order=w4v,
        h4_equals_pm_w=W4 in (W, -W),
        h4_equals_pm_paired_product=W4 in (paired, -paired),
    )


def fold_report(relations: bool = True, coxeter: bool = True) -> dict:
    cfg = build_folding()
    out: dict = {
        "conventions": CONVENTIONS,
        "pairs": [list(p) for p in cfg.pairs],
        "pair_inner_products": [str(p) for p in cfg.pair_products],
        "pairs_orthogonal": cfg.orthogonal,
        "generators": [str(a) for a in cfg.generators],
    }
    if relations:
        out["relations"] = verify_h4_relations(cfg).to_json()
    if coxeter:
        out["coxeter"] = coxeter_versor(cfg).to_json()
    return out
