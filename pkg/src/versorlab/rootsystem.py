"""Root systems: built-in simple roots, orbit generation, axiom checks,
Cartan matrices and automorphism counting."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from .diagram import FAMILIES, CoxeterDiagram, parse_diagram
from .field import ONE, TAU, ZERO, FieldScalar, Scalar
from .linalg import Packed, Vector, dot, pack, pdot, psub_scaled, rank, solve, unpack

__all__ = [
    "RootSystem", "RootSystemError", "VerificationReport",
    "simple_roots", "simple_roots_for", "cartan_matrix", "diagram_from_roots",
    "generate", "verify", "automorphism_order", "express_in_simple_roots",
    "DEFAULT_ROOT_CEILING", "reflect_vector",
]

DEFAULT_ROOT_CEILING = 100_000


class RootSystemError(ValueError):
    pass


def _vec(coords: Iterable[Scalar]) -> Vector:
    return tuple(FieldScalar.coerce(c) for c in coords)


def _compare_vectors(u: Vector, v: Vector) -> int:
    for x, y in zip(u, v):
        if x != y:
            return (x - y).sign()
    return 0


vector_sort_key = cmp_to_key(_compare_vectors)


def _e8_simple_roots() -> list[Vector]:
    h = Fraction(1, 2)

    def e(i: int, j: int, si: int = 1, sj: int = 1) -> list[int]:
        v = [0] * 8
        v[i], v[j] = si, sj
        return v

    # Bourbaki coordinates b1..b8 relabelled so that 1-2-3-4-5-6-7 is a chain and 8 hangs off 5
    b = {1: [h, -h, -h, -h, -h, -h, -h, h], 2: e(0, 1), 3: e(0, 1, -1), 4: e(1, 2, -1),
         5: e(2, 3, -1), 6: e(3, 4, -1), 7: e(4, 5, -1), 8: e(5, 6, -1)}
    order = [8, 7, 6, 5, 4, 3, 1, 2]
    return [_vec(b[k]) for k in order]


def _builtin(name: str) -> list[Vector]:
    half = Fraction(1, 2)
    if name == "A1^3":
        return [_vec(r) for r in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    if name == "A3":
        return [_vec(r) for r in ((0, 1, -1), (1, -1, 0), (0, 1, 1))]
    if name == "B3":
        return [_vec(r) for r in ((1, -1, 0), (0, 1, -1), (0, 0, 1))]
    if name == "H3":
        tm1 = TAU - 1
        return [_vec((0, 1, 0)),
                _vec((-tm1 * half, FieldScalar(-half), -TAU * half)),
                _vec((0, 0, 1))]
    if name == "E8":
        return _e8_simple_roots()
    raise RootSystemError(f"unknown family {name!r}")


def simple_roots(name: str) -> list[Vector]:
    """Simple roots of a built-in family, in diagram node order."""
    key = name.upper()
    if key not in FAMILIES:
        raise RootSystemError(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}")
    roots = _builtin(key)
    got = diagram_from_roots(roots)
    if got.labels != FAMILIES[key].labels:
        raise RootSystemError(f"internal error: {key} coordinates do not match its diagram")
    return roots


def simple_roots_for(diagram: CoxeterDiagram | str) -> list[Vector]:
    """Simple roots realising ``diagram``, matched to a built-in family up to node relabelling."""
    if isinstance(diagram, str):
        diagram = parse_diagram(diagram)
    for name, fam in FAMILIES.items():
        if fam.rank != diagram.rank:
            continue
        perm = _match_labels(fam, diagram)
        if perm is not None:
            base = simple_roots(name)
            return [base[perm[i]] for i in range(diagram.rank)]
    raise RootSystemError(f"no coordinates known for diagram {diagram.to_text()!r}")


def family_name(diagram: CoxeterDiagram) -> str | None:
    for name, fam in FAMILIES.items():
        if fam.rank == diagram.rank and _match_labels(fam, diagram) is not None:
            return name
    return None


def _match_labels(fam: CoxeterDiagram, d: CoxeterDiagram) -> tuple[int, ...] | None:
    """perm with d.labels[i][j] == fam.labels[perm[i]][perm[j]], if any."""
    n = d.rank
    if sorted(map(sorted, fam.labels)) != sorted(map(sorted, d.labels)):
        return None
    if fam.labels == d.labels:
        return tuple(range(n))
    for perm in itertools.permutations(range(n)):
        if all(d.labels[i][j] == fam.labels[perm[i]][perm[j]] for i in range(n) for j in range(i + 1, n)):
            return perm
    return None


def cartan_matrix(simple: Sequence[Sequence[Scalar]]) -> list[list[FieldScalar]]:
    """A_ij = 2 (a_i|a_j) / (a_j|a_j)."""
    roots = [_vec(r) for r in simple]
    if rank(roots) != len(roots):
        raise RootSystemError("simple roots are linearly dependent")
    norms = [dot(r, r) for r in roots]
    return [[2 * dot(ri, rj) / nj for rj, nj in zip(roots, norms)] for ri in roots]


_PRODUCT_TO_LABEL = {
    FieldScalar(0): 2, FieldScalar(1): 3, FieldScalar(2): 4, TAU + 1: 5, FieldScalar(3): 6,
}


def diagram_from_roots(simple: Sequence[Sequence[Scalar]]) -> CoxeterDiagram:
    """Read the Coxeter labels off the Cartan matrix: A_ij A_ji = 4 cos^2(pi/m)."""
    a = cartan_matrix(simple)
    n = len(a)
    rows = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if a[i][j].sign() > 0:
                raise RootSystemError(f"obtuse-angle condition fails for ({i + 1}, {j + 1})")
            prod = a[i][j] * a[j][i]
            if prod not in _PRODUCT_TO_LABEL:
                raise RootSystemError(f"Cartan product {prod} is not 4cos^2(pi/m) for m <= 6")
            rows[i][j] = _PRODUCT_TO_LABEL[prod]
    return CoxeterDiagram(tuple(tuple(r) for r in rows))


def reflect_vector(alpha: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    """v - 2 (v|alpha) / (alpha|alpha) alpha."""
    a, w = _vec(alpha), _vec(v)
    c = 2 * dot(w, a) / dot(a, a)
    return tuple(x - c * y for x, y in zip(w, a))


def _preflect(v: Packed, alpha: Packed, two_over_norm: FieldScalar) -> Packed:
    c = pdot(v, alpha)
    if c.is_zero():
        return v
    return psub_scaled(v, c * two_over_norm, alpha)


@dataclass(frozen=True)
class RootSystem:
    dimension: int
    roots: tuple[Vector, ...]
    name: str | None = None
    simple: tuple[Vector, ...] | None = None
    _packed: tuple = field(default=(), init=False, repr=False, compare=False)
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        packed = tuple(pack(r) for r in self.roots)
        object.__setattr__(self, "_packed", packed)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(packed)})

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, v: Sequence[Scalar]) -> bool:
        return pack(_vec(v)) in self._index

    def index(self, v: Sequence[Scalar]) -> int:
        return self._index[pack(_vec(v))]

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[Scalar]], name: str | None = None,
                     simple: Sequence[Sequence[Scalar]] | None = None) -> RootSystem:
        uniq = sorted({_vec(v) for v in vectors}, key=vector_sort_key)
        if not uniq:
            raise RootSystemError("empty root system")
        dims = {len(v) for v in uniq}
        if len(dims) != 1:
            raise RootSystemError("roots have different dimensions")
        simple_t = tuple(_vec(s) for s in simple) if simple is not None else None
        return cls(dims.pop(), tuple(uniq), name, simple_t)

    def norms(self) -> list[FieldScalar]:
        return sorted({dot(r, r) for r in self.roots}, key=lambda x: x.key())

    def gram(self) -> list[list[FieldScalar]]:
        return [[pdot(r, s) for s in self._packed] for r in self._packed]

    def to_json(self, precision: int = 64) -> dict:
        return {
            "name": self.name,
            "dimension": self.dimension,
            "count": len(self.roots),
            "roots": [[c.to_json(precision) for c in r] for r in self.roots],
        }


def generate(simple: Sequence[Sequence[Scalar]], ceiling: int = DEFAULT_ROOT_CEILING,
             name: str | None = None, check: bool = True) -> RootSystem:
    """Orbit of the simple roots under the group generated by their reflections."""
    gens = [_vec(s) for s in simple]
    if not gens:
        raise RootSystemError("need at least one simple root")
    pgens = [pack(g) for g in gens]
    factors = []
    for p in pgens:
        n2 = pdot(p, p)
        if n2.is_zero():
            raise RootSystemError("zero simple root")
        factors.append(FieldScalar(2) / n2)
    seen = set(pgens)
    queue = deque(pgens)
    while queue:
        v = queue.popleft()
        for g, f in zip(pgens, factors):
            w = _preflect(v, g, f)
            if w not in seen:
                seen.add(w)
                if len(seen) > ceiling:
                    raise RootSystemError(f"non-finite or too large: more than {ceiling} roots")
                queue.append(w)
    seen = {unpack(p) for p in seen}
    rs = RootSystem.from_vectors(seen, name=name, simple=gens)
    if check:
        report = verify(rs)
        if not report.ok:
            raise RootSystemError(f"generated set violates the root system axioms: {report.summary()}")
    return rs


@dataclass
class VerificationReport:
    ok: bool
    axiom1: list[tuple[str, int, int]]
    axiom2: list[tuple[int, int]]

    def summary(self) -> str:
        if self.ok:
            return "both axioms hold"
        return f"{len(self.axiom1)} axiom-1 and {len(self.axiom2)} axiom-2 violations"

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "axiom1_violations": [list(v) for v in self.axiom1],
                "axiom2_violations": [list(v) for v in self.axiom2]}


def _direction_key(v: Vector) -> Vector | None:
    lead = next((x for x in v if not x.is_zero()), None)
    if lead is None:
        return None
    inv = lead.invert()
    return tuple(x * inv for x in v)


def verify(phi: RootSystem) -> VerificationReport:
    """Check negation closure (only +-r on each line) and reflection closure."""
    axiom1: list[tuple[str, int, int]] = []
    lines: dict[Vector, list[int]] = {}
    for i, r in enumerate(phi.roots):
        k = _direction_key(r)
        if k is None:
            axiom1.append(("zero", i, i))
            continue
        lines.setdefault(k, []).append(i)
    for members in lines.values():
        neg = [(i, j) for i, j in itertools.combinations(members, 2)
               if all((x + y).is_zero() for x, y in zip(phi.roots[i], phi.roots[j]))]
        for i, j in itertools.combinations(members, 2):
            if (i, j) not in neg:
                axiom1.append(("multiple", i, j))
        if not neg:
            axiom1.append(("missing-negative", members[0], members[0]))
    axiom2: list[tuple[int, int]] = []
    for a, alpha in enumerate(phi._packed):
        n2 = pdot(alpha, alpha)
        if n2.is_zero():
            continue
        f = FieldScalar(2) / n2
        for b, r in enumerate(phi._packed):
            if _preflect(r, alpha, f) not in phi._index:
                axiom2.append((a, b))
    return VerificationReport(not axiom1 and not axiom2, axiom1, axiom2)


def express_in_simple_roots(simple: Sequence[Vector], v: Vector) -> list[FieldScalar] | None:
    return solve(simple, v)


def _gram_ids(phi: RootSystem) -> list[list[int]]:
    ids: dict[FieldScalar, int] = {}
    n = len(phi.roots)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = pdot(phi._packed[i], phi._packed[j])
            k = ids.setdefault(v, len(ids))
            g[i][j] = g[j][i] = k
    return g


def _greedy_base(phi: RootSystem) -> list[int]:
    base: list[int] = []
    target = rank(phi.roots)
    for i, r in enumerate(phi.roots):
        if rank([phi.roots[j] for j in base] + [r]) == len(base) + 1:
            base.append(i)
            if len(base) == target:
                break
    return base


def automorphism_order(phi: RootSystem) -> int:
    """Order of the group of orthogonal maps of the span of phi that permute phi.

    Backtracks over images of a basis of roots, pruning on Gram rows; each
    complete assignment is accepted when every root's inner products with the
    image frame are matched by some root.
    """
    g = _gram_ids(phi)
    n = len(phi.roots)
    base = _greedy_base(phi)
    k = len(base)
    sigs = [tuple(g[r][b] for b in base) for r in range(n)]
    count = 0
    images: list[int] = []

    def extend(level: int) -> None:
        nonlocal count
        if level == k:
            frame = {tuple(g[s][im] for im in images) for s in range(n)}
            if all(sig in frame for sig in sigs):
                count += 1
            return
        b = base[level]
        want_norm = g[b][b]
        want = [g[b][base[j]] for j in range(level)]
        for s in range(n):
            if g[s][s] != want_norm:
                continue
            row = g[s]
            if all(row[images[j]] == want[j] for j in range(level)):
                images.append(s)
                extend(level + 1)
                images.pop()

    extend(0)
    return count
