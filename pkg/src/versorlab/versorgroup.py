"""Finite groups of unit versors: Pin and Spin groups generated by simple
roots, their conjugacy classes, and the rotation quotient G/{+-1}."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Sequence

from .clifford import Multivector, reverse
from .field import FieldScalar, Scalar
from .linalg import dot
from .rootsystem import RootSystemError, generate, reflect_vector

__all__ = [
    "VersorGroup", "GroupError", "generate_pin", "even_subgroup", "rotation_quotient",
    "DEFAULT_GROUP_CEILING", "reflection_group_order",
]

DEFAULT_GROUP_CEILING = 10_000

KINDS = ("pin", "spin", "rotation")


class GroupError(ValueError):
    pass


def _compare_mv(a: Multivector, b: Multivector) -> int:
    for x, y in zip(a.coefficients, b.coefficients):
        if x != y:
            return (x - y).sign()
    return 0


_mv_sort_key = cmp_to_key(_compare_mv)


def sign_normalize(mv: Multivector) -> Multivector:
    """Representative of {mv, -mv} whose first nonzero coefficient is positive."""
    terms = mv.terms()
    if terms and terms[0][1].sign() < 0:
        return -mv
    return mv


@dataclass
class VersorGroup:
    """A finite group of unit versors, elements in a canonical order.

    For kind ``rotation`` each element stands for the pair {R, -R} and is
    stored by its sign-normalised representative.
    """

    elements: tuple[Multivector, ...]
    kind: str
    generators: tuple[int, ...] = ()
    _index: dict = field(default_factory=dict, repr=False)
    _products: dict = field(default_factory=dict, repr=False)
    _classes: list | None = field(default=None, repr=False)
    _table: list | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise GroupError(f"unknown group kind {self.kind!r}")
        self._index = {e: i for i, e in enumerate(self.elements)}

    @classmethod
    def from_elements(cls, elements, kind: str, generators: Sequence[Multivector] = ()) -> VersorGroup:
        elems = tuple(sorted(set(elements), key=_mv_sort_key))
        g = cls(elems, kind)
        g.generators = tuple(g.index(x) for x in generators)
        return g

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dimension(self) -> int:
        return self.elements[0].dimension

    def canonical(self, mv: Multivector) -> Multivector:
        return sign_normalize(mv) if self.kind == "rotation" else mv

    def index(self, mv: Multivector) -> int:
        try:
            return self._index[self.canonical(mv)]
        except KeyError:
            raise GroupError("element is not in the group") from None

    def __contains__(self, mv: Multivector) -> bool:
        return self.canonical(mv) in self._index

    @property
    def identity(self) -> int:
        return self.index(Multivector.scalar(self.dimension, 1))

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        key = (i, j)
        k = self._products.get(key)
        if k is None:
            k = self.index(self.elements[i] * self.elements[j])
            self._products[key] = k
        return k

    def inv(self, i: int) -> int:
        return self.index(reverse(self.elements[i]))

    def table(self) -> list[list[int]]:
        """Full multiplication table of element indices."""
        if self._table is None:
            n = len(self.elements)
            self._table = [[self.mul(i, j) for j in range(n)] for i in range(n)]
        return self._table

    def element_order(self, i: int) -> int:
        one = self.identity
        k, x = 1, i
        while x != one:
            x = self.mul(x, i)
            k += 1
            if k > len(self.elements):
                raise GroupError("element order exceeds group order")
        return k

    def conjugate(self, g: int, h: int) -> int:
        """reverse(h) g h, i.e. h^-1 g h."""
        return self.mul(self.mul(self.inv(h), g), h)

    def _conjugating_set(self) -> list[int]:
        gens = list(self.generators)
        if gens:
            seen = {self.identity}
            queue = deque(seen)
            while queue:
                x = queue.popleft()
                for h in gens:
                    y = self.mul(x, h)
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            if len(seen) == len(self.elements):
                return gens
        return list(range(len(self.elements)))

    def conjugacy_classes(self) -> list[list[int]]:
        """Classes ordered by element order, then size, then decreasing a0**2
        (smaller rotation angle first), then smallest member."""
        if self._classes is None:
            gens = self._conjugating_set()
            seen = [False] * len(self.elements)
            classes = []
            for g in range(len(self.elements)):
                if seen[g]:
                    continue
                orbit = {g}
                queue = deque([g])
                seen[g] = True
                while queue:
                    x = queue.popleft()
                    for h in gens:
                        y = self.conjugate(x, h)
                        if not seen[y]:
                            seen[y] = True
                            orbit.add(y)
                            queue.append(y)
                classes.append(sorted(orbit))
            def key(c):
                a0 = self.elements[c[0]].scalar_part()
                return (self.element_order(c[0]), len(c), -(a0 * a0), c[0])
            classes.sort(key=key)
            self._classes = classes
        return self._classes

    def class_of(self) -> list[int]:
        out = [0] * len(self.elements)
        for ci, members in enumerate(self.conjugacy_classes()):
            for m in members:
                out[m] = ci
        return out

    def class_labels(self) -> list[str]:
        """Labels like '20C3'; a class holding k-th powers of an earlier class
        with the same size and order is written '12C5^2'."""
        classes = self.conjugacy_classes()
        cls_of = self.class_of()
        labels: list[str] = []
        first: dict[tuple[int, int], int] = {}
        for ci, members in enumerate(classes):
            order = self.element_order(members[0])
            if order == 1:
                labels.append("1")
                continue
            base = f"{len(members)}C{order}"
            key = (order, len(members))
            if key not in first:
                first[key] = ci
                labels.append(base)
                continue
            g = classes[first[key]][0]
            x, suffix = g, None
            for k in range(2, order):
                x = self.mul(x, g)
                if cls_of[x] == ci:
                    suffix = f"^{k}"
                    break
            label = base + (suffix or "'")
            while label in labels:
                label += "'"
            labels.append(label)
        return labels

    def centralizer_order(self, g: int) -> int:
        return sum(1 for h in range(len(self.elements)) if self.mul(g, h) == self.mul(h, g))

    def to_json(self, precision: int = 64, with_elements: bool = True) -> dict:
        classes = self.conjugacy_classes()
        out = {
            "kind": self.kind,
            "order": self.order,
            "class_count": len(classes),
            "class_sizes": [len(c) for c in classes],
            "class_element_orders": [self.element_order(c[0]) for c in classes],
            "class_labels": self.class_labels(),
        }
        if with_elements:
            out["elements"] = [str(e) for e in self.elements]
        return out


def _unit(v: Sequence[Scalar]) -> Multivector:
    coords = [FieldScalar.coerce(c) for c in v]
    n2 = dot(coords, coords)
    inv = n2.sqrt().invert()
    return Multivector.vector([c * inv for c in coords])


def reflection_group_order(simple: Sequence[Sequence[Scalar]], ceiling: int) -> int:
    """Order of the group generated by reflections in ``simple``, counted as
    permutations of the root orbit; GroupError once it passes ``ceiling``."""
    try:
        phi = generate(simple, ceiling=max(ceiling, 1) * len(simple), check=False)
    except RootSystemError as exc:
        raise GroupError(str(exc)) from None
    gens = []
    for s in phi.simple:
        gens.append(tuple(phi.index(reflect_vector(s, r)) for r in phi.roots))
    ident = tuple(range(len(phi)))
    seen = {ident}
    queue = deque(seen)
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(g[i] for i in p)
            if q not in seen:
                seen.add(q)
                if len(seen) > ceiling:
                    raise GroupError(f"non-finite or too large: reflection group has more than {ceiling} elements")
                queue.append(q)
    return len(seen)


def generate_pin(simple: Sequence[Sequence[Scalar]], ceiling: int = DEFAULT_GROUP_CEILING,
                 normalize: bool = True) -> VersorGroup:
    """Multiplicative closure of {+-a_i} for the (unit-normalised) simple roots.

    The pin group double-covers the reflection group, so that group is
    counted first (cheaply, on root indices) to fail fast when 2|W| > ceiling.
    """
    try:
        reflection_group_order(simple, ceiling // 2)
    except GroupError:
        raise GroupError(f"non-finite or too large: more than {ceiling} elements") from None
    if normalize:
        gens = [_unit(v) for v in simple]
    else:
        gens = [Multivector.vector(v) for v in simple]
    for g in gens:
        if not (g * g).is_scalar() or (g * g).scalar_part() != 1:
            raise GroupError("generators must be unit vectors")
    all_gens = gens + [-g for g in gens]
    one = Multivector.scalar(gens[0].dimension, 1)
    seen = {one}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in all_gens:
            for y in (x * g, g * x):
                if y not in seen:
                    seen.add(y)
                    if len(seen) > ceiling:
                        raise GroupError(f"non-finite or too large: more than {ceiling} elements")
                    queue.append(y)
    return VersorGroup.from_elements(seen, "pin", gens)


def even_subgroup(group: VersorGroup) -> VersorGroup:
    if group.kind != "pin":
        raise GroupError("even_subgroup expects a pin group")
    evens = [e for e in group.elements if e.parity() == "even"]
    if 2 * len(evens) != len(group.elements):
        raise GroupError("even part does not have index 2")
    gens = [group.elements[i] for i in group.generators]
    spin_gens = [a * b for a in gens for b in gens if a is not b]
    return VersorGroup.from_elements(evens, "spin", spin_gens)


def rotation_quotient(group: VersorGroup) -> VersorGroup:
    """Identify R with -R."""
    if group.kind == "rotation":
        return group
    minus_one = Multivector.scalar(group.dimension, -1)
    if minus_one not in group:
        raise GroupError("-1 is not in the group; cannot form the rotation quotient")
    reps = {sign_normalize(e) for e in group.elements}
    gens = [sign_normalize(group.elements[i]) for i in group.generators]
    return VersorGroup.from_elements(reps, "rotation", gens)
