"""From a 3D root system to a 4D one through its spinor group.

A spinor R = a0 + a1 e2e3 + a2 e3e1 + a3 e1e2 of Cl(3) is read as the 4D
vector (a0, a1, a2, a3); the 4D inner product is the scalar part of
(R1 reverse(R2) + R2 reverse(R1)) / 2.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .clifford import Multivector, reverse
from .field import ONE, TAU, ZERO, FieldScalar
from .linalg import Vector, pdot
from .rootsystem import RootSystem, automorphism_order, generate, _greedy_base
from .versorgroup import DEFAULT_GROUP_CEILING, VersorGroup, even_subgroup, generate_pin

__all__ = [
    "SpinorAs4DVector", "spinor_to_vector", "vector_to_spinor", "spinor_inner",
    "induce", "spin_group", "identify", "check_spinorial_automorphisms",
    "SpinorialAutomorphismReport", "CATALOG",
]

# (blade mask, sign) of Ie1 = e2e3, Ie2 = e3e1 = -e1e3, Ie3 = e1e2
_BIVECTOR_SLOTS = ((0b110, 1), (0b101, -1), (0b011, 1))


@dataclass(frozen=True)
class SpinorAs4DVector:
    a0: FieldScalar
    a1: FieldScalar
    a2: FieldScalar
    a3: FieldScalar

    @property
    def coords(self) -> Vector:
        return (self.a0, self.a1, self.a2, self.a3)

    def to_multivector(self) -> Multivector:
        return vector_to_spinor(self.coords)

    def norm2(self) -> FieldScalar:
        return sum((x * x for x in self.coords), ZERO)


def spinor_to_vector(R: Multivector) -> SpinorAs4DVector:
    if R.dimension != 3:
        raise ValueError("spinor_to_vector expects an element of Cl(3)")
    if any(g not in (0, 2) for g in R.grades()):
        raise ValueError("spinor has odd-grade content")
    bits = [R[mask] if s > 0 else -R[mask] for mask, s in _BIVECTOR_SLOTS]
    return SpinorAs4DVector(R[0], *bits)


def vector_to_spinor(coords: Sequence[FieldScalar]) -> Multivector:
    a0, a1, a2, a3 = (FieldScalar.coerce(c) for c in coords)
    terms = {0: a0}
    for (mask, s), a in zip(_BIVECTOR_SLOTS, (a1, a2, a3)):
        terms[mask] = a if s > 0 else -a
    return Multivector.from_terms(3, terms)


def spinor_inner(r1: Multivector | SpinorAs4DVector, r2: Multivector | SpinorAs4DVector) -> FieldScalar:
    """(R1, R2) = scalar part of (R1 ~R2 + R2 ~R1) / 2."""
    m1 = r1.to_multivector() if isinstance(r1, SpinorAs4DVector) else r1
    m2 = r2.to_multivector() if isinstance(r2, SpinorAs4DVector) else r2
    s = m1 * reverse(m2) + m2 * reverse(m1)
    return s.scalar_part() / 2


@lru_cache(maxsize=None)
def _spin_group_cached(simple: tuple, ceiling: int) -> VersorGroup:
    return even_subgroup(generate_pin(simple, ceiling=ceiling))


def spin_group(phi3: RootSystem, ceiling: int = DEFAULT_GROUP_CEILING) -> VersorGroup:
    """Even part of the Pin group generated by the (unit) simple roots of phi3."""
    if phi3.dimension != 3:
        raise ValueError("spinor induction starts from a 3D root system")
    gens = phi3.simple if phi3.simple is not None else phi3.roots
    return _spin_group_cached(tuple(gens), ceiling)


def induce(phi3: RootSystem, ceiling: int = DEFAULT_GROUP_CEILING) -> RootSystem:
    """The 4D root system formed by the spinor group of phi3."""
    group = spin_group(phi3, ceiling)
    vectors = [spinor_to_vector(R).coords for R in group.elements]
    phi4 = RootSystem.from_vectors(vectors)
    name = identify(phi4)
    return RootSystem(phi4.dimension, phi4.roots, None if name == "unknown" else name, None)


# -- identification -----------------------------------------------------------

def _even_permutations(n: int):
    for p in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        if inversions % 2 == 0:
            yield p


def _catalog_vectors(name: str) -> list[tuple]:
    h = Fraction(1, 2)
    unit = [tuple(s if k == i else 0 for k in range(4)) for i in range(4) for s in (1, -1)]
    halves = list(itertools.product((h, -h), repeat=4))
    d4 = [tuple(si if k == i else sj if k == j else 0 for k in range(4))
          for i, j in itertools.combinations(range(4), 2) for si in (1, -1) for sj in (1, -1)]
    if name == "A1^4":
        return unit
    if name == "D4":
        return d4
    if name == "F4":
        return d4 + unit + halves
    if name == "H4":
        base = (FieldScalar(0), FieldScalar(h), TAU / 2, (TAU - 1) / 2)
        snub = set()
        for p in _even_permutations(4):
            for signs in itertools.product((1, -1), repeat=4):
                snub.add(tuple(base[p[k]] * signs[k] for k in range(4)))
        return unit + halves + sorted(snub, key=lambda v: tuple(x.key() for x in v))
    raise KeyError(name)


def _angle_profile(phi: RootSystem) -> Counter:
    """Multiset of signed squared cosines (r|s)|(r|s)| / ((r|r)(s|s))."""
    packed = phi._packed
    norms = [pdot(p, p) for p in packed]
    out: Counter = Counter()
    for i, p in enumerate(packed):
        for j, q in enumerate(packed):
            ip = pdot(p, q)
            c = ip * ip / (norms[i] * norms[j])
            out[-c if ip.sign() < 0 else c] += 1
    return out


@lru_cache(maxsize=None)
def _catalog_profiles() -> dict[str, tuple[int, Counter]]:
    out = {}
    for name in CATALOG:
        phi = RootSystem.from_vectors(_catalog_vectors(name), name=name)
        out[name] = (len(phi), _angle_profile(phi))
    return out


CATALOG = ("A1^4", "D4", "F4", "H4")


def catalog_system(name: str) -> RootSystem:
    return RootSystem.from_vectors(_catalog_vectors(name), name=name)


def identify(phi4: RootSystem) -> str:
    """Name of the catalog root system with the same root count and angle profile.

    Angles rather than lengths are compared, so a system whose roots were all
    rescaled to unit length (as the induced F4 is) still matches.
    """
    if phi4.dimension != 4:
        return "unknown"
    profiles = _catalog_profiles()
    candidates = [n for n, (count, _) in profiles.items() if count == len(phi4)]
    if not candidates:
        return "unknown"
    prof = _angle_profile(phi4)
    for name in candidates:
        if profiles[name][1] == prof:
            return name
    return "unknown"


# -- left/right symmetries ----------------------------------------------------

@dataclass
class SpinorialAutomorphismReport:
    pairs_checked: int
    all_onto: bool
    all_isometries: bool
    distinct_maps: int
    distinct_maps_with_reversal: int
    automorphism_order: int | None = None

    @property
    def ok(self) -> bool:
        return self.all_onto and self.all_isometries

    @property
    def divides_automorphism_order(self) -> bool | None:
        if self.automorphism_order is None:
            return None
        return self.automorphism_order % self.distinct_maps == 0

    def to_json(self) -> dict:
        return {
            "pairs_checked": self.pairs_checked,
            "all_onto": self.all_onto,
            "all_isometries": self.all_isometries,
            "distinct_left_right_maps": self.distinct_maps,
            "distinct_maps_with_reversal": self.distinct_maps_with_reversal,
            "automorphism_order": self.automorphism_order,
            "divides_automorphism_order": self.divides_automorphism_order,
        }


def check_spinorial_automorphisms(phi4: RootSystem, group: VersorGroup,
                                  with_automorphism_order: bool = False) -> SpinorialAutomorphismReport:
    """Check every map x -> R1 x R2 (R1, R2 in the group) against phi4.

    A map is accepted when it permutes phi4 and preserves the inner products
    among a basis of roots; being linear, it is then an isometry.
    """
    n = len(group)
    root_of = []
    for R in group.elements:
        v = spinor_to_vector(R).coords
        if v not in phi4:
            raise ValueError("phi4 is not the image of this spinor group")
        root_of.append(phi4.index(v))
    if len(phi4) != n:
        raise ValueError("phi4 has roots outside the spinor group image")
    elem_of = [0] * n
    for g, r in enumerate(root_of):
        elem_of[r] = g
    table = group.table()
    inv = [group.inv(i) for i in range(n)]
    gram = phi4.gram()
    base = [elem_of[r] for r in _greedy_base(phi4)]
    base_gram = [[gram[root_of[x]][root_of[y]] for y in base] for x in base]

    all_onto = True
    all_iso = True
    maps: set[tuple[int, ...]] = set()
    rev_maps: set[tuple[int, ...]] = set()
    for a in range(n):
        row_a = table[a]
        for b in range(n):
            perm = tuple(table[row_a[x]][b] for x in range(n))
            if len(set(perm)) != n:
                all_onto = False
            imgs = [root_of[perm[x]] for x in base]
            if any(gram[imgs[i]][imgs[j]] != base_gram[i][j]
                   for i in range(len(base)) for j in range(i, len(base))):
                all_iso = False
            maps.add(perm)
            rev_maps.add(tuple(perm[inv[x]] for x in range(n)))
    aut = automorphism_order(phi4) if with_automorphism_order else None
    return SpinorialAutomorphismReport(n * n, all_onto, all_iso, len(maps), len(maps | rev_maps), aut)
