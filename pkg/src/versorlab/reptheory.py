"""Representations read off from versor actions, character tables, McKay graphs.

Matrices act on column vectors: column j holds the image of basis vector j.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath
import networkx as nx

from .clifford import Multivector, reverse, sandwich_matrix
from .field import ONE, SQRT2, TAU, ZERO, FieldScalar
from .induction import spinor_to_vector, vector_to_spinor
from .linalg import Matrix, matmul, trace
from .versorgroup import VersorGroup

__all__ = [
    "MatrixRep", "CharacterTable", "CharacterEntry", "McKayGraph", "RepresentationError",
    "spinor_to_so3", "so3_character", "contragredient_action", "left_mult_matrix",
    "matrix_rep", "rep_norm_squared", "scalar_rep_characters", "character_table",
    "mckay_graph", "AFFINE_DIAGRAMS", "affine_diagram", "REP_KINDS",
]


class RepresentationError(ValueError):
    pass


def _require_unit_spinor(R: Multivector) -> None:
    if R.dimension != 3 or any(g not in (0, 2) for g in R.grades()):
        raise RepresentationError("expected an even element of Cl(3)")
    n2 = R * reverse(R)
    if not n2.is_scalar() or n2.scalar_part() != ONE:
        raise RepresentationError("spinor is not of unit norm")


def spinor_to_so3(R: Multivector) -> Matrix:
    """Rotation matrix of x -> reverse(R) x R."""
    _require_unit_spinor(R)
    return sandwich_matrix(R)


def so3_character(R: Multivector) -> FieldScalar:
    """3 a0^2 - a1^2 - a2^2 - a3^2, read straight from the components."""
    _require_unit_spinor(R)
    a0, a1, a2, a3 = spinor_to_vector(R).coords
    return 3 * a0 * a0 - a1 * a1 - a2 * a2 - a3 * a3


def contragredient_action(R: Multivector) -> Matrix:
    """Rotation matrix of x -> R x reverse(R)."""
    return spinor_to_so3(reverse(R))


_BASIS_ORDERS = {
    "scalar-first": (0, 1, 2, 3),  # (1, Ie1, Ie2, Ie3), the induced 4D coordinates
    "scalar-last": (1, 2, 3, 0),   # (Ie1, Ie2, Ie3, 1)
}


def left_mult_matrix(R: Multivector, basis: str = "scalar-first") -> Matrix:
    """4x4 matrix of S -> R S on the even subalgebra of Cl(3)."""
    _require_unit_spinor(R)
    try:
        order = _BASIS_ORDERS[basis]
    except KeyError:
        raise ValueError(f"unknown basis order {basis!r}") from None
    units = []
    for k in order:
        c = [ZERO] * 4
        c[k] = ONE
        units.append(vector_to_spinor(c))
    cols = []
    for b in units:
        v = spinor_to_vector(R * b).coords
        cols.append([v[k] for k in order])
    return [[cols[j][i] for j in range(4)] for i in range(4)]


# -- representations on a whole group ----------------------------------------

@dataclass
class MatrixRep:
    """Images of every group element plus the class-wise character."""

    name: str
    degree: int
    images: dict[int, Matrix]
    character: dict[int, FieldScalar]
    action: str = "left"

    def character_list(self) -> list[FieldScalar]:
        return [self.character[k] for k in sorted(self.character)]

    def respects(self, group: VersorGroup, g: int, h: int) -> bool:
        """The composition law for the pair (g, h).

        A left action satisfies M(gh) = M(g) M(h); the sandwich x -> ~R x R
        is a right action, for which M(gh) = M(h) M(g).
        """
        lhs = self.images[group.mul(g, h)]
        if self.action == "left":
            return lhs == matmul(self.images[g], self.images[h])
        return lhs == matmul(self.images[h], self.images[g])


def _image_fn(kind: str, group: VersorGroup) -> tuple[int, Callable[[Multivector], Matrix], str]:
    if kind == "trivial":
        return 1, lambda g: [[ONE]], "left"
    if kind == "parity":
        return 1, lambda g: [[ONE if g.parity() == "even" else -ONE]], "left"
    if group.dimension != 3:
        raise RepresentationError(f"{kind} representation needs a group in Cl(3)")
    if kind == "so3":
        # on a pin group this is the O(3) action, odd versors carrying the minus sign
        return 3, (sandwich_matrix if group.kind == "pin" else spinor_to_so3), "right"
    if kind == "contragredient":
        if group.kind == "pin":
            return 3, lambda g: sandwich_matrix(reverse(g)), "left"
        return 3, contragredient_action, "left"
    if kind == "leftmult":
        if group.kind != "spin":
            raise RepresentationError("left multiplication needs a spin group (not the +-1 quotient)")
        return 4, left_mult_matrix, "left"
    raise RepresentationError(f"unknown representation kind {kind!r}")


REP_KINDS = ("trivial", "parity", "so3", "contragredient", "leftmult")


def matrix_rep(group: VersorGroup, kind: str) -> MatrixRep:
    """Representation of the given kind, with a check that traces are class functions."""
    degree, fn, action = _image_fn(kind, group)
    images = {i: fn(g) for i, g in enumerate(group.elements)}
    character: dict[int, FieldScalar] = {}
    for ci, members in enumerate(group.conjugacy_classes()):
        values = {trace(images[m]) for m in members}
        if len(values) != 1:
            raise RepresentationError(f"trace is not constant on class {ci}")
        character[ci] = values.pop()
    return MatrixRep(kind, degree, images, character, action)


def rep_norm_squared(rep: MatrixRep, group: VersorGroup) -> FieldScalar:
    """(1/|G|) sum over g of chi(g)^2 (the characters here are real)."""
    total = ZERO
    for ci, members in enumerate(group.conjugacy_classes()):
        x = rep.character[ci]
        total = total + len(members) * x * x
    return total / group.order


def scalar_rep_characters(group: VersorGroup) -> dict[str, list[FieldScalar]]:
    """Class-wise trivial and parity characters from the action on scalars."""
    classes = group.conjugacy_classes()
    parity = [ONE if group.elements[c[0]].parity() == "even" else -ONE for c in classes]
    return {"trivial": [ONE] * len(classes), "parity": parity}


# -- character tables -------------------------------------------------------

_RECOGNISE_TOL = mpmath.mpf(10) ** -40
_MAX_COEFF = 12


def _recognise_real(x) -> FieldScalar | None:
    """x as (a + b*u)/q for u in (tau, sqrt2), q in (1, 2), small integers a, b."""
    for q in (1, 2):
        for b in range(_MAX_COEFF + 1):
            for sb in ((b,) if b == 0 else (b, -b)):
                for u, exact_u in ((mpmath.phi, TAU), (mpmath.sqrt(2), SQRT2)):
                    a = mpmath.nint(q * x - sb * u)
                    if abs(q * x - a - sb * u) < _RECOGNISE_TOL:
                        return (FieldScalar(int(a)) + sb * exact_u) / q
                    if b == 0:
                        break
    return None


@dataclass
class CharacterEntry:
    """A character value: high-precision complex number, plus an exact form
    re + im * i*sqrt(3) when one was recognised."""

    value: mpmath.mpc
    re: FieldScalar | None = None
    im_over_sqrt3: FieldScalar | None = None

    @property
    def exact(self) -> bool:
        return self.re is not None and self.im_over_sqrt3 is not None

    @classmethod
    def recognise(cls, z) -> CharacterEntry:
        z = mpmath.mpc(z)
        re = _recognise_real(z.real)
        im = _recognise_real(z.imag / mpmath.sqrt(3))
        if im is not None and not im.is_rational():
            im = None
        return cls(z, re, im)

    def __str__(self) -> str:
        if not self.exact:
            if abs(self.value.imag) < _RECOGNISE_TOL:
                return mpmath.nstr(self.value.real, 15)
            return mpmath.nstr(self.value, 15)
        if self.im_over_sqrt3.is_zero():
            return str(self.re)
        im = self.im_over_sqrt3
        sign = "-" if im < 0 else "+"
        mag = -im if im < 0 else im
        coef = "" if mag == ONE else f"{mag}*"
        head = "" if self.re.is_zero() else f"{self.re} {sign} "
        if not head and sign == "-":
            head = "-"
        return f"{head}{coef}i√3"

    def decimal(self, digits: int = 20) -> str:
        return mpmath.nstr(self.value, digits)

    def to_json(self, precision: int = 64) -> dict:
        digits = max(1, int(precision * 0.30103))
        out = {
            "re": mpmath.nstr(self.value.real, digits),
            "im": mpmath.nstr(self.value.imag, digits),
            "exact": self.exact,
        }
        if self.exact:
            out["exact_re"] = self.re.to_json(precision)["exact"]
            out["exact_im_over_sqrt3"] = self.im_over_sqrt3.to_json(precision)["exact"]
        return out


@dataclass
class CharacterTable:
    """Irreducible characters: rows are irreps, columns are classes."""

    class_sizes: list[int]
    class_labels: list[str]
    degrees: list[int]
    irrep_labels: list[str]
    entries: list[list[CharacterEntry]]
    class_coefficients: list[list[list[int]]] = field(repr=False, default_factory=list)
    orthogonality_residual: float = 0.0

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    @property
    def all_exact(self) -> bool:
        return all(e.exact for row in self.entries for e in row)

    def row(self, label: str) -> list[CharacterEntry]:
        return self.entries[self.irrep_labels.index(label)]

    def to_json(self, precision: int = 64) -> dict:
        return {
            "order": self.order,
            "class_labels": self.class_labels,
            "class_sizes": self.class_sizes,
            "irreps": [
                {"label": lab, "degree": d, "values": [str(e) for e in row],
                 "entries": [e.to_json(precision) for e in row]}
                for lab, d, row in zip(self.irrep_labels, self.degrees, self.entries)
            ],
            "sum_of_degrees": sum(self.degrees),
            "sum_of_squared_degrees": sum(d * d for d in self.degrees),
            "all_exact": self.all_exact,
            "orthogonality_residual": f"{self.orthogonality_residual:.3e}",
        }


def _class_coefficients(group: VersorGroup) -> list[list[list[int]]]:
    """c[i][j][l] = #{x in C_i : x^-1 z in C_j} for a fixed z in C_l."""
    classes = group.conjugacy_classes()
    cls = group.class_of()
    k = len(classes)
    c = [[[0] * k for _ in range(k)] for _ in range(k)]
    inverses = [group.inv(x) for x in range(group.order)]
    for l, cl in enumerate(classes):
        z = cl[0]
        for i, ci in enumerate(classes):
            for x in ci:
                c[i][cls[group.mul(inverses[x], z)]][l] += 1
    return c


def _eigvecs(coeffs, k, rng, attempts):
    for _ in range(attempts):
        weights = [rng.randint(1, 1000) for _ in range(k)]
        A = mpmath.matrix(k, k)
        for i, w in enumerate(weights):
            for j in range(k):
                for l in range(k):
                    if coeffs[i][j][l]:
                        A[j, l] += w * coeffs[i][j][l]
        evals, evecs = mpmath.eig(A)
        gap = min((abs(evals[a] - evals[b]) for a in range(k) for b in range(a + 1, k)), default=1)
        if gap > mpmath.mpf(10) ** -20:
            return [[evecs[r, col] for r in range(k)] for col in range(k)]
    raise RepresentationError(f"eigenvalues of the class algebra did not separate after {attempts} attempts")


def _natural_characters(group: VersorGroup) -> dict[int, list[FieldScalar]]:
    """Characters known in closed form: 2*a0 (spin, degree 2) and the SO(3) trace."""
    reps = [group.elements[c[0]] for c in group.conjugacy_classes()]
    out: dict[int, list[FieldScalar]] = {}
    if group.dimension == 3 and all(r.parity() == "even" for r in reps):
        out[3] = [so3_character(r) for r in reps]
        if group.kind == "spin":
            out[2] = [2 * r.scalar_part() for r in reps]
    return out


def character_table(group: VersorGroup, precision: int = 256, seed: int = 0,
                    attempts: int = 8) -> CharacterTable:
    """Irreducible characters by simultaneous diagonalisation of the class algebra.

    The class multiplication coefficients are exact integers; the common
    eigenvectors come from a random integer combination of the class matrices
    at ``precision`` bits, retried with fresh weights if eigenvalues collide.
    """
    classes = group.conjugacy_classes()
    sizes = [len(c) for c in classes]
    k = len(classes)
    order = group.order
    coeffs = _class_coefficients(group)
    if group.element_order(classes[0][0]) != 1:
        raise RepresentationError("first class must be the identity")
    rng = random.Random(seed)
    with mpmath.workprec(precision):
        vecs = _eigvecs(coeffs, k, rng, attempts)
        rows = []
        for w in vecs:
            w = [x / w[0] for x in w]
            s = sum(w[i] * mpmath.conj(w[i]) / sizes[i] for i in range(k)).real
            d = mpmath.sqrt(order / s)
            chi = [d * w[i] / sizes[i] for i in range(k)]
            rows.append(chi)
        degrees = []
        for chi in rows:
            d = int(mpmath.nint(chi[0].real))
            if abs(chi[0] - d) > mpmath.mpf(10) ** -30:
                raise RepresentationError("degree did not round to an integer")
            degrees.append(d)
        residual = mpmath.mpf(0)
        for a in range(k):
            for b in range(k):
                s = sum(sizes[i] * rows[a][i] * mpmath.conj(rows[b][i]) for i in range(k))
                residual = max(residual, abs(s - (order if a == b else 0)))
        entries = [[CharacterEntry.recognise(x) for x in chi] for chi in rows]

    natural = _natural_characters(group)

    def is_natural(i: int) -> bool:
        target = natural.get(degrees[i])
        return target is not None and all(e.exact and e.im_over_sqrt3.is_zero() and e.re == t
                                          for e, t in zip(entries[i], target))

    def faithful_sign(i: int) -> int:
        # -1 for spinorial irreps, where the central -1 acts as -identity
        if group.kind != "spin" or k < 2 or group.element_order(classes[1][0]) != 2 or sizes[1] != 1:
            return 1
        return -1 if entries[i][1].value.real < 0 else 1

    def sort_key(i: int):
        return (degrees[i], faithful_sign(i) < 0, not is_natural(i),
                tuple((-round(float(e.value.real), 9), -round(float(e.value.imag), 9)) for e in entries[i]))

    perm = sorted(range(k), key=sort_key)
    labels: list[str] = []
    for i in perm:
        base = f"{degrees[i]}_s" if faithful_sign(i) < 0 else str(degrees[i])
        label = base
        while label in labels:
            label += "'"
        labels.append(label)
    return CharacterTable(
        class_sizes=sizes,
        class_labels=group.class_labels(),
        degrees=[degrees[i] for i in perm],
        irrep_labels=labels,
        entries=[entries[i] for i in perm],
        class_coefficients=coeffs,
        orthogonality_residual=float(residual),
    )


# -- McKay graphs -------------------------------------------------------------

def _affine(edges: Sequence[tuple[str, str]], marks: dict[str, int]) -> nx.Graph:
    g = nx.Graph()
    for node, mark in marks.items():
        g.add_node(node, degree=mark)
    g.add_edges_from(edges)
    return g


def _chain(names: Sequence[str]) -> list[tuple[str, str]]:
    return list(zip(names, names[1:]))


# nodes carry the marks (irrep dimensions on the McKay side)
AFFINE_DIAGRAMS: dict[str, nx.Graph] = {
    "D4+": _affine([("c", x) for x in "pqrs"], {"c": 2, "p": 1, "q": 1, "r": 1, "s": 1}),
    "E6+": _affine([("c", "a1"), ("a1", "a2"), ("c", "b1"), ("b1", "b2"), ("c", "d1"), ("d1", "d2")],
                   {"c": 3, "a1": 2, "a2": 1, "b1": 2, "b2": 1, "d1": 2, "d2": 1}),
    "E7+": _affine(_chain(["n1", "n2", "n3", "n4", "n5", "n6", "n7"]) + [("n4", "b")],
                   {"n1": 1, "n2": 2, "n3": 3, "n4": 4, "n5": 3, "n6": 2, "n7": 1, "b": 2}),
    "E8+": _affine(_chain(["n1", "n2", "n3", "n4", "n5", "n6", "n7", "n8"]) + [("n6", "b")],
                   {"n1": 1, "n2": 2, "n3": 3, "n4": 4, "n5": 5, "n6": 6, "n7": 4, "n8": 2, "b": 3}),
}


def affine_diagram(name: str) -> nx.Graph:
    return AFFINE_DIAGRAMS[name]


@dataclass
class McKayGraph:
    labels: list[str]
    degrees: list[int]
    multiplicities: list[list[int]]
    spinor_label: str

    def edges(self) -> list[tuple[int, int, int]]:
        n = len(self.labels)
        return [(i, j, self.multiplicities[i][j]) for i in range(n) for j in range(i + 1, n)
                if self.multiplicities[i][j]]

    def self_loops(self) -> list[tuple[int, int]]:
        return [(i, self.multiplicities[i][i]) for i in range(len(self.labels)) if self.multiplicities[i][i]]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for i, (lab, d) in enumerate(zip(self.labels, self.degrees)):
            g.add_node(i, label=lab, degree=d)
        for i, j, m in self.edges():
            g.add_edge(i, j, multiplicity=m)
        return g

    def is_symmetric(self) -> bool:
        m = self.multiplicities
        return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(len(m)))

    def simple(self) -> bool:
        return all(m <= 1 for _, _, m in self.edges()) and not self.self_loops()

    def identify(self) -> str | None:
        """Name of the stored affine diagram it matches (marks included), if any."""
        if not self.simple():
            return None
        g = self.to_networkx()
        match = nx.algorithms.isomorphism.categorical_node_match("degree", None)
        for name, target in AFFINE_DIAGRAMS.items():
            if nx.is_isomorphic(g, target, node_match=match):
                return name
        return None

    def to_dot(self) -> str:
        lines = ["graph mckay {"]
        for i, (lab, d) in enumerate(zip(self.labels, self.degrees)):
            extra = ", shape=doublecircle" if lab == self.spinor_label else ""
            lines.append(f'  n{i} [label="{lab}", degree={d}{extra}];')
        for i, j, m in self.edges():
            extra = f' [label="{m}"]' if m > 1 else ""
            lines.append(f"  n{i} -- n{j}{extra};")
        for i, m in self.self_loops():
            lines.append(f'  n{i} -- n{i} [label="{m}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "nodes": [{"label": lab, "degree": d} for lab, d in zip(self.labels, self.degrees)],
            "edges": [{"source": self.labels[i], "target": self.labels[j], "multiplicity": m}
                      for i, j, m in self.edges()],
            "spinor_irrep": self.spinor_label,
            "affine_diagram": self.identify(),
        }


def mckay_graph(group: VersorGroup, table: CharacterTable | None = None) -> McKayGraph:
    """Tensor with the natural 2-dimensional spinor irrep and count constituents."""
    if group.kind != "spin" or group.dimension != 3:
        raise RepresentationError("McKay graphs are built for binary (spin) groups in Cl(3)")
    table = table or character_table(group)
    classes = group.conjugacy_classes()
    natural = [2 * group.elements[c[0]].scalar_part() for c in classes]
    spinor = [i for i, row in enumerate(table.entries)
              if table.degrees[i] == 2 and all(e.exact and e.re == t and e.im_over_sqrt3.is_zero()
                                               for e, t in zip(row, natural))]
    if len(spinor) != 1:
        raise RepresentationError(f"could not single out the spinor irrep ({len(spinor)} candidates)")
    s = spinor[0]
    k = len(classes)
    sizes = table.class_sizes
    mult = [[0] * k for _ in range(k)]
    with mpmath.workprec(256):
        for i in range(k):
            for j in range(k):
                total = sum(sizes[c] * table.entries[s][c].value * table.entries[i][c].value
                            * mpmath.conj(table.entries[j][c].value) for c in range(k)) / table.order
                m = int(mpmath.nint(total.real))
                if abs(total - m) > mpmath.mpf(10) ** -20:
                    raise RepresentationError("tensor multiplicity is not an integer")
                mult[i][j] = m
    return McKayGraph(list(table.irrep_labels), list(table.degrees), mult, table.irrep_labels[s])

