"""Euclidean Clifford algebra Cl(n), n <= 8, over Q(sqrt2, tau).

Blades are bitmasks: bit i set means e_{i+1} is a factor, factors taken in
ascending order.  Every basis vector squares to +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .field import ONE, ZERO, FieldScalar, Scalar

__all__ = [
    "Multivector", "Versor", "InvalidVersorError", "DimensionMismatchError",
    "geometric_product", "reverse", "grade_project", "reflect", "versor_sandwich",
    "blade_name", "sandwich_matrix", "inner", "MAX_DIMENSION",
]

MAX_DIMENSION = 8


class DimensionMismatchError(ValueError):
    pass


class InvalidVersorError(ValueError):
    pass


@lru_cache(maxsize=None)
def _reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenated factor lists of blades a and b."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _grade(blade: int) -> int:
    return bin(blade).count("1")


def _reverse_sign(blade: int) -> int:
    k = _grade(blade)
    return -1 if (k * (k - 1) // 2) & 1 else 1


def blade_name(blade: int) -> str:
    if blade == 0:
        return "1"
    return "e" + "".join(str(i + 1) for i in range(MAX_DIMENSION) if blade >> i & 1)


class Multivector:
    """Dense multivector: ``coefficients[blade]`` for blade in range(2**dimension)."""

    __slots__ = ("dimension", "coefficients", "_terms", "_hash")

    def __init__(self, dimension: int, coefficients: Sequence[Scalar]) -> None:
        if not 1 <= dimension <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in 1..{MAX_DIMENSION}, got {dimension}")
        if len(coefficients) != 1 << dimension:
            raise ValueError(f"expected {1 << dimension} coefficients, got {len(coefficients)}")
        self.dimension = dimension
        self.coefficients = tuple(FieldScalar.coerce(c) for c in coefficients)
        self._terms = None
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_terms(cls, dimension: int, terms: dict[int, Scalar]) -> Multivector:
        coeffs = [ZERO] * (1 << dimension)
        for blade, c in terms.items():
            coeffs[blade] = coeffs[blade] + c
        return cls(dimension, coeffs)

    @classmethod
    def scalar(cls, dimension: int, value: Scalar = 1) -> Multivector:
        return cls.from_terms(dimension, {0: value})

    @classmethod
    def basis_vector(cls, dimension: int, i: int) -> Multivector:
        """e_{i+1} (zero-based index)."""
        return cls.from_terms(dimension, {1 << i: 1})

    @classmethod
    def vector(cls, coords: Sequence[Scalar]) -> Multivector:
        n = len(coords)
        return cls.from_terms(n, {1 << i: c for i, c in enumerate(coords)})

    # -- access ------------------------------------------------------------

    def terms(self) -> list[tuple[int, FieldScalar]]:
        """Nonzero (blade, coefficient) pairs in blade order."""
        if self._terms is None:
            self._terms = [(b, c) for b, c in enumerate(self.coefficients) if not c.is_zero()]
        return self._terms

    def __getitem__(self, blade: int) -> FieldScalar:
        return self.coefficients[blade]

    def grades(self) -> set[int]:
        return {_grade(b) for b, _ in self.terms()}

    def is_zero(self) -> bool:
        return not self.terms()

    def scalar_part(self) -> FieldScalar:
        return self.coefficients[0]

    def vector_coords(self) -> tuple[FieldScalar, ...]:
        return tuple(self.coefficients[1 << i] for i in range(self.dimension))

    def is_scalar(self) -> bool:
        return all(b == 0 for b, _ in self.terms())

    def is_vector(self) -> bool:
        return all(_grade(b) == 1 for b, _ in self.terms())

    def parity(self) -> str | None:
        """'even' or 'odd' if all components share a grade parity, else None."""
        ps = {_grade(b) & 1 for b, _ in self.terms()}
        if len(ps) > 1:
            return None
        return "odd" if ps == {1} else "even"

    # -- algebra -----------------------------------------------------------

    def _check_dim(self, other: Multivector) -> None:
        if self.dimension != other.dimension:
            raise DimensionMismatchError(
                f"dimension mismatch: Cl({self.dimension}) vs Cl({other.dimension})")

    def __add__(self, other: Multivector) -> Multivector:
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_dim(other)
        return Multivector(self.dimension, [x + y for x, y in zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: Multivector) -> Multivector:
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_dim(other)
        return Multivector(self.dimension, [x - y for x, y in zip(self.coefficients, other.coefficients)])

    def __neg__(self) -> Multivector:
        return Multivector(self.dimension, [-c for c in self.coefficients])

    def scale(self, k: Scalar) -> Multivector:
        k = FieldScalar.coerce(k)
        return Multivector(self.dimension, [c * k for c in self.coefficients])

    def __mul__(self, other: Multivector | Scalar) -> Multivector:
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other: Scalar) -> Multivector:
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int) -> Multivector:
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = Multivector.scalar(self.dimension, 1)
        for _ in range(n):
            result = result * self
        return result

    def reverse(self) -> Multivector:
        return reverse(self)

    def grade(self, k: int) -> Multivector:
        return grade_project(self, k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.dimension == other.dimension and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dimension, self.coefficients))
        return self._hash

    def key(self) -> tuple:
        return tuple(c.key() for c in self.coefficients)

    def __repr__(self) -> str:
        return f"Multivector({self.dimension}, {str(self)!r})"

    def __str__(self) -> str:
        if not self.terms():
            return "0"
        out = []
        for blade, c in self.terms():
            s = str(c)
            if blade:
                s = (f"({s})" if (" " in s) else s)
                if s == "1":
                    s = ""
                elif s == "-1":
                    s = "-"
                s = f"{s}{blade_name(blade)}" if s in ("", "-") else f"{s} {blade_name(blade)}"
            out.append(s)
        text = out[0]
        for s in out[1:]:
            text += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
        return text

    def to_json(self, precision: int = 64) -> dict:
        return {blade_name(b): c.to_json(precision) for b, c in self.terms()}


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    a._check_dim(b)
    acc: dict[int, FieldScalar] = {}
    bterms = b.terms()
    for ba, ca in a.terms():
        for bb, cb in bterms:
            p = ca * cb
            if _reorder_sign(ba, bb) < 0:
                p = -p
            k = ba ^ bb
            prev = acc.get(k)
            acc[k] = p if prev is None else prev + p
    coeffs = [ZERO] * (1 << a.dimension)
    for k, v in acc.items():
        coeffs[k] = v
    return Multivector(a.dimension, coeffs)


def reverse(a: Multivector) -> Multivector:
    return Multivector(a.dimension, [c if _reverse_sign(b) > 0 else -c
                                     for b, c in enumerate(a.coefficients)])


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.dimension:
        raise ValueError(f"grade {k} out of range for Cl({a.dimension})")
    return Multivector(a.dimension, [c if _grade(b) == k else ZERO
                                     for b, c in enumerate(a.coefficients)])


def inner(u: Multivector, v: Multivector) -> FieldScalar:
    """Symmetric product (u|v) of two vectors."""
    u._check_dim(v)
    return sum((x * y for x, y in zip(u.vector_coords(), v.vector_coords())), ZERO)


def reflect(alpha: Multivector, v: Multivector) -> Multivector:
    """Reflect v in the hyperplane orthogonal to alpha: v -> -alpha v alpha / (alpha|alpha)."""
    if not (alpha.is_vector() and v.is_vector()):
        raise ValueError("reflect expects two grade-1 multivectors")
    n2 = inner(alpha, alpha)
    if n2.is_zero():
        raise ZeroDivisionError("cannot reflect in the zero vector")
    return (-(alpha * v * alpha)).scale(n2.invert())


@dataclass(frozen=True)
class Versor:
    """A product of invertible vectors, tagged with its parity."""

    value: Multivector
    parity: str

    def __post_init__(self) -> None:
        p = self.value.parity()
        if p is None or p != self.parity:
            raise InvalidVersorError(f"blade support does not have {self.parity} parity")
        if not (self.value * reverse(self.value)).is_scalar():
            raise InvalidVersorError("A * reverse(A) is not a scalar")

    @classmethod
    def of(cls, value: Multivector) -> Versor:
        p = value.parity()
        if p is None or value.is_zero():
            raise InvalidVersorError("mixed-parity multivector is not a versor")
        return cls(value, p)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[Scalar]], normalize: bool = True) -> Versor:
        vs = [list(v) for v in vectors]
        if not vs:
            raise ValueError("need at least one vector")
        dim = len(vs[0])
        result = Multivector.scalar(dim, 1)
        for v in vs:
            mv = Multivector.vector(v)
            if normalize:
                mv = mv.scale(inner(mv, mv).sqrt().invert())
            result = result * mv
        return cls(result, "odd" if len(vs) % 2 else "even")

    def __mul__(self, other: Versor) -> Versor:
        parity = "even" if self.parity == other.parity else "odd"
        return Versor(self.value * other.value, parity)

    def __neg__(self) -> Versor:
        return Versor(-self.value, self.parity)

    def reverse(self) -> Versor:
        return Versor(reverse(self.value), self.parity)

    def norm2(self) -> FieldScalar:
        return (self.value * reverse(self.value)).scalar_part()


def versor_sandwich(A: Versor | Multivector, v: Multivector) -> Multivector:
    """Apply the orthogonal map of A to the vector v: +-reverse(A) v A / (A reverse(A)).

    The sign is + for even and - for odd versors.
    """
    if isinstance(A, Multivector):
        A = Versor.of(A)
    if not v.is_vector():
        raise ValueError("versor_sandwich acts on grade-1 multivectors")
    n2 = A.norm2()
    if n2.is_zero():
        raise InvalidVersorError("null versor")
    out = reverse(A.value) * v * A.value
    if A.parity == "odd":
        out = -out
    if n2 != ONE:
        out = out.scale(n2.invert())
    return out


def sandwich_matrix(A: Versor | Multivector) -> list[list[FieldScalar]]:
    """Matrix of v -> versor_sandwich(A, v); column j is the image of e_{j+1}."""
    if isinstance(A, Multivector):
        A = Versor.of(A)
    n = A.value.dimension
    cols = [versor_sandwich(A, Multivector.basis_vector(n, j)).vector_coords() for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]
