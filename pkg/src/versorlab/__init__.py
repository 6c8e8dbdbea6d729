"""Exact Clifford-algebra toolkit for reflection groups over Q(sqrt2, tau)."""

from __future__ import annotations

from .clifford import Multivector, Versor, geometric_product, reflect, reverse, versor_sandwich
from .diagram import CoxeterDiagram, parse_diagram
from .field import SIGMA, SQRT2, TAU, FieldScalar
from .induction import check_spinorial_automorphisms, identify, induce, spin_group
from .rootsystem import RootSystem, automorphism_order, cartan_matrix, generate, simple_roots, verify
from .versorgroup import VersorGroup, even_subgroup, generate_pin, rotation_quotient

__all__ = [
    "FieldScalar", "TAU", "SIGMA", "SQRT2",
    "Multivector", "Versor", "geometric_product", "reverse", "reflect", "versor_sandwich",
    "CoxeterDiagram", "parse_diagram",
    "RootSystem", "simple_roots", "generate", "verify", "cartan_matrix", "automorphism_order",
    "VersorGroup", "generate_pin", "even_subgroup", "rotation_quotient",
    "induce", "spin_group", "identify", "check_spinorial_automorphisms",
]

__version__ = "0.1.0"
