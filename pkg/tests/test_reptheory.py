from __future__ import annotations

import random

import mpmath
import networkx as nx
import pytest

from versorlab.clifford import Multivector, reverse
from versorlab.field import ONE, SIGMA, TAU, ZERO, FieldScalar
from versorlab.linalg import identity, matmul, trace, transpose
from versorlab.reptheory import (
    AFFINE_DIAGRAMS, CharacterEntry, RepresentationError, character_table, contragredient_action,
    left_mult_matrix, matrix_rep, mckay_graph, rep_norm_squared, scalar_rep_characters,
    so3_character, spinor_to_so3,
)

from conftest import pin, rotations, spin

t = TAU


def half(rows):
    return [[FieldScalar.coerce(x) / 2 for x in r] for r in rows]


# printed test vectors: rotation matrices of alpha1 alpha2 and alpha2 alpha3 (x -> ~R x R),
# their contragredients (x -> R x ~R), and the 4x4 left multiplications on (Ie1, Ie2, Ie3, 1)
SO3_R12 = half([[t, t - 1, -1], [1 - t, -1, -t], [-1, t, 1 - t]])
SO3_R23 = half([[t, 1 - t, -1], [1 - t, 1, -t], [1, t, t - 1]])
CONTRA_R12 = half([[t, 1 - t, -1], [t - 1, -1, t], [-1, -t, 1 - t]])
CONTRA_R23 = half([[t, 1 - t, 1], [1 - t, 1, t], [-1, -t, t - 1]])
LEFT_R12 = half([[-1, t - 1, 0, -t], [1 - t, -1, -t, 0], [0, t, -1, t - 1], [t, 0, 1 - t, -1]])
LEFT_R23 = half([[-t, 0, 1 - t, -1], [0, -t, -1, t - 1], [t - 1, 1, -t, 0], [1, 1 - t, 0, -t]])


@pytest.fixture(scope="module")
def spinors(h3_simple):
    a1, a2, a3 = h3_simple
    return a1 * a2, a2 * a3


def test_rotation_matrices_match_printed_examples(spinors):
    r12, r23 = spinors
    assert spinor_to_so3(r12) == SO3_R12
    assert spinor_to_so3(r23) == SO3_R23


def test_contragredient_matrices_match_printed_examples(spinors):
    r12, r23 = spinors
    assert contragredient_action(r12) == CONTRA_R12
    assert contragredient_action(r23) == CONTRA_R23
    for r in spinors:
        assert trace(contragredient_action(r)) == trace(spinor_to_so3(r))


def test_left_multiplication_matches_printed_examples(spinors):
    r12, r23 = spinors
    assert left_mult_matrix(r12, basis="scalar-last") == LEFT_R12
    assert left_mult_matrix(r23, basis="scalar-last") == LEFT_R23


def test_characters_of_the_example_spinors(spinors):
    r12, r23 = spinors
    assert so3_character(r12) == ZERO
    assert so3_character(r23) == TAU
    assert trace(left_mult_matrix(r12)) == -2
    assert trace(left_mult_matrix(r23)) == -2 * TAU


def test_trivial_and_half_turn():
    one = Multivector.scalar(3, 1)
    assert spinor_to_so3(one) == identity(3)
    assert so3_character(one) == 3
    assert left_mult_matrix(one) == identity(4)
    assert contragredient_action(one) == identity(3)
    e12 = Multivector.from_terms(3, {0b011: 1})
    assert so3_character(e12) == -1


def test_non_unit_spinor_rejected():
    with pytest.raises(RepresentationError):
        spinor_to_so3(Multivector.scalar(3, 2))
    with pytest.raises(RepresentationError):
        left_mult_matrix(Multivector.basis_vector(3, 0))
    with pytest.raises(ValueError):
        left_mult_matrix(Multivector.scalar(3, 1), basis="sideways")


def test_general_left_multiplication_pattern(binary_icosahedral):
    # scalar-last basis: rows (b4, b3, -b2, b1), (-b3, b4, b1, b2), (b2, -b1, b4, b3), (-b1, -b2, -b3, b4)
    from versorlab.induction import spinor_to_vector
    for R in binary_icosahedral.elements[::7]:
        b4, b1, b2, b3 = spinor_to_vector(R).coords
        expected = [[b4, b3, -b2, b1], [-b3, b4, b1, b2], [b2, -b1, b4, b3], [-b1, -b2, -b3, b4]]
        assert left_mult_matrix(R, basis="scalar-last") == expected


def test_so3_character_is_the_trace_everywhere(binary_icosahedral):
    for R in binary_icosahedral.elements:
        m = spinor_to_so3(R)
        assert so3_character(R) == trace(m)
        assert matmul(m, transpose(m)) == identity(3)
        assert contragredient_action(R) == transpose(m)
        l = left_mult_matrix(R)
        assert trace(l) == 4 * R.scalar_part()
        assert matmul(l, transpose(l)) == identity(4)


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def test_rotation_matrices_have_determinant_one(binary_icosahedral):
    for R in binary_icosahedral.elements[::5]:
        assert _det3(spinor_to_so3(R)) == ONE


@pytest.mark.parametrize("kind, action", [("so3", "right"), ("contragredient", "left"), ("leftmult", "left")])
def test_composition_law_on_random_pairs(binary_icosahedral, kind, action):
    g = binary_icosahedral
    rep = matrix_rep(g, kind)
    assert rep.action == action
    rng = random.Random(11)
    for _ in range(200):
        x, y = rng.randrange(g.order), rng.randrange(g.order)
        assert rep.respects(g, x, y)
        xy = g.mul(x, y)
        if action == "right":
            assert rep.images[xy] == matmul(rep.images[y], rep.images[x])
        else:
            assert rep.images[xy] == matmul(rep.images[x], rep.images[y])


def test_sandwich_is_not_a_left_action(binary_icosahedral, spinors):
    r12, r23 = spinors
    # ~(RS) x (RS) = ~S (~R x R) S, so the matrix of RS is M(S) M(R), not M(R) M(S)
    assert spinor_to_so3(r12 * r23) == matmul(spinor_to_so3(r23), spinor_to_so3(r12))
    assert spinor_to_so3(r12 * r23) != matmul(spinor_to_so3(r12), spinor_to_so3(r23))


def test_reverse_stays_in_its_class(binary_icosahedral):
    # all characters of 2I are real, so R and ~R = R^-1 are conjugate
    g = binary_icosahedral
    cls = g.class_of()
    for i, R in enumerate(g.elements):
        assert cls[g.index(reverse(R))] == cls[i]


def test_quaternionic_norm_of_left_multiplication(binary_icosahedral):
    rep = matrix_rep(binary_icosahedral, "leftmult")
    assert rep_norm_squared(rep, binary_icosahedral) == 4
    total = sum((rep.character[ci] ** 2 * len(c)
                 for ci, c in enumerate(binary_icosahedral.conjugacy_classes())), ZERO)
    assert total == 480


def test_real_type_norms():
    I = rotations("H3")
    assert rep_norm_squared(matrix_rep(I, "so3"), I) == 1
    assert rep_norm_squared(matrix_rep(I, "trivial"), I) == 1
    p = pin("H3")
    assert rep_norm_squared(matrix_rep(p, "parity"), p) == 1


def test_left_multiplication_needs_the_spin_group():
    with pytest.raises(RepresentationError):
        matrix_rep(rotations("H3"), "leftmult")
    with pytest.raises(RepresentationError):
        matrix_rep(spin("H3"), "bogus")


def test_scalar_representations():
    p = pin("A3")
    chars = scalar_rep_characters(p)
    assert set(chars["trivial"]) == {ONE}
    for ci, c in enumerate(p.conjugacy_classes()):
        expected = ONE if p.elements[c[0]].parity() == "even" else -ONE
        assert chars["parity"][ci] == expected
    # the simple roots themselves are odd
    for v in p.generators:
        ci = p.class_of()[v]
        assert chars["parity"][ci] == -ONE


# -- character tables ------------------------------------------------------------

def _values(row):
    return [e.re for e in row]


def test_icosahedral_table():
    table = character_table(rotations("H3"))
    assert table.class_labels == ["1", "15C2", "20C3", "12C5", "12C5^2"]
    assert table.degrees == [1, 3, 3, 4, 5]
    assert table.all_exact
    assert _values(table.row("3")) == [3, -1, 0, TAU, SIGMA]
    assert _values(table.row("3'")) == [3, -1, 0, SIGMA, TAU]
    assert _values(table.row("4")) == [4, 0, 1, -1, -1]
    assert _values(table.row("5")) == [5, 1, -1, 0, 0]
    assert table.orthogonality_residual < 1e-9


@pytest.mark.parametrize("name, degrees", [
    ("A1^3", [1, 1, 1, 1, 2]),
    ("A3", [1, 1, 1, 2, 2, 2, 3]),
    ("B3", [1, 1, 2, 2, 2, 3, 3, 4]),
    ("H3", [1, 2, 2, 3, 3, 4, 4, 5, 6]),
])
def test_binary_tables(name, degrees):
    g = spin(name)
    table = character_table(g)
    assert table.degrees == degrees
    assert sum(d * d for d in degrees) == g.order
    assert table.orthogonality_residual < 1e-9
    assert table.all_exact


def test_binary_icosahedral_labels():
    table = character_table(spin("H3"))
    assert table.irrep_labels == ["1", "2_s", "2_s'", "3", "3'", "4", "4_s", "5", "6_s"]


def test_column_orthogonality():
    table = character_table(spin("B3"))
    k = len(table.class_sizes)
    for a in range(k):
        for b in range(k):
            s = sum(row[a].value * mpmath.conj(row[b].value) for row in table.entries)
            expected = table.order / table.class_sizes[a] if a == b else 0
            assert abs(s - expected) < 1e-9


def test_table_does_not_depend_on_the_seed():
    g = spin("A3")
    a, b = character_table(g, seed=0), character_table(g, seed=5)
    assert [[str(e) for e in r] for r in a.entries] == [[str(e) for e in r] for r in b.entries]


def test_complex_entries_are_recognised():
    table = character_table(rotations("A3"))
    strs = [[str(e) for e in row] for row in table.entries]
    assert ["1", "1", "-1/2 + 1/2*i√3", "-1/2 - 1/2*i√3"] in strs


def test_unrecognised_values_stay_numeric():
    e = CharacterEntry.recognise(mpmath.mpf(1) / 7 + mpmath.pi)
    assert not e.exact
    assert str(e).startswith("3.28")


def test_spinor_tensor_square(binary_icosahedral):
    g = binary_icosahedral
    m = mckay_graph(g)
    labels = m.labels
    s = labels.index("2_s")
    # multiplicities of each irrep in 2_s (x) 2_s
    table = character_table(g)
    mult = {}
    for j, row in enumerate(table.entries):
        v = sum(size * table.entries[s][c].value ** 2 * mpmath.conj(row[c].value)
                for c, size in enumerate(table.class_sizes)) / g.order
        mult[labels[j]] = int(mpmath.nint(v.real))
    assert {k: v for k, v in mult.items() if v} == {"1": 1, "3": 1}


# -- McKay graphs -----------------------------------------------------------------

@pytest.mark.parametrize("name, affine", [("A1^3", "D4+"), ("A3", "E6+"), ("B3", "E7+"), ("H3", "E8+")])
def test_mckay_graphs(name, affine):
    g = mckay_graph(spin(name))
    assert g.is_symmetric()
    assert g.simple()
    assert g.identify() == affine
    assert sum(g.degrees) == {"D4+": 6, "E6+": 12, "E7+": 18, "E8+": 30}[affine]


def test_mckay_trivial_node_links_only_to_the_spinor():
    g = mckay_graph(spin("H3"))
    neighbours = [g.labels[j] for i, j, _ in g.edges() if i == 0]
    assert neighbours == ["2_s"]


def test_affine_e8_marks_follow_the_figure():
    g = AFFINE_DIAGRAMS["E8+"]
    marks = nx.get_node_attributes(g, "degree")
    assert sorted(marks.values()) == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    branch = [n for n in g if g.degree(n) == 3]
    assert [marks[n] for n in branch] == [6]


def test_mckay_dot_output():
    dot = mckay_graph(spin("H3")).to_dot()
    assert dot.startswith("graph mckay {")
    assert 'label="2_s", degree=2, shape=doublecircle' in dot
    assert dot.count(" -- ") == 8


def test_mckay_needs_a_binary_group():
    with pytest.raises(RepresentationError):
        mckay_graph(rotations("H3"))
