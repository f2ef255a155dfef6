"""Walk numerics: two production routes, an eigensolver cross-check, detection."""

import math
import random

import numpy as np
import pytest

from cayleypst import (
    AmbiguousTransferError,
    CapExceededError,
    ConnectionSet,
    adjacency_matrix,
    dense_expm,
    detect_pst_numeric,
    is_periodic_numeric,
    list_power_classes,
    transition_amplitude,
    transition_matrix,
)
from conftest import class_unions, cset, elem, group


def expm_via_eigensolver(a, t):
    """Third, test-only route: eigendecomposition of the symmetric matrix."""
    w, v = np.linalg.eigh(a)
    return (v * np.exp(1j * t * w)) @ v.conj().T


def random_class_union(g, rng):
    identity = g.identity
    members = set()
    for cls in list_power_classes(g):
        if identity not in cls and rng.random() < 0.5:
            members.update(cls)
    return ConnectionSet(g, frozenset(members))


def test_time_zero_is_identity():
    g = group("Z4xZ3")
    c = cset(g, [(1, 0), (3, 0), (0, 1), (0, 2)])
    for u in (transition_matrix(g, c, 0.0), dense_expm(g, c, 0.0)):
        assert np.allclose(u.entries, np.eye(g.order), atol=1e-12)
    assert transition_amplitude(g, c, g.identity, g.identity, 0.0) == pytest.approx(1)
    assert transition_amplitude(g, c, g.identity, elem(g, 1, 0), 0.0) == pytest.approx(
        0, abs=1e-12
    )


def test_single_edge_closed_form():
    z2 = group("Z2")
    c = cset(z2, [(1,)])
    for t in (0.3, 1.0, math.pi / 2, 5.0):
        expected = np.array(
            [[math.cos(t), 1j * math.sin(t)], [1j * math.sin(t), math.cos(t)]]
        )
        assert np.allclose(transition_matrix(z2, c, t).entries, expected, atol=1e-12)
        assert np.allclose(dense_expm(z2, c, t).entries, expected, atol=1e-12)
    amp = transition_amplitude(z2, c, z2.identity, elem(z2, 1), math.pi / 2)
    assert amp == pytest.approx(1j)


def test_empty_set_gives_identity_walk():
    g = group("Z6")
    empty = cset(g, [])
    u = transition_matrix(g, empty, 2.7)
    assert np.allclose(u.entries, np.eye(6), atol=1e-12)
    assert is_periodic_numeric(g, empty, 2.7)


@pytest.mark.parametrize("spec", ["Z8", "Z4xZ3", "Z2xZ2xZ3", "Z3xZ3"])
def test_two_routes_and_eigensolver_agree(spec):
    g = group(spec)
    rng = random.Random(17)
    for _ in range(6):
        c = random_class_union(g, rng)
        t = rng.uniform(0, 2 * math.pi)
        u_char = transition_matrix(g, c, t).entries
        u_dense = dense_expm(g, c, t).entries
        u_eigh = expm_via_eigensolver(adjacency_matrix(g, c).astype(float), t)
        assert np.max(np.abs(u_char - u_dense)) < 1e-9
        assert np.max(np.abs(u_char - u_eigh)) < 1e-9


@pytest.mark.parametrize("spec", ["Z12", "Z2xZ9", "Z8xZ3"])
def test_unitarity_and_circulant_structure(spec):
    g = group(spec)
    rng = random.Random(23)
    n = g.order
    for _ in range(4):
        c = random_class_union(g, rng)
        t = rng.uniform(0, 2 * math.pi)
        u = dense_expm(g, c, t).entries
        assert np.max(np.abs(u @ u.conj().T - np.eye(n))) < 1e-9
        # entry (g, h) depends only on h - g
        elements = list(g.elements())
        row0 = u[0]
        for gi in range(0, n, max(1, n // 5)):
            for hi in range(n):
                diff = elements[hi] - elements[gi]
                assert abs(u[gi, hi] - row0[g.index_of(diff)]) < 1e-9


def test_amplitude_symmetry():
    g = group("Z4xZ3")
    rng = random.Random(31)
    for _ in range(4):
        c = random_class_union(g, rng)
        t = rng.uniform(0, 2 * math.pi)
        u = transition_matrix(g, c, t).entries
        assert np.max(np.abs(np.abs(u) - np.abs(u).T)) < 1e-9


def test_transfer_implies_periodicity_at_doubled_time():
    z4 = group("Z4")
    c = cset(z4, [(1,), (3,)])
    t = math.pi / 2
    assert detect_pst_numeric(z4, c, t, 1e-9) is not None
    assert is_periodic_numeric(z4, c, 2 * t, 1e-9)
    z2 = group("Z2")
    assert not is_periodic_numeric(z2, cset(z2, [(1,)]), math.pi / 2, 1e-9)


def test_disjoint_split_factorizes():
    g = group("Z8xZ3")
    rng = random.Random(47)
    classes = [cls for cls in list_power_classes(g) if g.identity not in cls]
    for _ in range(5):
        first, second = set(), set()
        for cls in classes:
            (first if rng.random() < 0.5 else second).update(cls)
        c_all = ConnectionSet(g, frozenset(first | second))
        d1 = ConnectionSet(g, frozenset(first))
        d2 = ConnectionSet(g, frozenset(second))
        t = rng.uniform(0, 2 * math.pi)
        u = transition_matrix(g, c_all, t).entries
        product = transition_matrix(g, d1, t).entries @ transition_matrix(g, d2, t).entries
        assert np.max(np.abs(u - product)) < 1e-9


def test_integral_graphs_are_periodic_at_two_pi():
    for spec in ("Z4", "Z12", "Z2xZ9"):
        g = group(spec)
        for c in class_unions(g, include_empty=False):
            assert is_periodic_numeric(g, c, 2 * math.pi, 1e-9)


def test_detection_examples():
    z2 = group("Z2")
    hit = detect_pst_numeric(z2, cset(z2, [(1,)]), math.pi / 2, 1e-9)
    assert hit is not None
    assert hit.source == z2.identity
    assert hit.target.coords == (1,)
    assert hit.phase == pytest.approx(1j)
    z6 = group("Z6")
    assert detect_pst_numeric(z6, cset(z6, [(1,), (5,)]), math.pi / 2, 1e-9) is None


def test_detection_on_reference_36_vertex(z433_sets):
    g, with_a, with_b = z433_sets
    for c in (with_a, with_b):
        hit = detect_pst_numeric(g, c, math.pi / 2, 1e-9)
        assert hit is not None and hit.target.coords == (2, 0, 0)
        assert abs(abs(hit.phase) - 1) < 1e-9
        # transfer at pi/2 means no return to the start yet
        assert not is_periodic_numeric(g, c, math.pi / 2, 1e-9)


def test_detection_tolerance_validation_and_ambiguity():
    z2 = group("Z2")
    c = cset(z2, [(1,)])
    for bad in (0.0, 0.5, -1e-3, 1.0):
        with pytest.raises(ValueError):
            detect_pst_numeric(z2, c, 1.0, bad)
        with pytest.raises(ValueError):
            is_periodic_numeric(z2, c, 1.0, bad)
    # complete graph on three vertices: both off-diagonal amplitudes reach
    # modulus 2/3 at t = pi/3, so a loose tolerance sees two candidates
    z3 = group("Z3")
    triangle = cset(z3, [(1,), (2,)])
    with pytest.raises(AmbiguousTransferError):
        detect_pst_numeric(z3, triangle, math.pi / 3, 0.4)


def test_dense_cap():
    g = group("Z8")
    c = cset(g, [(4,)])
    with pytest.raises(CapExceededError):
        dense_expm(g, c, 1.0, cap=4)


def test_transition_matrix_json_shape():
    z2 = group("Z2")
    doc = transition_matrix(z2, cset(z2, [(1,)]), math.pi / 2).to_json_dict()
    assert doc["vertices"] == [[0], [1]]
    assert len(doc["entries"]) == 2 and len(doc["entries"][0]) == 2
    re, im = doc["entries"][0][1]
    assert re == pytest.approx(0, abs=1e-12)
    assert im == pytest.approx(1)
