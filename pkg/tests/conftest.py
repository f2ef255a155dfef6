"""Shared helpers: group shortcuts, reference connection sets, subset generators."""

from __future__ import annotations

import pytest

from cayleypst import ConnectionSet, parse_group, power_class


def group(spec):
    return parse_group(spec)


def elem(g, *coords):
    return g.element(coords)


def cset(g, coords_list):
    return ConnectionSet.from_elements(g, [g.element(c) for c in coords_list])


def z433_transfer_sets():
    """Two 36-vertex reference sets known to admit transfer from 0 to (2,0,0).

    Built from the two order-3 generators: their classes, those classes
    shifted by the involution, those classes shifted by the order-four pair,
    plus either the involution alone or the order-four pair alone.
    """
    g = parse_group("Z4xZ3xZ3")
    b = g.element((1, 0, 0))
    a = g.element((2, 0, 0))
    g1 = g.element((0, 1, 0))
    g2 = g.element((0, 0, 1))
    base = power_class(g, g1) | power_class(g, g2)
    shifted_a = frozenset(a + h for h in base)
    shifted_b = frozenset(b + h for h in base) | frozenset(-b + h for h in base)
    with_a = ConnectionSet(g, base | shifted_a | shifted_b | {a})
    with_b = ConnectionSet(g, base | shifted_a | shifted_b | {b, -b})
    return g, with_a, with_b


@pytest.fixture(scope="session")
def z433_sets():
    return z433_transfer_sets()


def class_unions(g, include_empty=True):
    """Every union of non-identity power classes, as ConnectionSets."""
    from cayleypst import list_power_classes

    identity = g.identity
    classes = [cls for cls in list_power_classes(g) if identity not in cls]
    start = 0 if include_empty else 1
    for mask in range(start, 1 << len(classes)):
        members = set()
        for i, cls in enumerate(classes):
            if (mask >> i) & 1:
                members.update(cls)
        yield ConnectionSet(g, frozenset(members))


def inverse_closed_subsets(g):
    """Every inverse-closed identity-free subset (unions of {x, -x} orbits)."""
    identity = g.identity
    orbits = []
    seen = set()
    for x in g.elements():
        if x == identity or x in seen:
            continue
        orbit = frozenset({x, -x})
        orbits.append(orbit)
        seen.update(orbit)
    for mask in range(1 << len(orbits)):
        members = set()
        for i, orbit in enumerate(orbits):
            if (mask >> i) & 1:
                members.update(orbit)
        yield ConnectionSet(g, frozenset(members))


def brute_element_order(g, x):
    """Order by repeated addition; independent of the lcm formula."""
    count = 1
    acc = x
    while acc != g.identity:
        acc = acc + x
        count += 1
    return count


def brute_cyclic_subgroup(g, x):
    out = {g.identity}
    acc = x
    while acc not in out:
        out.add(acc)
        acc = acc + x
    return frozenset(out)
