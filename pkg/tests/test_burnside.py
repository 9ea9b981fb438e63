"""Burnside ring arithmetic: marks, products, induction, restriction."""

import numpy as np
import pytest

from permrel.burnside import (
    BurnsideElement,
    element_from_subgroups,
    fixed_points,
    induct,
    inflate,
    mark_vector,
    marks_table,
    multiply,
    restrict,
    subgroup_table,
    tables_for,
)
from permrel.errors import InputError
from permrel.perm import generate, parse_cycles
from permrel.presets import preset_group
from permrel.subgroups import (
    Subgroup,
    enumerate_classes,
    normal_subgroups,
    quotient,
    subgroup_as_group,
)


def _s3():
    return generate(3, [parse_cycles(3, "(0 1)"), parse_cycles(3, "(0 1 2)")])


def _s4():
    return generate(4, [parse_cycles(4, "(0 1 2 3)"), parse_cycles(4, "(0 1)")])


def _a4():
    return generate(4, [parse_cycles(4, "(0 1 2)"), parse_cycles(4, "(0 1)(2 3)")])


def test_s3_marks_table():
    s3 = _s3()
    marks = marks_table(s3)
    assert marks.m == [
        [6, 0, 0, 0],
        [3, 1, 0, 0],
        [2, 0, 2, 0],
        [1, 1, 1, 1],
    ]


def test_marks_first_column_and_diagonal():
    for group in (_s4(), preset_group("Q8"), preset_group("C7:C6")):
        table = enumerate_classes(group)
        marks = marks_table(group, table)
        for i, cls in enumerate(table):
            assert marks.m[i][0] == group.order // cls.order
            assert marks.m[i][i] == cls.normalizer.order // cls.order
            assert all(marks.m[i][j] == 0 for j in range(i + 1, len(table)))


def test_mark_vector_reads_rows():
    s4 = _s4()
    table = tables_for(s4)
    marks = marks_table(s4, table)
    for i in range(len(table)):
        assert mark_vector(BurnsideElement.basis(table, i)) == marks.m[i]


def test_multiply_s3_transitive_square():
    s3 = _s3()
    table = tables_for(s3)
    # classes by order: trivial, C2, C3, S3
    b_c2 = BurnsideElement.basis(table, 1)
    square = multiply(b_c2, b_c2)
    assert square.coeffs == (1, 1, 0, 0)


def test_multiply_identity_and_zero():
    s4 = _s4()
    table = tables_for(s4)
    one = BurnsideElement.basis(table, len(table) - 1)  # [G/G]
    zero = BurnsideElement.zero(table)
    for i in range(len(table)):
        b = BurnsideElement.basis(table, i)
        assert multiply(one, b) == b
        assert multiply(b, one) == b
        assert multiply(zero, b).is_zero()


def test_multiply_marks_are_multiplicative():
    a4 = _a4()
    table = tables_for(a4)
    k = len(table)
    for i in range(k):
        for j in range(k):
            a = BurnsideElement.basis(table, i)
            b = BurnsideElement.basis(table, j)
            prod = multiply(a, b)
            va, vb, vp = mark_vector(a), mark_vector(b), mark_vector(prod)
            assert vp == [x * y for x, y in zip(va, vb)]


def test_multiply_is_commutative_and_distributive():
    s4 = _s4()
    table = tables_for(s4)
    a = BurnsideElement.basis(table, 2)
    b = BurnsideElement.basis(table, 5)
    c = BurnsideElement.basis(table, 7)
    assert multiply(a, b) == multiply(b, a)
    assert multiply(a, b + c) == multiply(a, b) + multiply(a, c)


def test_fixed_points_extremes():
    s4 = _s4()
    full = Subgroup.full(s4)
    triv = Subgroup.trivial(s4)
    table = enumerate_classes(s4)
    for cls in table:
        k = cls.representative
        # one point in G/G, always fixed
        assert fixed_points(s4, full, k) == 1
        # G/1 is free: only the trivial K fixes anything
        expected = s4.order if k.order == 1 else 0
        assert fixed_points(s4, triv, k) == expected


def test_restrict_s3_to_cyclic_parts():
    s3 = _s3()
    table = tables_for(s3)
    c3 = table.classes[2].representative
    c2 = table.classes[1].representative
    assert c3.order == 3 and c2.order == 2
    t3 = subgroup_table(c3)
    t2 = subgroup_table(c2)
    b_c2 = BurnsideElement.basis(table, 1)  # [S3/C2]
    b_c3 = BurnsideElement.basis(table, 2)  # [S3/C3]
    # [S3/C2] as a C3-set is one free orbit of size 3
    assert restrict(table, t3, b_c2).coeffs == (1, 0)
    # [S3/C2] as a C2-set is a fixed point plus a free orbit
    assert restrict(table, t2, b_c2).coeffs == (1, 1)
    # [S3/C3] as a C3-set is two fixed points
    assert restrict(table, t3, b_c3).coeffs == (0, 2)


def test_induct_from_cyclic_to_s3():
    s3 = _s3()
    table = tables_for(s3)
    c3 = table.classes[2].representative
    t3 = subgroup_table(c3)
    # [C3/1] inducts to [S3/1], [C3/C3] inducts to [S3/C3]
    assert induct(t3, table, BurnsideElement.basis(t3, 0)).coeffs == (1, 0, 0, 0)
    assert induct(t3, table, BurnsideElement.basis(t3, 1)).coeffs == (0, 0, 1, 0)


def test_induct_fuses_conjugates():
    # the three order-2 subgroups of V4 are distinct classes inside V4
    # but fuse into one class of A4
    a4 = _a4()
    table = tables_for(a4)
    v4 = [s for s in normal_subgroups(a4) if s.order == 4][0]
    tv = subgroup_table(v4)
    order2 = [i for i, cls in enumerate(tv.classes) if cls.order == 2]
    assert len(order2) == 3
    images = {
        induct(tv, table, BurnsideElement.basis(tv, i)).coeffs for i in order2
    }
    assert len(images) == 1
    (coeffs,) = images
    idx = coeffs.index(1)
    assert table.classes[idx].order == 2


def test_induction_scales_the_free_mark():
    s4 = _s4()
    table = tables_for(s4)
    for cls in table.classes[:6]:
        sub_t = subgroup_table(cls.representative)
        index = s4.order // cls.order
        for i in range(len(sub_t)):
            x = BurnsideElement.basis(sub_t, i)
            y = induct(sub_t, table, x)
            assert mark_vector(y)[0] == index * mark_vector(x)[0]


def _orbit_decomposition_oracle(group, table_g, table_h, h_sub, u_sub):
    """H-orbit structure of G/U computed by raw set manipulation."""
    mult = group.mult
    cosets = {}
    for g in range(group.order):
        coset = frozenset(int(v) for v in mult[g, u_sub.indices])
        cosets.setdefault(coset, min(coset))
    coset_list = list(cosets)
    h_elems = [int(v) for v in h_sub.indices]
    seen = set()
    out = [0] * len(table_h.classes)
    h_group = table_h.group
    for coset in coset_list:
        if coset in seen:
            continue
        orbit = {coset}
        frontier = [coset]
        while frontier:
            cur = frontier.pop()
            for h in h_elems:
                nxt = frozenset(int(mult[h, x]) for x in cur)
                if nxt not in orbit:
                    orbit.add(nxt)
                    frontier.append(nxt)
        seen |= orbit
        stab = [h for h in h_elems
                if frozenset(int(mult[h, x]) for x in coset) == coset]
        stab_perms = [group.elements[s] for s in stab]
        stab_indices = np.asarray(
            sorted(h_group.index(p) for p in stab_perms), dtype=np.int32
        )
        out[table_h.class_index_of(Subgroup(h_group, stab_indices))] += 1
    return tuple(out)


@pytest.mark.parametrize("maker", [_s3, _a4, _s4, lambda: preset_group("D8")],
                         ids=["S3", "A4", "S4", "D8"])
def test_restrict_matches_orbit_oracle(maker):
    group = maker()
    table = tables_for(group)
    for hcls in table.classes:
        h_sub = hcls.representative
        table_h = subgroup_table(h_sub)
        for i in range(len(table)):
            u_sub = table.classes[i].representative
            got = restrict(table, table_h, BurnsideElement.basis(table, i))
            want = _orbit_decomposition_oracle(
                group, table, table_h, h_sub, u_sub
            )
            assert got.coeffs == want, (group.order, hcls.order, i)


def test_inflate_s4_from_s3_quotient():
    s4 = _s4()
    table = tables_for(s4)
    v4 = [s for s in normal_subgroups(s4) if s.order == 4][0]
    qmap = quotient(s4, v4)
    tq = tables_for(qmap.group)
    for i, qcls in enumerate(tq.classes):
        x = inflate(tq, table, BurnsideElement.basis(tq, i), qmap)
        idx = x.coeffs.index(1)
        assert sum(abs(c) for c in x.coeffs) == 1
        assert table.classes[idx].order == 4 * qcls.order
        assert table.classes[idx].representative.contains_subgroup(v4)


def test_inflation_preserves_marks_on_preimages():
    # the mark of an inflated element at the preimage of K-bar equals
    # the original mark at K-bar
    s4 = _s4()
    table = tables_for(s4)
    v4 = [s for s in normal_subgroups(s4) if s.order == 4][0]
    qmap = quotient(s4, v4)
    tq = tables_for(qmap.group)
    for i in range(len(tq)):
        x = BurnsideElement.basis(tq, i)
        y = inflate(tq, table, x, qmap)
        vx = mark_vector(x)
        vy = mark_vector(y)
        for j, kcls in enumerate(tq.classes):
            pre = qmap.preimage(kcls.representative)
            assert vy[table.class_index_of(pre)] == vx[j]


def test_element_arithmetic():
    s3 = _s3()
    table = tables_for(s3)
    a = BurnsideElement.basis(table, 0)
    b = BurnsideElement.basis(table, 2)
    assert (a + b - a) == b
    assert (-a).coeffs == (-1, 0, 0, 0)
    assert (3 * a).coeffs == (3, 0, 0, 0)
    assert (a - a).is_zero()
    assert hash(a + b) == hash(b + a)
    foreign = tables_for(_s4())
    with pytest.raises(InputError):
        a + BurnsideElement.basis(foreign, 0)


def test_element_from_subgroups_accumulates_conjugates():
    s4 = _s4()
    table = tables_for(s4)
    cls = [c for c in table.classes if c.class_size > 1][0]
    orbit = table.class_orbit(table.classes.index(cls))
    x = element_from_subgroups(table, [(sub, 1) for sub in orbit])
    idx = table.classes.index(cls)
    assert x.coeffs[idx] == cls.class_size
    assert sum(abs(c) for c in x.coeffs) == cls.class_size
