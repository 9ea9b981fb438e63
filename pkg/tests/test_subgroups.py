"""Subgroup enumeration against a brute-force closure oracle."""

from itertools import combinations

import numpy as np
import pytest

from permrel import _kernels
from permrel.errors import InputError
from permrel.perm import generate, parse_cycles
from permrel.presets import preset_group
from permrel.subgroups import (
    Subgroup,
    enumerate_classes,
    is_normal,
    meet_join,
    normal_subgroups,
    normalizer,
    quotient,
    subgroup_as_group,
)


def _all_subgroups_brute(group):
    """Closures of every subset of size <= 3.

    Any group of order <= 24 is generated by at most two elements except
    for elementary abelian ranks that still fit in three, so for the
    orders tested here the sweep is complete.
    """
    n = group.order
    found = {}
    singles = list(range(n))
    for r in (1, 2, 3):
        for combo in combinations(singles, r):
            seeds = np.asarray(combo, dtype=np.int32)
            members = _kernels.closure(group.mult, seeds)
            found[members.tobytes()] = members
    found[np.asarray([0], dtype=np.int32).tobytes()] = np.asarray(
        [0], dtype=np.int32)
    return set(found)


SMALL = [
    ("S3", generate(3, [parse_cycles(3, "(0 1)"), parse_cycles(3, "(0 1 2)")])),
    ("D8", generate(4, [parse_cycles(4, "(0 1 2 3)"), parse_cycles(4, "(0 2)")])),
    ("Q8", preset_group("Q8")),
    ("A4", generate(4, [parse_cycles(4, "(0 1 2)"), parse_cycles(4, "(0 1)(2 3)")])),
    ("C12", preset_group("C12")),
    ("S4", generate(4, [parse_cycles(4, "(0 1 2 3)"), parse_cycles(4, "(0 1)")])),
]


@pytest.mark.parametrize("name,group", SMALL, ids=[n for n, _ in SMALL])
def test_enumeration_complete(name, group):
    table = enumerate_classes(group)
    keys = {sub.key for sub in table.all_subgroups()}
    assert keys == _all_subgroups_brute(group)


@pytest.mark.parametrize("name,group", SMALL, ids=[n for n, _ in SMALL])
def test_class_structure(name, group):
    table = enumerate_classes(group)
    orders = [cls.order for cls in table]
    assert orders == sorted(orders)
    assert table.classes[0].order == 1
    assert table.classes[-1].order == group.order
    for idx, cls in enumerate(table):
        orbit = table.class_orbit(idx)
        assert len(orbit) == cls.class_size
        assert orbit[0].key == cls.representative.key
        # class size is the index of the normalizer
        assert cls.class_size * cls.normalizer.order == group.order
        assert normalizer(group, cls.representative).key == cls.normalizer.key
        for sub in orbit:
            assert table.class_index_of(sub) == idx
    # total subgroup count matches the key map
    assert sum(cls.class_size for cls in table) == len(table.sub_to_class)


def test_known_class_counts():
    # S4: 1,C2,C2',C3,V4,V4',C4,S3,D8,A4,S4 -> 11 classes, 30 subgroups
    s4 = generate(4, [parse_cycles(4, "(0 1 2 3)"), parse_cycles(4, "(0 1)")])
    table = enumerate_classes(s4)
    assert len(table) == 11
    assert sum(cls.class_size for cls in table) == 30
    # Q8: 1, Z, three C4, Q8 -> 6 classes, all normal
    q8 = preset_group("Q8")
    qtable = enumerate_classes(q8)
    assert len(qtable) == 6
    assert all(cls.class_size == 1 for cls in qtable)
    # A5 has 9 classes of subgroups
    a5 = generate(5, [parse_cycles(5, "(0 1 2)"), parse_cycles(5, "(0 1 2 3 4)")])
    assert len(enumerate_classes(a5)) == 9
    # S5 has 19
    s5 = generate(5, [parse_cycles(5, "(0 1)"), parse_cycles(5, "(0 1 2 3 4)")])
    assert len(enumerate_classes(s5)) == 19


def test_normal_subgroups_a4():
    a4 = generate(4, [parse_cycles(4, "(0 1 2)"), parse_cycles(4, "(0 1)(2 3)")])
    normals = normal_subgroups(a4)
    assert sorted(sub.order for sub in normals) == [1, 4, 12]
    for sub in normals:
        assert is_normal(a4, sub)


def test_quotient_s4_by_v4():
    s4 = generate(4, [parse_cycles(4, "(0 1 2 3)"), parse_cycles(4, "(0 1)")])
    v4 = None
    for sub in normal_subgroups(s4):
        if sub.order == 4:
            v4 = sub
    assert v4 is not None
    q = quotient(s4, v4)
    assert q.group.order == 6
    # S4/V4 is S3: non-abelian
    mult = q.group.mult
    assert any(mult[i, j] != mult[j, i]
               for i in range(6) for j in range(6))
    # preimage of the full quotient is the full group
    full = Subgroup.full(q.group)
    assert q.preimage(full).order == 24
    # preimage of a quotient subgroup contains the kernel
    for cls in enumerate_classes(q.group):
        pre = q.preimage(cls.representative)
        assert pre.order == cls.order * 4
        assert pre.contains_subgroup(v4)


def test_quotient_projection_is_homomorphism():
    s4 = generate(4, [parse_cycles(4, "(0 1 2 3)"), parse_cycles(4, "(0 1)")])
    v4 = [sub for sub in normal_subgroups(s4) if sub.order == 4][0]
    q = quotient(s4, v4)
    for a in s4.elements[:8]:
        for b in s4.elements[:8]:
            assert q.project(a * b) == q.project(a) * q.project(b)


def test_meet_join():
    s4 = generate(4, [parse_cycles(4, "(0 1 2 3)"), parse_cycles(4, "(0 1)")])
    table = enumerate_classes(s4)
    subs = [cls.representative for cls in table]
    for a in subs:
        for b in subs:
            meet, join = meet_join(a, b)
            assert meet.order <= min(a.order, b.order)
            assert join.order >= max(a.order, b.order)
            assert a.contains_subgroup(meet) and b.contains_subgroup(meet)
            assert join.contains_subgroup(a) and join.contains_subgroup(b)
            # meet is the full intersection, not just some common subgroup
            common = set(a.indices.tolist()) & set(b.indices.tolist())
            assert set(meet.indices.tolist()) == common


def test_subgroup_as_group_isomorphic_structure():
    s4 = generate(4, [parse_cycles(4, "(0 1 2 3)"), parse_cycles(4, "(0 1)")])
    table = enumerate_classes(s4)
    for cls in table:
        h_group = subgroup_as_group(cls.representative)
        assert h_group.order == cls.order
        # element i of the standalone group is ambient element indices[i],
        # and the two multiplication tables agree under that identification
        idx = cls.representative.indices
        for i in range(h_group.order):
            assert h_group.elements[i] == s4.elements[idx[i]]
        for i in range(min(h_group.order, 6)):
            for j in range(min(h_group.order, 6)):
                k = h_group.mult[i, j]
                assert idx[k] == s4.mult[idx[i], idx[j]]


def test_subgroup_rejects_bad_index_sets():
    s3 = generate(3, [parse_cycles(3, "(0 1)"), parse_cycles(3, "(0 1 2)")])
    with pytest.raises(InputError):
        Subgroup(s3, np.asarray([1, 2], dtype=np.int32))  # no identity
    with pytest.raises(InputError):
        Subgroup(s3, np.asarray([0, 1, 2, 3], dtype=np.int32))  # 4 does not divide 6


def test_generated_subgroup():
    s3 = generate(3, [parse_cycles(3, "(0 1)"), parse_cycles(3, "(0 1 2)")])
    rot = s3.index(parse_cycles(3, "(0 1 2)"))
    sub = Subgroup.generated(s3, [rot])
    assert sub.order == 3
    assert is_normal(s3, sub)
