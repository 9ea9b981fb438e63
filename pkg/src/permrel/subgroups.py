"""Subgroup enumeration up to conjugacy, quotients, and related maps.

The enumeration walks cyclic subgroups first and then repeatedly
extends each known class representative by one extra generator; the
resulting table records every subgroup of the group (keyed by its
sorted index array) together with its conjugacy class.
"""

from collections import deque
from typing import NamedTuple

import numpy as np

from . import _kernels as kernels
from .errors import CapExceeded, InputError, InternalCheckError
from .perm import Group, Permutation, generate

DEFAULT_SUBGROUP_CAP = 5000


class Subgroup:
    """A subgroup of a fixed ambient Group, stored as sorted indices."""

    __slots__ = ("ambient", "indices", "_mask", "_gens")

    def __init__(self, ambient, indices):
        arr = np.unique(np.asarray(indices, dtype=np.int32))
        if arr.size == 0 or arr[0] != 0:
            raise InputError("a subgroup must contain the identity (index 0)")
        if ambient.order % arr.size:
            raise InputError("index set size does not divide the group order")
        self.ambient = ambient
        self.indices = arr
        self._mask = None
        self._gens = None

    @classmethod
    def generated(cls, ambient, indices):
        """Close an index set into a subgroup."""
        closed = kernels.closure(ambient.mult, np.asarray(indices, dtype=np.int32))
        return cls(ambient, closed)

    @classmethod
    def full(cls, ambient):
        return cls(ambient, np.arange(ambient.order, dtype=np.int32))

    @classmethod
    def trivial(cls, ambient):
        return cls(ambient, np.zeros(1, dtype=np.int32))

    @property
    def order(self):
        return int(self.indices.size)

    @property
    def key(self):
        return self.indices.tobytes()

    @property
    def mask(self):
        if self._mask is None:
            mask = np.zeros(self.ambient.order, dtype=bool)
            mask[self.indices] = True
            self._mask = mask
        return self._mask

    @property
    def generator_indices(self):
        """A small generating set, found greedily along the index order."""
        if self._gens is None:
            mult = self.ambient.mult
            covered = np.zeros(1, dtype=np.int32)
            gens = []
            for idx in self.indices:
                if idx not in covered:
                    gens.append(int(idx))
                    covered = kernels.closure(
                        mult, np.asarray(covered.tolist() + [idx], dtype=np.int32)
                    )
                    if covered.size == self.indices.size:
                        break
            self._gens = np.asarray(gens, dtype=np.int32)
        return self._gens

    def perms(self):
        return tuple(self.ambient.elements[i] for i in self.indices)

    def generators(self):
        return tuple(self.ambient.elements[i] for i in self.generator_indices)

    def contains_subgroup(self, other):
        return bool(self.mask[other.indices].all())

    def is_trivial(self):
        return self.order == 1

    def is_full(self):
        return self.order == self.ambient.order

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient is other.ambient and self.key == other.key

    def __hash__(self):
        return hash((id(self.ambient), self.key))

    def __repr__(self):
        return "Subgroup(order=%d of %r)" % (self.order, self.ambient)


class SubgroupClass(NamedTuple):
    representative: Subgroup
    order: int
    class_size: int
    normalizer: Subgroup


class SubgroupClassTable:
    """All subgroups of a group, organized by conjugacy class.

    ``classes`` is sorted by (order, representative index tuple); the
    representative of each class is its lexicographically least member.
    ``sub_to_class`` maps the key of every individual subgroup to its
    class position.
    """

    def __init__(self, group, classes, sub_to_class):
        self.group = group
        self.classes = classes
        self.sub_to_class = sub_to_class
        self._orbits = {}

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def class_index_of(self, subgroup):
        if subgroup.ambient is not self.group:
            raise InputError("subgroup belongs to a different group")
        try:
            return self.sub_to_class[subgroup.key]
        except KeyError:
            raise InternalCheckError("subgroup missing from the class table")

    def class_orbit(self, class_index):
        """Every subgroup in the class, starting with the representative."""
        if class_index not in self._orbits:
            cls = self.classes[class_index]
            rep = cls.representative
            mult = self.group.mult
            inv = self.group.inv
            reps = kernels.coset_reps(mult, cls.normalizer.indices)
            seen = set()
            orbit = []
            for t in reps:
                conj = np.sort(mult[mult[t, rep.indices], inv[t]]).astype(np.int32)
                key = conj.tobytes()
                if key not in seen:
                    seen.add(key)
                    orbit.append(Subgroup(self.group, conj))
            orbit.sort(key=lambda s: s.indices.tolist())
            if orbit[0].key != rep.key:
                raise InternalCheckError("class representative is not orbit-least")
            self._orbits[class_index] = orbit
        return self._orbits[class_index]

    def all_subgroups(self):
        """Every subgroup of the group, decoded from the key map."""
        out = []
        for key in self.sub_to_class:
            out.append(Subgroup(self.group, np.frombuffer(key, dtype=np.int32)))
        out.sort(key=lambda s: (s.order, s.indices.tolist()))
        return out


def enumerate_classes(group, subgroup_cap=DEFAULT_SUBGROUP_CAP):
    """Enumerate all subgroups of ``group`` up to conjugacy.

    Raises CapExceeded when the total subgroup count passes
    ``subgroup_cap``.  The result is cached on the group.
    """
    cached = group._memo.get("class_table")
    if cached is not None and cached[1] >= subgroup_cap:
        return cached[0]
    mult = group.mult
    inv = group.inv
    n = group.order

    sub_to_class = {}
    records = []  # (indices, normalizer_indices, class_size)
    queue = deque()
    total = 0

    def register(indices):
        nonlocal total
        key = indices.tobytes()
        if key in sub_to_class:
            return
        norm = kernels.normalizer_members(mult, inv, indices)
        reps = kernels.coset_reps(mult, norm)
        orbit = []
        seen = set()
        for t in reps:
            conj = np.sort(mult[mult[t, indices], inv[t]]).astype(np.int32)
            ckey = conj.tobytes()
            if ckey in seen:
                raise InternalCheckError("normalizer transversal repeated a conjugate")
            seen.add(ckey)
            orbit.append((conj, t))
        if len(orbit) * norm.size != n:
            raise InternalCheckError("orbit size violates orbit-stabilizer counting")
        # the stored normalizer must belong to the stored representative,
        # so conjugate it by the same transversal element
        canon, t0 = min(orbit, key=lambda pair: pair[0].tolist())
        canon_norm = np.sort(mult[mult[t0, norm], inv[t0]]).astype(np.int32)
        cid = len(records)
        for conj, _ in orbit:
            sub_to_class[conj.tobytes()] = cid
        records.append((canon, canon_norm, len(orbit)))
        total += len(orbit)
        if total > subgroup_cap:
            raise CapExceeded(
                "subgroup enumeration exceeded the cap of %d" % subgroup_cap
            )
        if canon.size < n:
            queue.append(canon)

    for g in range(n):
        register(kernels.closure(mult, np.asarray([g], dtype=np.int32)))
    while queue:
        base = queue.popleft()
        base_mask = np.zeros(n, dtype=bool)
        base_mask[base] = True
        for g in range(n):
            if base_mask[g]:
                continue
            extended = kernels.closure(
                mult, np.concatenate([base, np.asarray([g], dtype=np.int32)])
            )
            register(extended)

    order_perm = sorted(
        range(len(records)), key=lambda i: (records[i][0].size, records[i][0].tolist())
    )
    remap = {old: new for new, old in enumerate(order_perm)}
    classes = []
    for old in order_perm:
        indices, norm, size = records[old]
        classes.append(
            SubgroupClass(
                representative=Subgroup(group, indices),
                order=int(indices.size),
                class_size=size,
                normalizer=Subgroup(group, norm),
            )
        )
    sub_to_class = {key: remap[cid] for key, cid in sub_to_class.items()}
    if sum(c.class_size for c in classes) != len(sub_to_class):
        raise InternalCheckError("class sizes disagree with the subgroup key map")
    table = SubgroupClassTable(group, classes, sub_to_class)
    group._memo["class_table"] = (table, subgroup_cap)
    return table


def normalizer(group, subgroup):
    members = kernels.normalizer_members(group.mult, group.inv, subgroup.indices)
    return Subgroup(group, members)


def is_normal(group, subgroup):
    # conjugation by generators suffices to test normality
    for g in group.generators:
        gi = group.index(g)
        conj = group.conjugate_indices(gi, subgroup.indices)
        if conj.tobytes() != subgroup.key:
            return False
    return True


def normal_subgroups(group, subgroup_cap=DEFAULT_SUBGROUP_CAP):
    table = enumerate_classes(group, subgroup_cap)
    return [c.representative for c in table.classes if c.class_size == 1]


class Quotient(NamedTuple):
    group: Group
    project: object
    preimage: object


def quotient(group, normal):
    """Quotient by a normal subgroup, acting on its left cosets.

    Returns Quotient(group, project, preimage): ``project`` maps an
    element of the parent to its image permutation, and ``preimage``
    maps a Subgroup of the quotient back to the full Subgroup of the
    parent containing ``normal``.
    """
    cached = group._memo.get(("quotient", normal.key))
    if cached is not None:
        return cached
    if not is_normal(group, normal):
        raise InputError("quotient requires a normal subgroup")
    mult = group.mult
    n = group.order
    reps = kernels.coset_reps(mult, normal.indices)
    coset_of = np.empty(n, dtype=np.int32)
    for c, r in enumerate(reps):
        coset_of[mult[r, normal.indices]] = c
    degree = int(reps.size)

    def images_of(g_index):
        return coset_of[mult[g_index, reps]]

    gen_perms = []
    for g in group.generators:
        gen_perms.append(Permutation(images_of(group.index(g))))
    q = generate(degree, gen_perms, element_cap=max(degree, 1))
    if q.order * normal.order != n:
        raise InternalCheckError("quotient order does not match index")

    q_index_of = np.empty(n, dtype=np.int32)
    for gi in range(n):
        q_index_of[gi] = q._index[tuple(int(v) for v in images_of(gi))]

    def project(perm):
        return Permutation(images_of(group.index(perm)))

    def preimage(subgroup_of_q):
        if subgroup_of_q.ambient is not q:
            raise InputError("preimage expects a subgroup of the quotient group")
        qmask = np.zeros(q.order, dtype=bool)
        qmask[subgroup_of_q.indices] = True
        members = np.flatnonzero(qmask[q_index_of]).astype(np.int32)
        return Subgroup(group, members)

    result = Quotient(q, project, preimage)
    group._memo[("quotient", normal.key)] = result
    return result


def meet_join(a, b):
    """Intersection and join of two subgroups of the same group."""
    if a.ambient is not b.ambient:
        raise InputError("meet_join requires subgroups of one group")
    meet_idx = np.intersect1d(a.indices, b.indices).astype(np.int32)
    join_idx = kernels.closure(
        a.ambient.mult, np.concatenate([a.indices, b.indices])
    )
    return Subgroup(a.ambient, meet_idx), Subgroup(a.ambient, join_idx)


def subgroup_as_group(subgroup):
    """View a Subgroup as a standalone Group on the same points.

    The element order of the new group matches the subgroup's index
    order, and the parent indices are remembered so class data can be
    transported back.
    """
    ambient = subgroup.ambient
    if subgroup.is_full():
        return ambient
    cached = ambient._memo.get(("as_group", subgroup.key))
    if cached is not None:
        return cached
    perms = subgroup.perms()
    gens = subgroup.generators()
    grp = Group(ambient.degree, gens, perms)
    grp._memo["parent_indices"] = subgroup.indices
    ambient._memo[("as_group", subgroup.key)] = grp
    return grp


def centralizer_indices(group, target_indices, within=None):
    """Indices of elements commuting with every element of ``target_indices``,
    optionally restricted to the subgroup ``within``."""
    mult = group.mult
    pool = within.indices if within is not None else np.arange(
        group.order, dtype=np.int32
    )
    out = []
    for g in pool:
        if all(mult[g, t] == mult[t, g] for t in target_indices):
            out.append(int(g))
    return np.asarray(out, dtype=np.int32)
