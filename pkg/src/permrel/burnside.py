"""The Burnside ring of a finite group in its mark coordinates.

Elements are integer vectors over the subgroup-class basis [G/H].  The
table of marks is built once per group and checked against three
structural facts on construction: it is lower triangular in the class
order, its diagonal entry at H is #N_G(H)/#H, and its first column is
the index [G:H].
"""

from fractions import Fraction

import numpy as np

from . import _kernels as kernels
from .errors import InputError, InternalCheckError
from .subgroups import Subgroup, enumerate_classes, subgroup_as_group


class BurnsideElement:
    """An element of the Burnside ring in the [G/H] basis."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != len(table.classes):
            raise InputError("coefficient count does not match class count")
        self.table = table
        self.coeffs = coeffs

    @classmethod
    def zero(cls, table):
        return cls(table, (0,) * len(table.classes))

    @classmethod
    def basis(cls, table, class_index):
        coeffs = [0] * len(table.classes)
        coeffs[class_index] = 1
        return cls(table, coeffs)

    def _check_same(self, other):
        if self.table is not other.table:
            raise InputError("elements belong to different Burnside rings")

    def __add__(self, other):
        self._check_same(other)
        return BurnsideElement(
            self.table, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check_same(other)
        return BurnsideElement(
            self.table, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return BurnsideElement(self.table, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar):
        scalar = int(scalar)
        return BurnsideElement(self.table, tuple(scalar * a for a in self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self.table is other.table and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.table), self.coeffs))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append("%+d*[%d]" % (c, i))
        return "BurnsideElement(%s)" % (" ".join(parts) or "0")


def fixed_points(group, h, k):
    """Number of fixed points of K acting on the coset space G/H."""
    if h.ambient is not group or k.ambient is not group:
        raise InputError("fixed_points requires subgroups of the given group")
    mult = group.mult
    transversal = kernels.coset_reps(mult, h.indices)
    return int(
        kernels.count_fixed(
            mult, group.inv, h.mask, transversal, k.generator_indices
        )
    )


class MarksTable:
    """Table of marks: entry [i][j] is the mark of class j on [G/H_i]."""

    __slots__ = ("table", "m")

    def __init__(self, table, m):
        self.table = table
        self.m = m


def marks_table(group, table=None):
    if table is None:
        table = enumerate_classes(group)
    cached = group._memo.get("marks")
    if cached is not None:
        return cached
    classes = table.classes
    k = len(classes)
    m = [[0] * k for _ in range(k)]
    for i, hcls in enumerate(classes):
        for j, kcls in enumerate(classes):
            if kcls.order > hcls.order:
                continue  # mark is zero unless K embeds into a conjugate of H
            m[i][j] = fixed_points(group, hcls.representative, kcls.representative)
    for i, hcls in enumerate(classes):
        if m[i][0] != group.order // hcls.order:
            raise InternalCheckError("mark on the trivial class must be the index")
        expected_diag = hcls.normalizer.order // hcls.order
        if m[i][i] != expected_diag:
            raise InternalCheckError("diagonal mark disagrees with the normalizer")
        for j in range(i + 1, k):
            if m[i][j] != 0:
                raise InternalCheckError("table of marks is not lower triangular")
    result = MarksTable(table, m)
    group._memo["marks"] = result
    return result


def mark_vector(x):
    """All marks of a Burnside element, one integer per subgroup class."""
    marks = marks_table(x.table.group, x.table)
    k = len(x.coeffs)
    out = []
    for j in range(k):
        total = 0
        for i, c in enumerate(x.coeffs):
            if c:
                total += c * marks.m[i][j]
        out.append(total)
    return out


def multiply(a, b):
    """Product in the Burnside ring, via marks and back substitution.

    Marks are multiplicative, and the table of marks is triangular with
    nonzero diagonal, so the product's coefficients solve a triangular
    system.  A non-integer during back substitution means the table is
    corrupt, and raises InternalCheckError.
    """
    a._check_same(b)
    marks = marks_table(a.table.group, a.table).m
    k = len(a.coeffs)
    va = mark_vector(a)
    vb = mark_vector(b)
    target = [x * y for x, y in zip(va, vb)]
    coeffs = [0] * k
    for j in range(k - 1, -1, -1):
        acc = Fraction(target[j])
        for i in range(j + 1, k):
            if coeffs[i] and marks[i][j]:
                acc -= Fraction(coeffs[i] * marks[i][j])
        val = acc / Fraction(marks[j][j])
        if val.denominator != 1:
            raise InternalCheckError("burnside product is not integral")
        coeffs[j] = int(val)
    return BurnsideElement(a.table, coeffs)


def _class_of_perms(table, perms):
    """Class index in ``table`` of the subgroup formed by ``perms``."""
    group = table.group
    indices = np.asarray(sorted(group.index(p) for p in perms), dtype=np.int32)
    return table.class_index_of(Subgroup(group, indices))


def induct(table_h, table_g, x):
    """Induction of Burnside elements along H <= G.

    H must act on the same points as G with every element belonging to
    G; induction sends the basis element [H/U] to [G/U].
    """
    if x.table is not table_h:
        raise InputError("element does not belong to the source table")
    out = [0] * len(table_g.classes)
    for i, c in enumerate(x.coeffs):
        if c:
            rep = table_h.classes[i].representative
            out[_class_of_perms(table_g, rep.perms())] += c
    return BurnsideElement(table_g, out)


def restrict(table_g, table_h, x):
    """Restriction of Burnside elements along H <= G.

    [G/U] restricted to H decomposes over the H\\G/U double cosets as
    the disjoint union of H/(H meet gUg^-1).
    """
    if x.table is not table_g:
        raise InputError("element does not belong to the source table")
    g_group = table_g.group
    h_group = table_h.group
    mult = g_group.mult
    inv = g_group.inv
    h_in_g = np.asarray(
        sorted(g_group.index(p) for p in h_group.elements), dtype=np.int32
    )
    out = [0] * len(table_h.classes)
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        u = table_g.classes[i].representative
        visited = np.zeros(g_group.order, dtype=bool)
        for g in range(g_group.order):
            if visited[g]:
                continue
            # mark the double coset H g U
            block = mult[np.ix_(h_in_g, mult[g, u.indices])]
            visited[block.ravel()] = True
            conj = mult[mult[g, u.indices], inv[g]]
            stab_in_g = np.intersect1d(conj, h_in_g)
            stab_perms = [g_group.elements[s] for s in stab_in_g]
            out[_class_of_perms(table_h, stab_perms)] += c
    return BurnsideElement(table_h, out)


def inflate(table_quotient, table_g, x, quotient_map):
    """Inflation of Burnside elements along a quotient map G -> G/N.

    ``quotient_map`` is the Quotient record produced by
    ``subgroups.quotient``; the basis element at a class U-bar of the
    quotient is sent to the class of its full preimage in G.
    """
    if x.table is not table_quotient:
        raise InputError("element does not belong to the source table")
    out = [0] * len(table_g.classes)
    for i, c in enumerate(x.coeffs):
        if c:
            rep = table_quotient.classes[i].representative
            pre = quotient_map.preimage(rep)
            out[table_g.class_index_of(pre)] += c
    return BurnsideElement(table_g, out)


def tables_for(group):
    """Convenience: the subgroup class table and marks table of a group."""
    table = enumerate_classes(group)
    marks_table(group, table)
    return table


def element_from_subgroups(table, pairs):
    """Build an element from (Subgroup, coefficient) pairs."""
    coeffs = [0] * len(table.classes)
    for sub, c in pairs:
        coeffs[table.class_index_of(sub)] += int(c)
    return BurnsideElement(table, coeffs)


def subgroup_table(subgroup):
    """Class table of a Subgroup viewed as its own group."""
    return enumerate_classes(subgroup_as_group(subgroup))
