"""Permutations on {0, ..., degree-1} and concrete permutation groups.

A Group stores its full sorted element list plus lazily built int32
multiplication and inverse tables; those tables are what every other
module indexes into.  Element 0 of any group built here is always the
identity, because the identity is the lexicographically smallest
permutation of its degree.
"""

import re

import numpy as np

from .errors import CapExceeded, InputError

DEFAULT_ELEMENT_CAP = 10000


class Permutation:
    """An immutable permutation given by its tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(v) for v in images)
        n = len(images)
        seen = [False] * n
        for v in images:
            if not 0 <= v < n or seen[v]:
                raise InputError("image list %r is not a permutation" % (images,))
            seen[v] = True
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        return compose(self, other)

    def inverse(self):
        out = [0] * len(self.images)
        for i, v in enumerate(self.images):
            out[v] = i
        return Permutation(out)

    def is_identity(self):
        return all(i == v for i, v in enumerate(self.images))

    def order(self):
        out = 1
        for cyc in self.cycles():
            out = out * len(cyc) // _gcd(out, len(cyc))
        return out

    def cycles(self):
        """Nontrivial cycles, each rotated to start at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = []
            p = start
            while not seen[p]:
                seen[p] = True
                cyc.append(p)
                p = self.images[p]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Permutation(%r)" % (list(self.images),)

    def __str__(self):
        return cycle_string(self)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def identity(degree):
    return Permutation(range(degree))


def compose(a, b):
    """The permutation mapping i to a(b(i))."""
    if a.degree != b.degree:
        raise InputError("cannot compose permutations of different degrees")
    return Permutation(tuple(a.images[v] for v in b.images))


def from_cycles(degree, cycles):
    """Permutation of the given degree from disjoint cycles.

    A cycle (a, b, c) maps a to b, b to c, and c back to a.
    """
    images = list(range(degree))
    touched = set()
    for cyc in cycles:
        cyc = [int(v) for v in cyc]
        for v in cyc:
            if not 0 <= v < degree:
                raise InputError("cycle point %d outside degree %d" % (v, degree))
            if v in touched:
                raise InputError("cycles are not disjoint at point %d" % v)
            touched.add(v)
        for i, v in enumerate(cyc):
            images[v] = cyc[(i + 1) % len(cyc)]
    return Permutation(images)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(degree, text):
    """Parse cycle notation like ``(0 1 2)(3 4)`` into a Permutation.

    Points may be separated by spaces or commas.  The empty string and
    ``()`` both denote the identity.
    """
    body = text.strip()
    cycles = []
    consumed = _CYCLE_RE.sub("", body)
    if consumed.strip():
        raise InputError("unparsable cycle notation: %r" % text)
    for match in _CYCLE_RE.finditer(body):
        inner = match.group(1).replace(",", " ").split()
        if not inner:
            continue
        try:
            cycles.append([int(v) for v in inner])
        except ValueError:
            raise InputError("non-integer point in cycle notation: %r" % text)
    return from_cycles(degree, cycles)


def cycle_string(p):
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(v) for v in cyc) + ")" for cyc in cycles)


def generate(degree, generators, element_cap=DEFAULT_ELEMENT_CAP):
    """Close a generator list into a Group, or raise CapExceeded.

    Elements are enumerated by breadth first closure and then sorted
    lexicographically by image tuple.
    """
    gens = list(generators)
    for g in gens:
        if g.degree != degree:
            raise InputError(
                "generator degree %d does not match group degree %d"
                % (g.degree, degree)
            )
    elements = {identity(degree).images}
    frontier = list(elements)
    gen_images = [g.images for g in gens]
    while frontier:
        fresh = []
        for images in frontier:
            for gimg in gen_images:
                prod = tuple(gimg[v] for v in images)
                if prod not in elements:
                    elements.add(prod)
                    fresh.append(prod)
                    if len(elements) > element_cap:
                        raise CapExceeded(
                            "group closure exceeded the element cap of %d"
                            % element_cap
                        )
        frontier = fresh
    perms = tuple(Permutation(images) for images in sorted(elements))
    return Group(degree, tuple(gens), perms)


class Group:
    """A finite permutation group with precomputed element list.

    Construct through ``generate`` (or the preset builders); the
    constructor itself trusts its inputs.  ``elements[0]`` is always the
    identity.
    """

    __slots__ = ("degree", "generators", "elements", "_index", "_mult", "_inv",
                 "_orders", "_memo")

    def __init__(self, degree, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        if not self.elements or not self.elements[0].is_identity():
            raise InputError("group element list must start with the identity")
        self._index = {p.images: i for i, p in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise InputError("duplicate elements in group list")
        self._mult = None
        self._inv = None
        self._orders = None
        self._memo = {}

    @property
    def order(self):
        return len(self.elements)

    def index(self, perm):
        try:
            return self._index[perm.images]
        except KeyError:
            raise InputError("permutation %s is not an element of this group" % perm)

    def is_member(self, perm):
        return perm.images in self._index

    @property
    def mult(self):
        """int32 table with mult[i, j] = index of elements[i] * elements[j]."""
        if self._mult is None:
            n = self.order
            images = np.array([p.images for p in self.elements], dtype=np.int32)
            lookup = {row.tobytes(): i for i, row in enumerate(images)}
            table = np.empty((n, n), dtype=np.int32)
            for i in range(n):
                # row i composes elements[i] with every element at once
                composed = images[i][images]
                for j in range(n):
                    table[i, j] = lookup[composed[j].tobytes()]
            self._mult = table
        return self._mult

    @property
    def inv(self):
        if self._inv is None:
            images = np.array([p.images for p in self.elements], dtype=np.int32)
            lookup = {row.tobytes(): i for i, row in enumerate(images)}
            inverses = np.argsort(images, axis=1).astype(np.int32)
            self._inv = np.array(
                [lookup[row.tobytes()] for row in inverses], dtype=np.int32
            )
        return self._inv

    @property
    def element_orders(self):
        if self._orders is None:
            self._orders = np.array(
                [p.order() for p in self.elements], dtype=np.int64
            )
        return self._orders

    def conjugate_indices(self, g_index, indices):
        """Sorted indices of g H g^-1 for H given by ``indices``."""
        mult = self.mult
        conj = mult[mult[g_index, indices], self.inv[g_index]]
        conj.sort()
        return conj.astype(np.int32)

    def __repr__(self):
        return "Group(degree=%d, order=%d)" % (self.degree, self.order)


def conjugate_subgroup(g, elements):
    """Conjugate a set of permutations by g, returning a sorted tuple."""
    ginv = g.inverse()
    return tuple(sorted(compose(compose(g, h), ginv) for h in elements))
