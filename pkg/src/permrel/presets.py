"""Named example groups for the command line and the test corpus."""

import re

from .constructions import (
    affine_group,
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    frobenius_group,
    quaternion_group,
    symmetric_group,
)
from .errors import InputError
from .perm import DEFAULT_ELEMENT_CAP

_CYCLIC_RE = re.compile(r"^C(\d+)$")
_DIHEDRAL_RE = re.compile(r"^D(\d+)$")
_SYMMETRIC_RE = re.compile(r"^S(\d+)$")
_ALTERNATING_RE = re.compile(r"^A(\d+)$")
_FROBENIUS_RE = re.compile(r"^C(\d+):C(\d+)$")

MAX_CYCLIC = 64

#: Groups exercised by the ``corpus`` command, in report order.
CORPUS_NAMES = (
    "C2xC2",
    "C6",
    "C12",
    "Q8",
    "D8",
    "S3",
    "A4",
    "S4",
    "A5",
    "S5",
    "C7:C6",
    "C5:C4",
    "C5xQ8",
    "C3^2:C4",
)

CORPUS_CHARACTERISTICS = (0, 2, 3, 5, 7)


def _atom(name, cap):
    if name == "Q8":
        return quaternion_group(element_cap=cap)
    if name == "V4":
        return direct_product(
            [cyclic_group(2, element_cap=cap)] * 2, element_cap=cap
        )
    if name == "C3^2:C4":
        group, _, _ = affine_group(3, 2, [[[0, 2], [1, 0]]], element_cap=cap)
        return group
    m = _CYCLIC_RE.match(name)
    if m:
        n = int(m.group(1))
        if not 1 <= n <= MAX_CYCLIC:
            raise InputError("cyclic order must be between 1 and %d" % MAX_CYCLIC)
        return cyclic_group(n, element_cap=cap)
    m = _DIHEDRAL_RE.match(name)
    if m:
        return dihedral_group(int(m.group(1)), element_cap=cap)
    m = _SYMMETRIC_RE.match(name)
    if m:
        n = int(m.group(1))
        if not 1 <= n <= 6:
            raise InputError("symmetric degree must be between 1 and 6")
        return symmetric_group(n, element_cap=cap)
    m = _ALTERNATING_RE.match(name)
    if m:
        n = int(m.group(1))
        if not 3 <= n <= 6:
            raise InputError("alternating degree must be between 3 and 6")
        return alternating_group(n, element_cap=cap)
    m = _FROBENIUS_RE.match(name)
    if m:
        return frobenius_group(int(m.group(1)), int(m.group(2)), element_cap=cap)
    raise InputError("unknown group name: %r" % name)


def preset_group(name, element_cap=DEFAULT_ELEMENT_CAP):
    """Resolve a preset name, allowing 'x'-joined direct products."""
    name = name.strip()
    if not name:
        raise InputError("empty group name")
    if "x" in name and name not in ("V4",):
        parts = name.split("x")
        if all(parts):
            return direct_product(
                [_atom(part, element_cap) for part in parts],
                element_cap=element_cap,
            )
    return _atom(name, element_cap)
