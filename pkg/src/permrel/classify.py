"""Group-class predicates and structural classification.

The predicates here (cyclic, soluble, hypo-elementary, quasi-elementary,
Dress) all reduce to characteristic subgroups computed from the ambient
subgroup table: the p-core is the intersection of the Sylow p-subgroups,
the q-residual is the intersection of the normal subgroups of q-power
index, and the Frattini subgroup is the intersection of the maximal
subgroups.

``main_case_classify`` matches a group against the structural shapes
that force a nonzero primitive quotient; it returns every matching
shape with a witness, and an empty list means no shape matched.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as kernels
from .errors import InputError, InternalCheckError
from .numtheory import (
    is_prime,
    is_prime_power,
    p_part,
    prime_factors,
    prime_to_p_part,
)
from .subgroups import (
    Subgroup,
    centralizer_indices,
    enumerate_classes,
    normal_subgroups,
    quotient,
    subgroup_as_group,
)


def subgroup_is_cyclic(subgroup):
    orders = subgroup.ambient.element_orders
    return int(orders[subgroup.indices].max()) == subgroup.order


def is_cyclic(group):
    return subgroup_is_cyclic(Subgroup.full(group))


def is_abelian(group):
    mult = group.mult
    gens = [group.index(g) for g in group.generators]
    for a in gens:
        for b in gens:
            if mult[a, b] != mult[b, a]:
                return False
    return True


def subgroup_is_abelian(subgroup):
    mult = subgroup.ambient.mult
    gens = subgroup.generator_indices
    for a in gens:
        for b in gens:
            if mult[a, b] != mult[b, a]:
                return False
    return True


def derived_subgroup(subgroup):
    """Commutator subgroup of a Subgroup, inside the same ambient group."""
    group = subgroup.ambient
    mult = group.mult
    inv = group.inv
    idx = subgroup.indices
    a = np.repeat(idx, idx.size)
    b = np.tile(idx, idx.size)
    commutators = mult[mult[inv[a], inv[b]], mult[a, b]]
    seeds = np.unique(commutators).astype(np.int32)
    return Subgroup(group, kernels.closure(mult, seeds))


def is_soluble(group):
    cached = group._memo.get("soluble")
    if cached is None:
        current = Subgroup.full(group)
        while True:
            nxt = derived_subgroup(current)
            if nxt.order == current.order:
                break
            current = nxt
        cached = current.is_trivial()
        group._memo["soluble"] = cached
    return cached


def sylow_subgroup(group, p):
    """The representative Sylow p-subgroup (the whole class is conjugate)."""
    table = enumerate_classes(group)
    target = p_part(group.order, p)
    hits = [c for c in table.classes if c.order == target]
    if len(hits) != 1:
        raise InternalCheckError("Sylow subgroups fell into %d classes" % len(hits))
    return hits[0].representative


def p_core(group, p):
    """Largest normal p-subgroup: the intersection of the Sylow p-subgroups."""
    cached = group._memo.get(("p_core", p))
    if cached is not None:
        return cached
    if group.order % p:
        result = Subgroup.trivial(group)
    else:
        table = enumerate_classes(group)
        target = p_part(group.order, p)
        class_idx = [i for i, c in enumerate(table.classes) if c.order == target]
        if len(class_idx) != 1:
            raise InternalCheckError("Sylow subgroups fell into several classes")
        mask = None
        for sylow in table.class_orbit(class_idx[0]):
            mask = sylow.mask.copy() if mask is None else (mask & sylow.mask)
        result = Subgroup(group, np.flatnonzero(mask).astype(np.int32))
    group._memo[("p_core", p)] = result
    return result


def q_residual(group, q):
    """Smallest normal subgroup of q-power index (intersection of them all)."""
    cached = group._memo.get(("q_residual", q))
    if cached is not None:
        return cached
    n = group.order
    mask = np.ones(n, dtype=bool)
    for sub in normal_subgroups(group):
        if is_prime_power(n // sub.order, q):
            mask &= sub.mask
    result = Subgroup(group, np.flatnonzero(mask).astype(np.int32))
    # the intersection has q-power index iff some member attains it
    if not is_prime_power(n // result.order, q):
        raise InternalCheckError("q-residual does not have q-power index")
    group._memo[("q_residual", q)] = result
    return result


def frattini_subgroup(group):
    """Intersection of the maximal subgroups."""
    cached = group._memo.get("frattini")
    if cached is not None:
        return cached
    table = enumerate_classes(group)
    subs = table.all_subgroups()
    proper = [s for s in subs if not s.is_full()]
    if not proper:
        result = Subgroup.full(group)  # trivial group: empty intersection
    else:
        mask = np.ones(group.order, dtype=bool)
        found = False
        for m in proper:
            is_maximal = not any(
                s.order > m.order and s.contains_subgroup(m) for s in proper
            )
            if is_maximal:
                mask &= m.mask
                found = True
        if not found:
            raise InternalCheckError("nontrivial group without maximal subgroups")
        result = Subgroup(group, np.flatnonzero(mask).astype(np.int32))
    group._memo["frattini"] = result
    return result


def hall_p_complement(group, p):
    """A Hall p'-subgroup of a soluble group, canonically chosen.

    Among all subgroups whose order is the prime-to-p part of the group
    order, the one with the lexicographically least index set is
    returned, so repeated runs pick the same complement.
    """
    if not is_soluble(group):
        raise InputError("Hall complements are only computed for soluble groups")
    target = prime_to_p_part(group.order, p)
    table = enumerate_classes(group)
    best = None
    for sub in table.all_subgroups():
        if sub.order == target:
            if best is None or sub.indices.tolist() < best.indices.tolist():
                best = sub
    if best is None:
        raise InternalCheckError("soluble group is missing a Hall complement")
    return best


def is_p_hypo_elementary(group, p):
    """True when the quotient by the p-core is cyclic."""
    core = p_core(group, p)
    if core.is_trivial():
        return is_cyclic(group)
    if core.is_full():
        return True
    return is_cyclic(quotient(group, core).group)


def subgroup_is_p_hypo_elementary(subgroup, p):
    """Hypo-elementarity for a subgroup, without building its quotient.

    A group is p-hypo-elementary exactly when its Sylow p-subgroup is
    normal (unique) and a complement element exists, i.e. some element
    has order equal to the prime-to-p part of the group order.  Both
    conditions read off the ambient subgroup table.
    """
    group = subgroup.ambient
    table = enumerate_classes(group)
    order = subgroup.order
    sylow_order = p_part(order, p)
    if sylow_order > 1:
        count = 0
        for sub in table.all_subgroups():
            if sub.order == sylow_order and subgroup.contains_subgroup(sub):
                count += 1
                if count > 1:
                    return False
        if count != 1:
            raise InternalCheckError("no Sylow subgroup found inside a subgroup")
    coprime_part = prime_to_p_part(order, p)
    orders = group.element_orders[subgroup.indices]
    return bool((orders == coprime_part).any())


def is_q_quasi_elementary(group, q):
    """True when the q-residual is cyclic (normal cyclic with q-power index)."""
    return subgroup_is_cyclic(q_residual(group, q))


def is_pq_dress(group, p, q):
    """True when the quotient by the p-core is q-quasi-elementary."""
    core = p_core(group, p)
    if core.is_trivial():
        return is_q_quasi_elementary(group, q)
    if core.is_full():
        return True
    return is_q_quasi_elementary(quotient(group, core).group, q)


def dress_primes(group, p):
    """The primes q for which a non-hypo-elementary group is (p,q)-Dress.

    For a group that is not p-hypo-elementary the list has at most one
    entry: the quotient by the p-core is noncyclic, and a noncyclic
    group is q-quasi-elementary for at most one prime.  Callers must
    handle the hypo-elementary case (Dress for every q) themselves.
    """
    if is_p_hypo_elementary(group, p):
        raise InputError("dress_primes is only meaningful for non-hypo groups")
    core = p_core(group, p)
    candidates = prime_factors(group.order // core.order)
    found = [q for q in candidates if is_pq_dress(group, p, q)]
    if len(found) > 1:
        raise InternalCheckError(
            "a noncyclic quotient cannot be quasi-elementary for two primes"
        )
    return found


@dataclass
class GroupClassReport:
    order: int
    cyclic: bool
    abelian: bool
    soluble: bool
    p_core_orders: dict
    q_residual_orders: dict
    frattini_order: int
    hypo_elementary_primes: tuple
    quasi_elementary_primes: tuple
    dress_pairs: tuple


def classify_group(group):
    n = group.order
    primes = prime_factors(n) if n > 1 else []
    hypo = tuple(p for p in primes if is_p_hypo_elementary(group, p))
    quasi = tuple(q for q in primes if is_q_quasi_elementary(group, q))
    dress = tuple(
        (p, q) for p in primes for q in primes if is_pq_dress(group, p, q)
    )
    return GroupClassReport(
        order=n,
        cyclic=is_cyclic(group),
        abelian=is_abelian(group),
        soluble=is_soluble(group),
        p_core_orders={p: p_core(group, p).order for p in primes},
        q_residual_orders={q: q_residual(group, q).order for q in primes},
        frattini_order=frattini_subgroup(group).order,
        hypo_elementary_primes=hypo,
        quasi_elementary_primes=quasi,
        dress_pairs=dress,
    )


@dataclass
class DressSection:
    core_subgroup: Subgroup  # U, a subgroup of the p-core up to conjugacy
    hall_complement: Subgroup  # the chosen p'-Hall subgroup of N_G(U)
    complement_classes: tuple  # representatives of its subgroup classes


@dataclass
class DressDecomposition:
    p: int
    q: int
    core: Subgroup
    sections: tuple
    pair_to_class: dict  # (section index, complement class index) -> G class


def dress_decomposition(group, p, q):
    """Coordinates for subgroup classes of a soluble (p,q)-Dress group.

    Every subgroup is conjugate to a product U * V with U a subgroup of
    the p-core (up to conjugacy) and V one of finitely many complement
    parts attached to U; the product assignment is verified to hit every
    subgroup class exactly once, and fusion of complement parts is
    verified to agree between the Hall complement and the full
    normalizer.
    """
    if q == p:
        raise InputError("dress_decomposition requires q different from p")
    if not is_soluble(group):
        raise InputError("dress_decomposition requires a soluble group")
    if not is_pq_dress(group, p, q):
        raise InputError("group is not (p,q)-Dress for the given pair")
    table = enumerate_classes(group)
    core = p_core(group, p)
    mult = group.mult
    core_classes = [
        (i, c) for i, c in enumerate(table.classes)
        if core.contains_subgroup(c.representative)
    ]
    sections = []
    pair_to_class = {}
    hit = {}
    for sec_idx, (_, ccls) in enumerate(core_classes):
        u = ccls.representative
        ng = ccls.normalizer
        ng_group = subgroup_as_group(ng)
        hall = hall_p_complement(ng_group, p)
        hall_in_g = _lift_subgroup(group, ng_group, hall)
        hall_group = subgroup_as_group(hall_in_g)
        hall_table = enumerate_classes(hall_group)
        _check_fusion(group, ng, hall_in_g, hall_group, hall_table)
        reps = []
        for v_idx, vcls in enumerate(hall_table.classes):
            v_in_g = _lift_subgroup(group, hall_group, vcls.representative)
            product = np.unique(
                mult[np.ix_(u.indices, v_in_g.indices)].ravel()
            ).astype(np.int32)
            if product.size != u.order * v_in_g.order:
                raise InternalCheckError("core times complement part is not direct")
            if product.tobytes() not in table.sub_to_class:
                raise InternalCheckError("product set is not a known subgroup")
            g_class = table.sub_to_class[product.tobytes()]
            pair = (sec_idx, v_idx)
            pair_to_class[pair] = g_class
            if g_class in hit:
                raise InternalCheckError(
                    "two product pairs landed in one subgroup class"
                )
            hit[g_class] = pair
            reps.append(v_in_g)
        sections.append(
            DressSection(
                core_subgroup=u,
                hall_complement=hall_in_g,
                complement_classes=tuple(reps),
            )
        )
    if len(hit) != len(table.classes):
        raise InternalCheckError(
            "product pairs covered %d of %d subgroup classes"
            % (len(hit), len(table.classes))
        )
    return DressDecomposition(
        p=p, q=q, core=core, sections=tuple(sections), pair_to_class=pair_to_class
    )


def _lift_subgroup(group, member_group, subgroup):
    """Transport a subgroup of a subgroup-as-group back to the parent."""
    if member_group is group:
        return subgroup
    parent = member_group._memo["parent_indices"]
    return Subgroup(group, parent[subgroup.indices])


def _check_fusion(group, ng, hall_in_g, hall_group, hall_table):
    """Two subgroups of the Hall complement that are conjugate under the
    full normalizer must already be conjugate inside the complement."""
    mult = group.mult
    inv = group.inv
    by_key = {}
    for idx, cls in enumerate(hall_table.classes):
        for member in hall_table.class_orbit(idx):
            by_key[_lift_subgroup(group, hall_group, member).key] = idx
    for key, cls_idx in list(by_key.items()):
        indices = np.frombuffer(key, dtype=np.int32)
        for g in ng.indices:
            conj = np.sort(mult[mult[g, indices], inv[g]]).astype(np.int32)
            other = by_key.get(conj.tobytes())
            if other is not None and other != cls_idx:
                raise InternalCheckError(
                    "normalizer fused two complement classes"
                )


@dataclass
class MainCaseMatch:
    tag: str
    witness: dict = field(default_factory=dict)


def _quasi_elementary_witness(group, p):
    """Case: quasi-elementary of order coprime to p, with a degeneracy.

    The degeneracy is that the cyclic part is not of prime order, or
    that the Sylow part does not act faithfully on it.
    """
    n = group.order
    if n % p == 0:
        return []
    out = []
    for q in prime_factors(n) or []:
        if not is_q_quasi_elementary(group, q):
            continue
        c = q_residual(group, q)
        sylow = sylow_subgroup(group, q)
        centr = centralizer_indices(group, c.generator_indices, within=sylow)
        faithful = centr.size == 1
        c_prime = is_prime(c.order)
        if (not c_prime) or (not faithful):
            out.append(
                MainCaseMatch(
                    tag="QuasiElementary",
                    witness={
                        "q": q,
                        "cyclic_part_order": c.order,
                        "sylow_part_order": sylow.order,
                        "cyclic_part_prime": c_prime,
                        "action_faithful": faithful,
                    },
                )
            )
    if n == 1:
        # the trivial group is quasi-elementary with trivial cyclic part
        out.append(
            MainCaseMatch(
                tag="QuasiElementary",
                witness={
                    "q": None,
                    "cyclic_part_order": 1,
                    "sylow_part_order": 1,
                    "cyclic_part_prime": False,
                    "action_faithful": True,
                },
            )
        )
    return out


def _elementary_abelian_prime(group, subgroup):
    """The prime l when the subgroup is elementary abelian, else None."""
    if subgroup.order == 1:
        return None
    factors = prime_factors(subgroup.order)
    if len(factors) != 1:
        return None
    l = factors[0]
    orders = group.element_orders[subgroup.indices]
    if not bool(((orders == 1) | (orders == l)).all()):
        return None
    if not subgroup_is_abelian(subgroup):
        return None
    return l


def two_factor_decomposition(group, w, d_sub, l):
    """Try to split W x| D as a direct product of two prime-degree factors.

    Looks for two distinct invariant lines L1, L2 spanning W such that
    D is exactly the product of the pointwise stabilizers of each line,
    with both factors of prime-power order for one common prime q (or
    trivial).  Returns (q, factor_orders) or None.
    """
    if w.order != l * l:
        return None
    lines = [
        nsub for nsub in normal_subgroups(group)
        if nsub.order == l and w.contains_subgroup(nsub)
    ]
    for a in range(len(lines)):
        for b in range(len(lines)):
            if a == b:
                continue
            l1, l2 = lines[a], lines[b]
            p1 = centralizer_indices(group, l2.indices, within=d_sub)
            p2 = centralizer_indices(group, l1.indices, within=d_sub)
            if p1.size * p2.size != d_sub.order:
                continue
            qs = set(prime_factors(int(p1.size))) | set(prime_factors(int(p2.size)))
            if len(qs) > 1:
                continue
            q = qs.pop() if qs else None
            sub1 = Subgroup(group, p1)
            sub2 = Subgroup(group, p2)
            if not subgroup_is_cyclic(sub1) or not subgroup_is_cyclic(sub2):
                continue
            return q, (int(p1.size), int(p2.size))
    return None


def vector_semidirect_match(group, p):
    """Match G = W x| D with W elementary abelian away from p, D faithful
    and Dress, and the action irreducible or split into two lines.

    Returns a witness dict or None.
    """
    table = enumerate_classes(group)
    normals = normal_subgroups(group)
    for w in normals:
        if w.is_trivial():
            continue  # W = G is allowed: the complement is then trivial
        l = _elementary_abelian_prime(group, w)
        if l is None or l == p:
            continue
        comp_order = group.order // w.order
        complement = None
        for cls in table.classes:
            if cls.order != comp_order:
                continue
            meet_size = int((cls.representative.mask & w.mask).sum())
            if meet_size != 1:
                continue
            centr = centralizer_indices(
                group, w.generator_indices, within=cls.representative
            )
            if centr.size == 1:  # found a complement acting faithfully
                complement = cls.representative
                break
        if complement is None:
            continue
        d_group = subgroup_as_group(complement)
        d_hypo = is_p_hypo_elementary(d_group, p)
        if d_hypo:
            qs = None  # Dress for every prime
        else:
            found = dress_primes(d_group, p)
            if not found:
                continue
            qs = found[0]
        # irreducible means W is a minimal normal subgroup
        irreducible = not any(
            (not nsub.is_trivial())
            and nsub.order < w.order
            and w.contains_subgroup(nsub)
            for nsub in normals
        )
        witness = {
            "l": l,
            "rank": _log_to_base(w.order, l),
            "module_order": w.order,
            "complement_order": complement.order,
            "complement_is_hypo": d_hypo,
            "q": qs,
            "shape": None,
            "_module": w,
            "_complement": complement,
        }
        if irreducible:
            witness["shape"] = "irreducible"
            return witness
        split = two_factor_decomposition(group, w, complement, l)
        if split is not None:
            q2, factor_orders = split
            if qs is not None and q2 is not None and q2 != qs:
                continue
            witness["shape"] = "two_factor"
            witness["factor_orders"] = factor_orders
            if witness["q"] is None:
                witness["q"] = q2
            return witness
    return None


def _log_to_base(n, l):
    d = 0
    while n > 1:
        if n % l:
            raise InternalCheckError("order is not a power of the prime")
        n //= l
        d += 1
    return d


def _nonabelian_socle_witness(group, p):
    """Case: a nonabelian minimal normal subgroup with trivial centralizer
    and a Dress quotient."""
    out = []
    normals = normal_subgroups(group)
    for m in normals:
        if m.is_trivial():
            continue
        minimal = not any(
            (not nsub.is_trivial())
            and nsub.order < m.order
            and m.contains_subgroup(nsub)
            for nsub in normals
        )
        if not minimal or subgroup_is_abelian(m):
            continue
        centr = centralizer_indices(group, m.generator_indices)
        if centr.size != 1:
            continue
        if m.is_full():
            quot_group = None
            d_hypo = True
            q = None
        else:
            quot_group = quotient(group, m).group
            d_hypo = is_p_hypo_elementary(quot_group, p)
            q = None
            if not d_hypo:
                found = dress_primes(quot_group, p)
                if not found:
                    continue
                q = found[0]
        out.append(
            MainCaseMatch(
                tag="NonabelianSerre",
                witness={
                    "socle_order": m.order,
                    "quotient_order": group.order // m.order,
                    "quotient_is_hypo": d_hypo,
                    "q": q,
                },
            )
        )
    return out


def main_case_classify(group, p):
    """All structural shapes of the classification matched by this group.

    Returned tags: QuasiElementary, VectorSemidirect, NonabelianSerre,
    PPDress.  An empty list means no shape matched.
    """
    matches = []
    matches.extend(_quasi_elementary_witness(group, p))
    vs = vector_semidirect_match(group, p)
    if vs is not None:
        witness = {k: v for k, v in vs.items() if not k.startswith("_")}
        matches.append(MainCaseMatch(tag="VectorSemidirect", witness=witness))
    matches.extend(_nonabelian_socle_witness(group, p))
    if is_pq_dress(group, p, p):
        matches.append(
            MainCaseMatch(
                tag="PPDress",
                witness={"core_order": p_core(group, p).order},
            )
        )
    return matches
