"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's own algorithms: subgroup
lattices come from closing small generating sets, transfer-system validity
is re-derived with element-by-element restriction instead of double cosets,
and norm supports are recomputed over every element of H.
"""

from __future__ import annotations

import itertools
import re
from functools import cache

import normcert as nc
from normcert.transfers import candidate_pairs, reflexive_pairs

CORPUS_SPECS = (
    "cyclic:4",
    "cyclic:6",
    "symmetric:3",
    "dihedral:8",
    "quaternion:8",
    "cyclic:8",
    "cyclic:9",
)

SMALL_PRIMES = (2, 3, 5)


@cache
def lattice(spec: str) -> nc.SubgroupLattice:
    return nc.subgroup_lattice(nc.build_group(spec))


@cache
def enumeration(spec: str) -> nc.TransferEnumeration:
    return nc.enumerate_transfer_systems(lattice(spec))


def corpus_lattices():
    return [lattice(s) for s in CORPUS_SPECS]


# -- independent oracles ---------------------------------------------------------


def brute_force_subgroup_masks(G: nc.FiniteGroup, max_gen: int = 3) -> set[int]:
    """Closures of all generating sets of size <= max_gen."""
    masks = {G.generated_mask(0)}
    for r in range(1, max_gen + 1):
        for combo in itertools.combinations(range(G.order), r):
            m = 0
            for g in combo:
                m |= 1 << g
            masks.add(G.generated_mask(m))
    return masks


def independent_transfer_valid(L: nc.SubgroupLattice, pairs: frozenset) -> bool:
    """Axiom check written against the definitions, not the library's closure.

    Restriction is tested for every element of H separately rather than per
    double coset, which is the set-level formulation.
    """
    G = L.group
    for k, h in pairs:
        if not L.leq(k, h):
            return False
    for i in range(len(L)):
        if (i, i) not in pairs:
            return False
    for a, b in pairs:
        for c, d in pairs:
            if b == c and (a, d) not in pairs:
                return False
    for k, h in pairs:
        for g in range(G.order):
            if (L.conj_id(k, g), L.conj_id(h, g)) not in pairs:
                return False
    for k, h in pairs:
        for j in range(len(L)):
            if not L.leq(j, h):
                continue
            for x in L.subgroups[h].members:
                cut = L.intersect_ids(L.conj_id(k, x), j)
                if (cut, j) not in pairs:
                    return False
    return True


def brute_force_transfer_systems(L: nc.SubgroupLattice) -> list[frozenset]:
    """All valid pair sets by filtering every subset of the candidate pairs."""
    strict = sorted(candidate_pairs(L))
    refl = reflexive_pairs(L)
    out = []
    for bits in range(2 ** len(strict)):
        pairs = frozenset(refl | {strict[i] for i in range(len(strict)) if bits >> i & 1})
        if independent_transfer_valid(L, pairs):
            out.append(pairs)
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def brute_force_norm_support(S: nc.SupportData, kid: int, hid: int, jid: int):
    """Intersection over every h in H, not just double-coset representatives."""
    L = S.lattice
    parts = []
    for x in L.subgroups[hid].members:
        cut = L.intersect_ids(L.conj_id(kid, x), jid)
        parts.append(S.at_class(L.class_of[cut]))
    return frozenset(parts[0]).intersection(*parts[1:])


def brute_force_norm_preserves(vl: nc.VanishingLocus, kid: int, hid: int) -> bool:
    """The preservation criterion with the existential over every h in H."""
    L = vl.lattice
    for q in vl.sorted_primes():
        for jid in L.classes[q.subgroup_class]:
            if not L.leq(jid, hid):
                continue
            hits = [
                vl.contains(
                    L.class_of[L.intersect_ids(L.conj_id(kid, x), jid)],
                    q.height,
                    q.prime,
                )
                for x in L.subgroups[hid].members
            ]
            if not any(hits):
                return False
    return True


# -- randomized generators ---------------------------------------------------------


def random_tops(rng, allow_infinity=True) -> dict:
    """Random prime -> top-height map describing a nonequivariant support."""
    tops = {}
    for p in rng.sample(SMALL_PRIMES, rng.randint(1, len(SMALL_PRIMES))):
        if allow_infinity and rng.random() < 0.15:
            tops[p] = nc.INFINITY
        else:
            tops[p] = rng.randint(0, 4)
    return tops


def _segment_primes(c: int, p: int, top) -> list:
    if top is None:
        return []
    if top == nc.INFINITY:
        return [nc.BalmerPrime(c, nc.INFINITY, p)]
    return [nc.balmer_prime(c, m, p) for m in range(top + 1)]


def _random_chain_tops(rng, n: int, domain) -> list:
    """Tops t_0..t_n with rank(t_i) <= rank(t_{i+1}) + 1, sampled back to front."""

    def rank(e):
        return -1 if e is None else e

    tops = [rng.choice(domain)]
    for _ in range(n):
        ceiling = rank(tops[0]) + 1
        tops.insert(0, rng.choice([d for d in domain if rank(d) <= ceiling]))
    return tops


def random_valid_locus(L: nc.SubgroupLattice, rng) -> nc.VanishingLocus:
    """A random locus passing validate_vanishing_locus on any corpus lattice."""
    from normcert.chromatic import cyclic_p_power

    domain = [None, 0, 1, 2, 3, nc.INFINITY]
    primes = []
    pn = cyclic_p_power(L)
    if pn is not None:
        p, n = pn
        tops = _random_chain_tops(rng, n, domain)
        for i, top in enumerate(tops):
            c = next(
                L.class_of[s.lattice_id] for s in L.subgroups if s.order == p**i
            )
            primes.extend(_segment_primes(c, p, top))
        if rng.random() < 0.3:
            q = rng.choice([q for q in SMALL_PRIMES if q != p])
            for c in range(len(L.classes)):
                primes.extend(_segment_primes(c, q, rng.choice(domain)))
    else:
        for c in range(len(L.classes)):
            for p in SMALL_PRIMES:
                if rng.random() < 0.4:
                    primes.extend(_segment_primes(c, p, rng.choice(domain)))
    vl = nc.vanishing_locus(L, primes)
    assert not nc.validate_vanishing_locus(vl)
    return vl


def random_uniform_locus(L: nc.SubgroupLattice, rng) -> nc.VanishingLocus:
    vl = nc.uniform_locus(L, random_tops(rng))
    assert not nc.validate_vanishing_locus(vl)
    return vl


def random_support_data(L: nc.SubgroupLattice, rng) -> nc.SupportData:
    """Arbitrary per-class support profiles; no closure imposed."""
    universe = [(m, p) for p in SMALL_PRIMES for m in (1, 2, 3, nc.INFINITY)]
    universe += [(0, nc.ANY_PRIME)]
    per_class = []
    for _ in L.classes:
        k = rng.randint(0, len(universe))
        per_class.append(frozenset(rng.sample(universe, k)))
    return nc.support_data(L, per_class)


def random_pair(L: nc.SubgroupLattice, rng) -> tuple[int, int]:
    """A random nested pair (kid, hid)."""
    pairs = [(i, i) for i in range(len(L))] + list(candidate_pairs(L))
    return rng.choice(sorted(pairs))


# -- a small DOT grammar check ------------------------------------------------------

_DOT_NODE = re.compile(r'^"[^"]+"( \[label="[^"]*"\])?;$')
_DOT_EDGE = re.compile(r'^"[^"]+" -> "[^"]+";$')


def check_dot_syntax(text: str) -> None:
    lines = text.splitlines()
    assert lines[0].startswith("digraph ") and lines[0].endswith(" {")
    assert lines[-1] == "}"
    assert text.endswith("}\n")
    for line in lines[1:-1]:
        stripped = line.strip()
        if stripped == "rankdir=BT;":
            continue
        assert _DOT_NODE.match(stripped) or _DOT_EDGE.match(stripped), stripped
