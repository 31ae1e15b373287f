"""Chromatic support data over a subgroup lattice.

The points tracked here are Balmer primes P(H, m, p): a conjugacy class of
subgroups H, a chromatic height m, and an arithmetic prime p.  Heights are
indexed so that height m means detection by the m-th Morava K-theory; at
height 0 the prime is irrelevant (torsion is torsion at every p), so those
points carry the shared marker ``ANY_PRIME``.  ``INFINITY`` is a formal top
height: a prime at height infinity stands for the whole tower of heights
above a subgroup, which keeps vanishing loci finite while letting maximal
heights be unbounded.

Two kinds of profiles live here:

* :class:`VanishingLocus` records the primes a thick subcategory kills
  (closed downward in height, per subgroup class and prime);
* :class:`SupportData` records, per subgroup class, the chromatic support
  of the geometric fixed points of a spectrum (no closure assumed).

For cyclic p-power groups a p-local locus compresses to the vector of
maximal heights per subgroup in the chain; :class:`HeightVector` is that
encoding, with ``None`` as the "nothing vanishes here" sentinel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groups import SubgroupLattice, cyclic, subgroup_lattice


class ChromaticError(Exception):
    pass


class NotCyclicPGroupLattice(ChromaticError):
    """Height-vector codecs only apply to lattices of cyclic p-groups."""


class NotPLocal(ChromaticError):
    """The locus mentions primes other than the requested one."""


class LatticeMismatch(ChromaticError):
    """Operands live on different subgroup lattices."""


INFINITY = float("inf")
ANY_PRIME = "any"

Height = int | float  # a natural number, or INFINITY
Entry = int | float | None  # height-vector entry; None is the empty sentinel


def is_height(h) -> bool:
    if h == INFINITY:
        return True
    return isinstance(h, int) and not isinstance(h, bool) and h >= 0


def _is_prime(p) -> bool:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _prime_key(p) -> tuple:
    return (1, 0) if p == ANY_PRIME else (0, p)


def _height_key(h) -> tuple:
    return (1, 0) if h == INFINITY else (0, h)


@dataclass(frozen=True)
class BalmerPrime:
    """The prime P(H, m, p), with H recorded as a conjugacy-class index."""

    subgroup_class: int
    height: Height
    prime: int | str

    def __post_init__(self):
        if not is_height(self.height):
            raise ValueError(f"bad height {self.height!r}")
        if self.height == 0:
            if self.prime != ANY_PRIME:
                raise ValueError("height-0 primes carry the shared ANY marker")
        elif not _is_prime(self.prime):
            raise ValueError(f"positive heights need a concrete prime, got {self.prime!r}")

    def sort_key(self) -> tuple:
        return (self.subgroup_class, _height_key(self.height), _prime_key(self.prime))


def balmer_prime(subgroup_class: int, height: Height, prime) -> BalmerPrime:
    """Construct a prime, normalising the height-0 marker automatically."""
    if height == 0:
        return BalmerPrime(subgroup_class, 0, ANY_PRIME)
    return BalmerPrime(subgroup_class, height, prime)


@dataclass(frozen=True)
class VanishingLocus:
    """A set of Balmer primes, e.g. the vanishing locus of a thick subcategory.

    Conjugation closure is automatic (primes are stored per class).  A prime
    at height INFINITY denotes the full height tower at its (class, prime)
    slot, so finite primes implied by one are dropped at construction.
    """

    lattice: SubgroupLattice
    primes: frozenset[BalmerPrime]

    def __post_init__(self):
        inf_slots = {
            (q.subgroup_class, q.prime) for q in self.primes if q.height == INFINITY
        }
        inf_classes = {c for c, _ in inf_slots}
        kept = frozenset(
            q
            for q in self.primes
            if q.height == INFINITY
            or (q.height == 0 and q.subgroup_class not in inf_classes)
            or (q.height != 0 and (q.subgroup_class, q.prime) not in inf_slots)
        )
        object.__setattr__(self, "primes", kept)

    def contains(self, subgroup_class: int, height: Height, prime) -> bool:
        if height == INFINITY:
            return BalmerPrime(subgroup_class, INFINITY, prime) in self.primes
        if balmer_prime(subgroup_class, height, prime) in self.primes:
            return True
        if height == 0:
            return any(
                q.height == INFINITY and q.subgroup_class == subgroup_class
                for q in self.primes
            )
        return BalmerPrime(subgroup_class, INFINITY, prime) in self.primes

    def concrete_primes(self) -> tuple[int, ...]:
        return tuple(sorted({q.prime for q in self.primes if q.prime != ANY_PRIME}))

    def sorted_primes(self) -> tuple[BalmerPrime, ...]:
        return tuple(sorted(self.primes, key=BalmerPrime.sort_key))

    def segment_top(self, subgroup_class: int, prime: int) -> Entry:
        """Maximal height present at (class, prime); None when empty."""
        if BalmerPrime(subgroup_class, INFINITY, prime) in self.primes:
            return INFINITY
        finite = [
            q.height
            for q in self.primes
            if q.subgroup_class == subgroup_class
            and q.prime == prime
            and q.height != INFINITY
        ]
        if finite:
            return max(finite)
        if self.contains(subgroup_class, 0, ANY_PRIME):
            return 0
        return None

    def __len__(self) -> int:
        return len(self.primes)


def vanishing_locus(lattice: SubgroupLattice, primes) -> VanishingLocus:
    return VanishingLocus(lattice, frozenset(primes))


def uniform_locus(lattice: SubgroupLattice, tops: dict[int, Height]) -> VanishingLocus:
    """The locus with the same height segments at every subgroup class.

    ``tops`` maps each prime to the maximal vanishing height there; these are
    the loci cut out by localizing at a spectrum pushed forward from the
    trivial group.
    """
    primes = []
    for c in range(len(lattice.classes)):
        for p, top in tops.items():
            if top is None:
                continue
            if top == INFINITY:
                primes.append(BalmerPrime(c, INFINITY, p))
            else:
                primes.extend(balmer_prime(c, m, p) for m in range(top + 1))
    return vanishing_locus(lattice, primes)


def cyclic_p_power(lattice: SubgroupLattice) -> tuple[int, int] | None:
    """(p, n) when the underlying group is cyclic of order p**n with n >= 1."""
    G = lattice.group
    order = G.order
    if order == 1:
        return None
    p = min(d for d in range(2, order + 1) if order % d == 0)
    n, rest = 0, order
    while rest % p == 0:
        rest //= p
        n += 1
    if rest != 1:
        return None
    if max(G.element_order(a) for a in range(order)) != order:
        return None
    return p, n


def validate_vanishing_locus(VL: VanishingLocus) -> list:
    """All closure violations; an empty list means the locus is valid.

    Checks downward height-closure per (class, prime) and the height-0
    identification everywhere.  On the lattice of a cyclic p-group it also
    checks the adjacent-height inequalities that cut the p-local loci down
    to the ones realised by thick subcategories.
    """
    from .transfers import Violation  # shared record shape

    out = []
    for q in sorted(VL.primes, key=BalmerPrime.sort_key):
        if q.subgroup_class >= len(VL.lattice.classes):
            out.append(Violation("unknown-class", (q,)))
            continue
        if q.height == INFINITY or q.height == 0:
            continue
        below = q.height - 1
        want_prime = q.prime if below >= 1 else ANY_PRIME
        if not VL.contains(q.subgroup_class, below, want_prime):
            out.append(Violation("downward-closure", (q, below, want_prime)))

    pn = cyclic_p_power(VL.lattice)
    if pn is not None:
        p, n = pn
        if p in VL.concrete_primes() or any(q.prime == ANY_PRIME for q in VL.primes):
            tops = _chain_tops(VL, p)
            for i in range(n):
                if _entry_rank(tops[i]) > _entry_rank(tops[i + 1]) + 1:
                    out.append(Violation("chain-inequality", (p, i, tops[i], tops[i + 1])))
    return out


# -- height vectors for cyclic p-power groups ----------------------------------


@dataclass(frozen=True)
class HeightVector:
    """Per-subgroup maximal vanishing heights along the chain of C_{p^n}.

    ``entries[i]`` is the top height at the subgroup of order p**i, or None
    when that subgroup sees no vanishing at all.
    """

    p: int
    entries: tuple[Entry, ...]

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p!r} is not a prime")
        if not self.entries:
            raise ValueError("height vector needs at least one entry")
        for e in self.entries:
            if e is not None and not is_height(e):
                raise ValueError(f"bad height entry {e!r}")

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def has_sentinel(self) -> bool:
        return any(e is None for e in self.entries)


def _entry_rank(e: Entry) -> float:
    return -1 if e is None else e


def validate_height_vector(v: HeightVector) -> bool:
    """The necessary closure condition: each entry at most one above the next."""
    r = [_entry_rank(e) for e in v.entries]
    return all(r[i] <= r[i + 1] + 1 for i in range(len(r) - 1))


@lru_cache(maxsize=None)
def cyclic_power_lattice(p: int, n: int) -> SubgroupLattice:
    """The (cached) subgroup lattice of the cyclic group of order p**n."""
    return subgroup_lattice(cyclic(p**n), max_order=max(64, p**n))


def _chain_class(lattice: SubgroupLattice, p: int, i: int) -> int:
    want = p**i
    for sid, s in enumerate(lattice.subgroups):
        if s.order == want:
            return lattice.class_of[sid]
    raise NotCyclicPGroupLattice(f"no subgroup of order {want}")


def heights_to_locus(
    v: HeightVector, lattice: SubgroupLattice | None = None
) -> VanishingLocus:
    """The locus with primes P(C_{p^i}, j, p) for all j <= entries[i]."""
    n = v.n
    if lattice is None:
        lattice = cyclic_power_lattice(v.p, n)
    else:
        pn = cyclic_p_power(lattice)
        if n == 0:
            if lattice.group.order != 1:
                raise NotCyclicPGroupLattice("length-1 vectors live on the trivial group")
        elif pn != (v.p, n):
            raise NotCyclicPGroupLattice(
                f"lattice of {lattice.group.name} does not match p={v.p}, n={n}"
            )
    primes = []
    for i, e in enumerate(v.entries):
        if e is None:
            continue
        c = _chain_class(lattice, v.p, i)
        if e == INFINITY:
            primes.append(BalmerPrime(c, INFINITY, v.p))
        else:
            primes.extend(balmer_prime(c, j, v.p) for j in range(e + 1))
    return vanishing_locus(lattice, primes)


def _chain_tops(VL: VanishingLocus, p: int) -> list[Entry]:
    pn = cyclic_p_power(VL.lattice)
    n = 0 if pn is None else pn[1]
    if pn is None and VL.lattice.group.order != 1:
        raise NotCyclicPGroupLattice(
            f"{VL.lattice.group.name} is not a cyclic p-group"
        )
    return [
        VL.segment_top(_chain_class(VL.lattice, p, i), p) for i in range(n + 1)
    ]


def locus_to_heights(VL: VanishingLocus, p: int | None = None) -> HeightVector:
    """Read the maximal-height vector off a p-local locus on C_{p^n}."""
    pn = cyclic_p_power(VL.lattice)
    if pn is None and VL.lattice.group.order != 1:
        raise NotCyclicPGroupLattice(f"{VL.lattice.group.name} is not a cyclic p-group")
    if pn is not None:
        if p is not None and p != pn[0]:
            raise NotPLocal(f"lattice prime is {pn[0]}, requested {p}")
        p = pn[0]
    elif p is None:
        concrete = VL.concrete_primes()
        if len(concrete) != 1:
            raise NotPLocal("cannot infer the prime on the trivial group")
        p = concrete[0]
    stray = [q for q in VL.concrete_primes() if q != p]
    if stray:
        raise NotPLocal(f"locus mentions primes {stray} besides {p}")
    return HeightVector(p, tuple(_chain_tops(VL, p)))


# -- support profiles of spectra ------------------------------------------------


@dataclass(frozen=True)
class SupportData:
    """Per conjugacy class, the chromatic support of geometric fixed points."""

    lattice: SubgroupLattice
    assignments: tuple[frozenset[tuple[Height, int | str]], ...]

    def __post_init__(self):
        if len(self.assignments) != len(self.lattice.classes):
            raise ValueError("one support set per conjugacy class required")

    def at_class(self, c: int) -> frozenset:
        return self.assignments[c]

    def at_subgroup(self, sid: int) -> frozenset:
        return self.assignments[self.lattice.class_of[sid]]


def support_data(lattice: SubgroupLattice, per_class) -> SupportData:
    return SupportData(lattice, tuple(frozenset(s) for s in per_class))


def support_of_pushforward(lattice: SubgroupLattice, pairs) -> SupportData:
    """Constant profile: pushforwards look the same at every subgroup."""
    s = frozenset(pairs)
    return SupportData(lattice, tuple(s for _ in lattice.classes))


def is_underlying_determined(S: SupportData) -> bool:
    """True when all support is concentrated at the trivial subgroup."""
    trivial_class = S.lattice.class_of[0]
    return all(
        not s for c, s in enumerate(S.assignments) if c != trivial_class
    )


def supports_equal(S1: SupportData, S2: SupportData) -> bool:
    if S1.lattice is not S2.lattice:
        raise LatticeMismatch("supports live on different lattices")
    return S1.assignments == S2.assignments
