"""Decision procedures for norm-compatibility of chromatic localizations.

The core criterion: killing a vanishing locus V is compatible with the norm
from K up to H when every prime P(J, m, p) in V with J <= H has some double
coset KhJ whose intersection subgroup K^h n J again carries (m, p) in V.
Geometric fixed points of a norm split along double cosets, and a smash
product is K(m, p)-acyclic exactly when one factor is, so the criterion is
a finite, exact computation on the lattice.

Verdicts are one-sided by design: ``CERTIFIED_PRESERVES`` means the
sufficient criterion holds for every admissible norm of the operad;
``NO_GUARANTEE`` only reports that the certificate failed, never that the
localization actually destroys structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .chromatic import (
    INFINITY,
    BalmerPrime,
    Entry,
    HeightVector,
    LatticeMismatch,
    VanishingLocus,
    _entry_rank,
    cyclic_power_lattice,
    heights_to_locus,
    validate_height_vector,
    validate_vanishing_locus,
)
from .groups import Subgroup
from .transfers import BoundTooLarge, TransferSystem, complete_system


class CertifyError(Exception):
    pass


class NotNested(CertifyError):
    """Norm arguments must satisfy K <= H (and J <= H)."""


class InvalidLocus(CertifyError):
    """The vanishing locus fails its closure conditions."""


class InvalidHeightVector(CertifyError):
    """The height vector fails the adjacent-height inequalities."""


class IndexOutOfRange(CertifyError):
    """Chain indices must satisfy 0 <= k <= j <= n."""


class Verdict(Enum):
    CERTIFIED_PRESERVES = "CertifiedPreserves"
    NO_GUARANTEE = "NoGuarantee"


@dataclass(frozen=True)
class NormFailure:
    """One failing instance of the double-coset criterion.

    ``checked`` lists every (representative, intersection subgroup id) that
    was tried for the existential before giving up.
    """

    norm_source: int
    norm_target: int
    subgroup: int
    prime: BalmerPrime
    checked: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    witnesses: tuple[NormFailure, ...]

    def __post_init__(self):
        if bool(self.witnesses) != (self.verdict is Verdict.NO_GUARANTEE):
            raise ValueError("witnesses exactly when the verdict is NO_GUARANTEE")

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED_PRESERVES


def _sid(s: Subgroup | int) -> int:
    return s if isinstance(s, int) else s.lattice_id


@lru_cache(maxsize=None)
def _locus_violations(vl: VanishingLocus) -> tuple:
    return tuple(validate_vanishing_locus(vl))


def _require_valid(vl: VanishingLocus):
    bad = _locus_violations(vl)
    if bad:
        raise InvalidLocus(f"locus fails validation: {bad[0]}")


def norm_support(
    S, K: Subgroup | int, H: Subgroup | int, J: Subgroup | int
) -> frozenset:
    """Support of the J-geometric fixed points of the K-to-H norm.

    The diagonal formula turns the norm into a smash over double cosets
    K\\H/J, and smashing intersects chromatic supports, so this is the
    intersection of the profile at the classes of K^h n J.
    """
    L = S.lattice
    kid, hid, jid = _sid(K), _sid(H), _sid(J)
    if not (L.leq(kid, hid) and L.leq(jid, hid)):
        raise NotNested("norm_support needs K <= H and J <= H")
    parts = []
    for block in L.double_coset_blocks(kid, jid, hid):
        cut = L.intersect_ids(L.conj_id(kid, block[0]), jid)
        parts.append(S.at_class(L.class_of[cut]))
    return frozenset(parts[0]).intersection(*parts[1:])


def _pair_obstructions(
    vl: VanishingLocus, kid: int, hid: int, choose_rep=None
) -> tuple[NormFailure, ...]:
    L = vl.lattice
    failures = []
    for q in vl.sorted_primes():
        for jid in L.classes[q.subgroup_class]:
            if not L.leq(jid, hid):
                continue
            checked = []
            hit = False
            for block in L.double_coset_blocks(kid, jid, hid):
                r = block[0] if choose_rep is None else choose_rep(block)
                cut = L.intersect_ids(L.conj_id(kid, r), jid)
                checked.append((r, cut))
                if vl.contains(L.class_of[cut], q.height, q.prime):
                    hit = True
                    break
            if not hit:
                failures.append(NormFailure(kid, hid, jid, q, tuple(checked)))
    return tuple(failures)


@lru_cache(maxsize=None)
def _pair_obstructions_cached(vl: VanishingLocus, kid: int, hid: int):
    return _pair_obstructions(vl, kid, hid)


def norm_preserves_locus(
    VL: VanishingLocus, K: Subgroup | int, H: Subgroup | int, choose_rep=None
) -> Decision:
    """Certify that the K-to-H norm maps the locus into itself."""
    kid, hid = _sid(K), _sid(H)
    if not VL.lattice.leq(kid, hid):
        raise NotNested(f"subgroup {kid} is not contained in {hid}")
    _require_valid(VL)
    if choose_rep is None:
        witnesses = _pair_obstructions_cached(VL, kid, hid)
    else:
        witnesses = _pair_obstructions(VL, kid, hid, choose_rep)
    verdict = Verdict.NO_GUARANTEE if witnesses else Verdict.CERTIFIED_PRESERVES
    return Decision(verdict, witnesses)


def localization_preserves(
    VL: VanishingLocus, R: TransferSystem, choose_rep=None
) -> Decision:
    """Certify that localizing away the locus preserves algebras over R.

    Runs the norm criterion for every admissible pair of the transfer
    system; both the Bousfield and the finite localization of the same
    locus are covered by the same certificate.
    """
    if R.lattice is not VL.lattice:
        raise LatticeMismatch("locus and transfer system live on different lattices")
    _require_valid(VL)
    witnesses: list[NormFailure] = []
    for kid, hid in sorted(R.pairs):
        if choose_rep is None:
            witnesses.extend(_pair_obstructions_cached(VL, kid, hid))
        else:
            witnesses.extend(_pair_obstructions(VL, kid, hid, choose_rep))
    verdict = Verdict.NO_GUARANTEE if witnesses else Verdict.CERTIFIED_PRESERVES
    return Decision(verdict, tuple(witnesses))


# -- the cyclic p-power shortcut --------------------------------------------------


def norm_condition_holds(v: HeightVector, k: int, j: int) -> bool:
    """Inequality form of the norm criterion on C_{p^n}: v[k] >= v[k+1..j]."""
    if not 0 <= k <= j <= v.n:
        raise IndexOutOfRange(f"need 0 <= k <= j <= {v.n}, got ({k}, {j})")
    rk = _entry_rank(v.entries[k])
    return all(rk >= _entry_rank(v.entries[i]) for i in range(k + 1, j + 1))


def commutative_condition_holds(v: HeightVector) -> bool:
    """Inequality form of the full commutative-ring certificate on C_{p^n}."""
    if not validate_height_vector(v):
        raise InvalidHeightVector(f"{v.entries} violates the closure inequalities")
    r = [_entry_rank(e) for e in v.entries]
    return all(r[i + 1] <= r[i] <= r[i + 1] + 1 for i in range(len(r) - 1))


MAX_ENUM_LENGTH = 6
MAX_ENUM_HEIGHT = 10


def enumerate_commutative_heights(
    n: int, height_bound: int, include_infinity: bool = False, p: int = 2
) -> tuple[HeightVector, ...]:
    """All valid height vectors whose localizations certify commutativity.

    Entries range over None, 0..height_bound and optionally INFINITY; the
    output is in lexicographic order with None < 0 < ... < INFINITY.
    """
    if n > MAX_ENUM_LENGTH or height_bound > MAX_ENUM_HEIGHT:
        raise BoundTooLarge(
            f"enumeration supports n <= {MAX_ENUM_LENGTH}, "
            f"height_bound <= {MAX_ENUM_HEIGHT}"
        )
    domain: list[Entry] = [None] + list(range(height_bound + 1))
    if include_infinity:
        domain.append(INFINITY)
    out = []
    for entries in itertools.product(domain, repeat=n + 1):
        v = HeightVector(p, entries)
        if validate_height_vector(v) and commutative_condition_holds(v):
            out.append(v)
    return tuple(out)


MAX_XVAL_LENGTH = 3
MAX_XVAL_HEIGHT = 5


@dataclass(frozen=True)
class Disagreement:
    entries: tuple[Entry, ...]
    check: str
    engine_certified: bool
    inequality_holds: bool


@dataclass(frozen=True)
class CrossValidationReport:
    n: int
    p: int
    height_bound: int
    vectors_checked: int
    norm_comparisons: int
    operad_comparisons: int
    disagreements: tuple[Disagreement, ...]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def cross_validate_cyclic(n: int, p: int, height_bound: int) -> CrossValidationReport:
    """Check the double-coset engine against the inequality shortcut.

    Sweeps every valid height vector on C_{p^n} with entries bounded by
    height_bound (sentinel and infinity included) and compares the engine
    verdict with the inequality form, for every nested norm and for the
    complete operad.
    """
    if n > MAX_XVAL_LENGTH or height_bound > MAX_XVAL_HEIGHT:
        raise BoundTooLarge(
            f"cross-validation supports n <= {MAX_XVAL_LENGTH}, "
            f"height_bound <= {MAX_XVAL_HEIGHT}"
        )
    lattice = cyclic_power_lattice(p, n)
    complete = complete_system(lattice)
    chain = lattice.subgroups
    assert all(chain[i].order == p**i for i in range(n + 1))
    domain: list[Entry] = [None] + list(range(height_bound + 1)) + [INFINITY]
    vectors = norms = operads = 0
    disagreements = []
    for entries in itertools.product(domain, repeat=n + 1):
        v = HeightVector(p, entries)
        if not validate_height_vector(v):
            continue
        vectors += 1
        vl = heights_to_locus(v, lattice)
        for k in range(n + 1):
            for j in range(k, n + 1):
                norms += 1
                engine = norm_preserves_locus(vl, chain[k], chain[j]).certified
                shortcut = norm_condition_holds(v, k, j)
                if engine != shortcut:
                    disagreements.append(
                        Disagreement(entries, f"norm[{k},{j}]", engine, shortcut)
                    )
        operads += 1
        engine = localization_preserves(vl, complete).certified
        shortcut = commutative_condition_holds(v)
        if engine != shortcut:
            disagreements.append(
                Disagreement(entries, "complete-operad", engine, shortcut)
            )
    return CrossValidationReport(
        n, p, height_bound, vectors, norms, operads, tuple(disagreements)
    )
