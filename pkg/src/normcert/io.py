"""Structured (JSON) documents for inputs and reports.

One dialect for everything: plain JSON with a ``schema_version`` field.
Serialization is canonical (sorted keys, fixed separators), so identical
inputs always produce identical bytes, and every emitted document parses
back to an equal in-memory value.

Height spelling: integers, ``"inf"`` for the formal top, ``"none"`` for the
empty sentinel in height vectors.  Primes: integers or ``"any"`` for the
shared height-0 marker.
"""

from __future__ import annotations

import hashlib
import json

from .certify import CrossValidationReport, Decision
from .chromatic import (
    ANY_PRIME,
    INFINITY,
    BalmerPrime,
    HeightVector,
    VanishingLocus,
    _is_prime,
    balmer_prime,
    vanishing_locus,
)
from .groups import FiniteGroup, SubgroupLattice
from .transfers import (
    TransferEnumeration,
    TransferSystem,
    close_transfer_system,
    complete_system,
    trivial_system,
)

SCHEMA_VERSION = 1


class ParseError(Exception):
    """A structured document or inline spec is malformed."""


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)


def digest(doc) -> str:
    return hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def _height_doc(h):
    return "inf" if h == INFINITY else h


def _height_from(x):
    if x == "inf":
        return INFINITY
    if isinstance(x, int) and not isinstance(x, bool) and x >= 0:
        return x
    raise ParseError(f"bad height {x!r}")


def _entry_doc(e):
    return "none" if e is None else _height_doc(e)


def _entry_from(x):
    if x in ("none", -1, None):
        return None
    return _height_from(x)


def _prime_doc(p):
    return p


def _prime_from(x):
    if x == ANY_PRIME:
        return ANY_PRIME
    if isinstance(x, int) and not isinstance(x, bool) and _is_prime(x):
        return x
    raise ParseError(f"bad prime {x!r}")


# -- groups and lattices -------------------------------------------------------


def group_doc(G: FiniteGroup) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "group",
        "name": G.name,
        "order": G.order,
        "identity": G.identity,
        "table": [list(row) for row in G.table],
    }


def lattice_doc(L: SubgroupLattice) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "subgroup-lattice",
        "group": {"name": L.group.name, "order": L.group.order},
        "subgroups": [
            {
                "name": L.names[s.lattice_id],
                "order": s.order,
                "members": list(s.members),
                "class": L.class_of[s.lattice_id],
                "normal": L.is_normal(s.lattice_id),
            }
            for s in L.subgroups
        ],
        "classes": [[L.names[i] for i in cls] for cls in L.classes],
        "covers": [[L.names[k], L.names[h]] for k, h in L.covers()],
    }


def _subgroup_id(L: SubgroupLattice, name) -> int:
    if not isinstance(name, str):
        raise ParseError(f"subgroup reference must be a canonical name, got {name!r}")
    try:
        return L.by_name(name).lattice_id
    except KeyError:
        raise ParseError(f"unknown subgroup {name!r} on {L.group.name}") from None


# -- transfer systems -----------------------------------------------------------


def system_doc(R: TransferSystem) -> dict:
    L = R.lattice
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "transfer-system",
        "group": L.group.name,
        "pairs": [[L.names[k], L.names[h]] for k, h in R.sorted_pairs()],
    }


def parse_system(L: SubgroupLattice, spec) -> TransferSystem:
    """Build a transfer system from a keyword or a pair-list document.

    Listed pairs are taken as generators and closed, so any pair list is
    accepted and the result is always a valid system; documents emitted by
    :func:`system_doc` parse back to the system they came from.
    """
    if spec == "complete":
        return complete_system(L)
    if spec == "trivial":
        return trivial_system(L)
    if not isinstance(spec, dict):
        raise ParseError(f"operad spec must be a keyword or document, got {spec!r}")
    pairs = spec.get("pairs")
    if not isinstance(pairs, list):
        raise ParseError("transfer-system document needs a 'pairs' list")
    seed = []
    for item in pairs:
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError(f"each pair must be [K, H], got {item!r}")
        kid, hid = _subgroup_id(L, item[0]), _subgroup_id(L, item[1])
        if not L.leq(kid, hid):
            raise ParseError(f"pair {item!r} is not nested")
        seed.append((kid, hid))
    return close_transfer_system(L, seed)


def enumeration_doc(L: SubgroupLattice, enum: TransferEnumeration) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "transfer-enumeration",
        "group": L.group.name,
        "count": len(enum.systems),
        "systems": [
            {
                "index": i,
                "pairs": [[L.names[k], L.names[h]] for k, h in s.sorted_pairs()],
            }
            for i, s in enumerate(enum.systems)
        ],
        "containment": [
            [j for j in range(len(enum.systems)) if enum.leq[i][j]]
            for i in range(len(enum.systems))
        ],
    }


# -- vanishing loci --------------------------------------------------------------


def locus_doc(VL: VanishingLocus) -> dict:
    L = VL.lattice
    entries = []
    for c in range(len(L.classes)):
        rep = L.names[L.classes[c][0]]
        zero = VL.contains(c, 0, ANY_PRIME)
        used_zero = False
        concrete = sorted(
            {q.prime for q in VL.primes if q.subgroup_class == c and q.prime != ANY_PRIME}
        )
        for p in concrete:
            if BalmerPrime(c, INFINITY, p) in VL.primes:
                entries.append({"subgroup": rep, "prime": p, "heights": "all"})
                used_zero = True
                continue
            finite = sorted(
                q.height
                for q in VL.primes
                if q.subgroup_class == c and q.prime == p and q.height != INFINITY
            )
            if zero and finite == list(range(1, len(finite) + 1)):
                entries.append(
                    {"subgroup": rep, "prime": p, "heights": f"0..{len(finite)}"}
                )
                used_zero = True
            else:
                entries.append({"subgroup": rep, "prime": p, "heights": finite})
        if zero and not used_zero:
            entries.append({"subgroup": rep, "prime": "any", "heights": [0]})
    entries.sort(key=lambda e: (e["subgroup"], str(e["prime"])))
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "vanishing-locus",
        "group": L.group.name,
        "entries": entries,
    }


def _heights_from(field) -> list:
    if isinstance(field, str):
        if field == "all":
            return [INFINITY]
        lo, sep, hi = field.partition("..")
        if sep:
            try:
                a, b = int(lo), int(hi)
            except ValueError:
                raise ParseError(f"bad height range {field!r}") from None
            if not 0 <= a <= b:
                raise ParseError(f"bad height range {field!r}")
            return list(range(a, b + 1))
        raise ParseError(f"bad heights field {field!r}")
    if isinstance(field, list):
        return [_height_from(x) for x in field]
    return [_height_from(field)]


def parse_locus(L: SubgroupLattice, doc) -> VanishingLocus:
    if not isinstance(doc, dict) or not isinstance(doc.get("entries"), list):
        raise ParseError("vanishing-locus document needs an 'entries' list")
    primes = []
    for entry in doc["entries"]:
        if not isinstance(entry, dict):
            raise ParseError(f"bad locus entry {entry!r}")
        sid = _subgroup_id(L, entry.get("subgroup"))
        c = L.class_of[sid]
        p = _prime_from(entry.get("prime"))
        heights = _heights_from(entry.get("heights"))
        for h in heights:
            if h == 0:
                primes.append(balmer_prime(c, 0, ANY_PRIME))
            elif p == ANY_PRIME:
                raise ParseError(
                    f"prime 'any' only carries height 0, got {_height_doc(h)!r}"
                )
            else:
                primes.append(balmer_prime(c, h, p))
    return vanishing_locus(L, primes)


def locus_validation_doc(VL: VanishingLocus, violations) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "locus-validation",
        "group": VL.lattice.group.name,
        "ok": not violations,
        "violations": [[v.axiom, repr(v.witness)] for v in violations],
    }


# -- height vectors --------------------------------------------------------------


def heights_doc(v: HeightVector) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "height-vector",
        "p": v.p,
        "ell": [_entry_doc(e) for e in v.entries],
    }


def parse_heights(doc) -> HeightVector:
    if not isinstance(doc, dict):
        raise ParseError("height-vector document must be an object")
    p = doc.get("p")
    ell = doc.get("ell")
    if not isinstance(p, int) or not isinstance(ell, list) or not ell:
        raise ParseError("height-vector document needs 'p' and a nonempty 'ell' list")
    try:
        return HeightVector(p, tuple(_entry_from(x) for x in ell))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_heights_inline(text: str) -> HeightVector:
    """Parse the inline form ``P,(e0,e1,...)`` with entries int, inf or none."""
    p_str, sep, rest = text.partition(",")
    rest = rest.strip()
    if not sep or not rest.startswith("(") or not rest.endswith(")"):
        raise ParseError(f"expected 'P,(e0,e1,...)', got {text!r}")
    try:
        p = int(p_str)
    except ValueError:
        raise ParseError(f"bad prime {p_str!r}") from None
    entries = []
    for tok in rest[1:-1].split(","):
        tok = tok.strip()
        if tok in ("none", "-1"):
            entries.append(None)
        elif tok == "inf":
            entries.append(INFINITY)
        else:
            try:
                entries.append(int(tok))
            except ValueError:
                raise ParseError(f"bad height entry {tok!r}") from None
    if not entries or entries == [""]:
        raise ParseError(f"empty entry list in {text!r}")
    try:
        return HeightVector(p, tuple(entries))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# -- reports ----------------------------------------------------------------------


def _prime_entry(L: SubgroupLattice, q: BalmerPrime) -> dict:
    return {
        "subgroup": L.names[L.classes[q.subgroup_class][0]],
        "height": _height_doc(q.height),
        "prime": _prime_doc(q.prime),
    }


def decision_doc(
    d: Decision,
    L: SubgroupLattice,
    R: TransferSystem,
    VL: VanishingLocus,
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "decision-report",
        "group": L.group.name,
        "verdict": d.verdict.value,
        "witnesses": [
            {
                "norm_source": L.names[w.norm_source],
                "norm_target": L.names[w.norm_target],
                "subgroup": L.names[w.subgroup],
                "prime": _prime_entry(L, w.prime),
                "checked": [[rep, L.names[cut]] for rep, cut in w.checked],
            }
            for w in d.witnesses
        ],
        "inputs": {
            "group": {"name": L.group.name, "digest": digest(group_doc(L.group))},
            "operad": {"digest": digest(system_doc(R))},
            "locus": {"digest": digest(locus_doc(VL))},
        },
    }


def cross_validation_doc(report: CrossValidationReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "cross-validation-report",
        "n": report.n,
        "p": report.p,
        "height_bound": report.height_bound,
        "vectors_checked": report.vectors_checked,
        "norm_comparisons": report.norm_comparisons,
        "operad_comparisons": report.operad_comparisons,
        "ok": report.ok,
        "disagreements": [
            {
                "entries": [_entry_doc(e) for e in d.entries],
                "check": d.check,
                "engine_certified": d.engine_certified,
                "inequality_holds": d.inequality_holds,
            }
            for d in report.disagreements
        ],
    }


def heights_enumeration_doc(
    vectors, n: int, height_bound: int, include_infinity: bool, p: int
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "commutative-height-vectors",
        "n": n,
        "height_bound": height_bound,
        "include_infinity": include_infinity,
        "p": p,
        "count": len(vectors),
        "vectors": [
            {"ell": [_entry_doc(e) for e in v.entries], "sentinel": v.has_sentinel()}
            for v in vectors
        ],
    }
