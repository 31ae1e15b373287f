"""Exact arithmetic for small finite groups.

Groups are stored as full multiplication tables over element indices
0..order-1, and subgroups as bitmasks over those indices.  Everything is
computed by exhaustive enumeration; the intended scale is |G| <= 64, which
is where all the downstream lattice and double-coset machinery lives.

Conventions, fixed once and used everywhere:

* products compose left to right, so for permutation groups ``mul(a, b)``
  means "apply a, then b";
* conjugation is ``h^g = g^-1 h g``, and ``K^g = {g^-1 k g : k in K}``;
* subgroups of a lattice are ordered by (order, member tuple) and named
  ``C{order}#{i}`` with ``i`` counting subgroups of that order.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass, field


class GroupError(Exception):
    """Base class for errors raised by this module."""


class InvalidTable(GroupError):
    """A multiplication table violates a group axiom."""


class UnsupportedSpec(GroupError):
    """A group specification string is not recognised."""


class GroupTooLarge(GroupError):
    """Group order exceeds the configured enumeration bound."""


class NotSubgroupOfAmbient(GroupError):
    """Double-coset factors must lie inside the ambient subgroup."""


DEFAULT_MAX_ORDER = 64


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(eq=False)
class FiniteGroup:
    """A finite group given by its full multiplication table."""

    name: str
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, a: int, g: int) -> int:
        """g^-1 * a * g."""
        t = self.table
        return t[t[self.inverse[g]][a]][g]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def conj_mask(self, mask: int, g: int) -> int:
        out = 0
        for x in _bits(mask):
            out |= 1 << self.conj(x, g)
        return out

    def generated_mask(self, mask: int) -> int:
        """Bitmask of the subgroup generated by the elements of ``mask``."""
        members = 1 << self.identity
        gens = _bits(mask)
        frontier = [self.identity]
        table = self.table
        while frontier:
            nxt = []
            for x in frontier:
                row = table[x]
                for g in gens:
                    y = row[g]
                    b = 1 << y
                    if not members & b:
                        members |= b
                        nxt.append(y)
            frontier = nxt
        return members

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def _validated_group(name: str, rows) -> FiniteGroup:
    n = len(rows)
    if n == 0:
        raise InvalidTable("empty multiplication table")
    table = tuple(tuple(int(x) for x in row) for row in rows)
    for i, row in enumerate(table):
        if len(row) != n:
            raise InvalidTable(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise InvalidTable(f"entry {x} in row {i} out of range 0..{n - 1}")
    idents = [
        e
        for e in range(n)
        if all(table[e][j] == j for j in range(n))
        and all(table[i][e] == i for i in range(n))
    ]
    if len(idents) != 1:
        raise InvalidTable("table has no unique two-sided identity")
    e = idents[0]
    for a in range(n):
        ta = table[a]
        for b in range(n):
            tab = table[ta[b]]
            tb = table[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    raise InvalidTable(f"associativity fails at ({a}, {b}, {c})")
    inverse = []
    for a in range(n):
        inv_a = next(
            (b for b in range(n) if table[a][b] == e and table[b][a] == e), None
        )
        if inv_a is None:
            raise InvalidTable(f"element {a} has no two-sided inverse")
        inverse.append(inv_a)
    return FiniteGroup(name, n, table, e, tuple(inverse))


# -- constructors ------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise UnsupportedSpec(f"cyclic order must be >= 1, got {n}")
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    return _validated_group(f"C{n}", rows)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order 2m.

    Element i + m*j encodes the word r^i s^j with r the rotation of order m.
    """
    if order < 2 or order % 2:
        raise UnsupportedSpec(f"dihedral order must be even and >= 2, got {order}")
    m = order // 2

    def mul(a, b):
        i1, j1 = a % m, a // m
        i2, j2 = b % m, b // m
        i = (i1 + (-i2 if j1 else i2)) % m
        return i + m * ((j1 + j2) % 2)

    rows = [[mul(a, b) for b in range(order)] for a in range(order)]
    return _validated_group(f"D{order}", rows)


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise UnsupportedSpec(f"symmetric degree must be 1..5, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}

    def mul(a, b):
        pa, pb = perms[a], perms[b]
        return index[tuple(pb[pa[x]] for x in range(n))]

    order = len(perms)
    rows = [[mul(a, b) for b in range(order)] for a in range(order)]
    return _validated_group(f"S{n}", rows)


# axis products for the unit quaternions: _QMUL[a][b] = (sign flip, axis)
_QMUL = (
    ((0, 0), (0, 1), (0, 2), (0, 3)),
    ((0, 1), (1, 0), (0, 3), (1, 2)),
    ((0, 2), (1, 3), (1, 0), (0, 1)),
    ((0, 3), (0, 2), (1, 1), (1, 0)),
)


def quaternion() -> FiniteGroup:
    """The quaternion group Q8 as {+-1, +-i, +-j, +-k}."""

    def mul(a, b):
        s1, a1 = a // 4, a % 4
        s2, a2 = b // 4, b % 4
        flip, axis = _QMUL[a1][a2]
        return axis + 4 * ((s1 + s2 + flip) % 2)

    rows = [[mul(a, b) for b in range(8)] for a in range(8)]
    return _validated_group("Q8", rows)


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    if len(groups) < 2:
        raise UnsupportedSpec("direct product needs at least two factors")
    out = groups[0]
    for g in groups[1:]:
        out = _binary_product(out, g)
    return out


def _binary_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    n = a.order * b.order
    nb = b.order
    rows = [
        [a.mul(x // nb, y // nb) * nb + b.mul(x % nb, y % nb) for y in range(n)]
        for x in range(n)
    ]
    return _validated_group(f"{a.name}x{b.name}", rows)


def from_table(rows, name: str = "G") -> FiniteGroup:
    """Build and fully validate a group from an explicit table."""
    return _validated_group(name, rows)


def from_table_csv(path: str, name: str | None = None) -> FiniteGroup:
    with open(path, newline="") as fh:
        rows = [[int(x) for x in row] for row in csv.reader(fh) if row]
    if name is None:
        base = path.replace("\\", "/").rsplit("/", 1)[-1]
        name = base.rsplit(".", 1)[0] or "G"
    return from_table(rows, name)


def build_group(spec: str) -> FiniteGroup:
    """Build a group from a spec string.

    Grammar: ``atom ('*' atom)*`` with atoms ``cyclic:N``, ``dihedral:N``
    (N the order), ``symmetric:N`` (N <= 5), ``quaternion:8`` and
    ``table:PATH`` (CSV of element indices, row i column j = i*j).
    """
    parts = [p.strip() for p in spec.split("*")]
    if any(not p for p in parts):
        raise UnsupportedSpec(f"malformed group spec {spec!r}")
    groups = [_atom(p) for p in parts]
    return groups[0] if len(groups) == 1 else direct_product(*groups)


def _atom(s: str) -> FiniteGroup:
    kind, sep, arg = s.partition(":")
    if kind == "cyclic" and sep:
        return cyclic(_int_arg(s, arg))
    if kind == "dihedral" and sep:
        return dihedral(_int_arg(s, arg))
    if kind == "symmetric" and sep:
        return symmetric(_int_arg(s, arg))
    if kind == "quaternion":
        if arg not in ("", "8"):
            raise UnsupportedSpec(f"only quaternion:8 is supported, got {s!r}")
        return quaternion()
    if kind == "table" and sep:
        return from_table_csv(arg)
    raise UnsupportedSpec(f"unrecognised group spec {s!r}")


def _int_arg(spec: str, arg: str) -> int:
    try:
        return int(arg)
    except ValueError:
        raise UnsupportedSpec(f"bad numeric argument in {spec!r}") from None


# -- subgroup lattice ---------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """One member of a subgroup lattice, identified by a bitmask."""

    lattice_id: int
    mask: int
    order: int

    @property
    def members(self) -> tuple[int, ...]:
        return _bits(self.mask)

    def __repr__(self) -> str:
        return f"Subgroup(id={self.lattice_id}, order={self.order}, members={self.members})"


@dataclass(eq=False)
class SubgroupLattice:
    """The complete poset of subgroups of a finite group.

    Subgroups are sorted by (order, member tuple); the position in
    ``subgroups`` is the stable lattice id.  Conjugacy classes are sorted by
    their smallest member id, which is also the chosen class representative.
    """

    group: FiniteGroup
    subgroups: tuple[Subgroup, ...]
    names: tuple[str, ...]
    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    _id_of_mask: dict[int, int] = field(repr=False)
    _id_of_name: dict[str, int] = field(repr=False)
    _conj_cache: dict[tuple[int, int], int] = field(default_factory=dict, repr=False)
    _dc_cache: dict[tuple[int, int, int], tuple[tuple[int, ...], ...]] = field(
        default_factory=dict, repr=False
    )

    def __len__(self) -> int:
        return len(self.subgroups)

    @property
    def bottom(self) -> Subgroup:
        return self.subgroups[0]

    @property
    def top(self) -> Subgroup:
        return self.subgroups[-1]

    def by_name(self, name: str) -> Subgroup:
        try:
            return self.subgroups[self._id_of_name[name]]
        except KeyError:
            raise KeyError(f"no subgroup named {name!r}") from None

    def id_of_mask(self, mask: int) -> int:
        return self._id_of_mask[mask]

    def leq(self, kid: int, hid: int) -> bool:
        return self.subgroups[kid].mask & ~self.subgroups[hid].mask == 0

    def conj_id(self, sid: int, g: int) -> int:
        key = (sid, g)
        out = self._conj_cache.get(key)
        if out is None:
            out = self._id_of_mask[self.group.conj_mask(self.subgroups[sid].mask, g)]
            self._conj_cache[key] = out
        return out

    def intersect_ids(self, aid: int, bid: int) -> int:
        return self._id_of_mask[self.subgroups[aid].mask & self.subgroups[bid].mask]

    def class_members(self, sid: int) -> tuple[int, ...]:
        return self.classes[self.class_of[sid]]

    def is_normal(self, sid: int) -> bool:
        return len(self.class_members(sid)) == 1

    def covers(self) -> tuple[tuple[int, int], ...]:
        """Covering relations (kid, hid) of the inclusion order."""
        n = len(self.subgroups)
        out = []
        for k in range(n):
            for h in range(n):
                if k == h or not self.leq(k, h):
                    continue
                if any(
                    m != k and m != h and self.leq(k, m) and self.leq(m, h)
                    for m in range(n)
                ):
                    continue
                out.append((k, h))
        return tuple(sorted(out))

    def double_coset_blocks(
        self, kid: int, hid: int, aid: int
    ) -> tuple[tuple[int, ...], ...]:
        """Partition of A into K\\A/H double cosets, each block sorted.

        Blocks are ordered by their minimal element, which is the canonical
        representative.
        """
        key = (kid, hid, aid)
        out = self._dc_cache.get(key)
        if out is not None:
            return out
        K, H, A = self.subgroups[kid], self.subgroups[hid], self.subgroups[aid]
        if K.mask & ~A.mask or H.mask & ~A.mask:
            raise NotSubgroupOfAmbient(
                f"double cosets need K, H <= A; got ids {kid}, {hid} inside {aid}"
            )
        table = self.group.table
        kmem, hmem = K.members, H.members
        seen = 0
        blocks = []
        for a in A.members:
            if seen >> a & 1:
                continue
            block = 0
            for k in kmem:
                ka = table[k][a]
                row = table[ka]
                for h in hmem:
                    block |= 1 << row[h]
            seen |= block
            blocks.append(_bits(block))
        out = tuple(blocks)
        self._dc_cache[key] = out
        return out


def subgroup_lattice(
    G: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER
) -> SubgroupLattice:
    """Enumerate every subgroup of G.

    Starts from the cyclic subgroups and closes under joins; every subgroup
    arises by adjoining cyclic generators one at a time, so the sweep is
    complete.
    """
    if G.order > max_order:
        raise GroupTooLarge(f"|{G.name}| = {G.order} exceeds bound {max_order}")
    trivial = 1 << G.identity
    cyclics = sorted({G.generated_mask(1 << g) for g in range(G.order)})
    masks = {trivial} | set(cyclics)
    frontier = sorted(masks)
    while frontier:
        fresh = set()
        for u in frontier:
            for c in cyclics:
                if c & ~u:
                    v = G.generated_mask(u | c)
                    if v not in masks:
                        masks.add(v)
                        fresh.add(v)
        frontier = sorted(fresh)

    ordered = sorted(masks, key=lambda m: (m.bit_count(), _bits(m)))
    subgroups = tuple(
        Subgroup(i, m, m.bit_count()) for i, m in enumerate(ordered)
    )
    id_of_mask = {s.mask: s.lattice_id for s in subgroups}

    per_order: dict[int, int] = {}
    names = []
    for s in subgroups:
        idx = per_order.get(s.order, 0)
        per_order[s.order] = idx + 1
        names.append(f"C{s.order}#{idx}")

    unassigned = set(range(len(subgroups)))
    classes = []
    class_of = [0] * len(subgroups)
    while unassigned:
        seed = min(unassigned)
        orbit = {seed}
        stack = [seed]
        while stack:
            sid = stack.pop()
            mask = subgroups[sid].mask
            for g in range(G.order):
                other = id_of_mask[G.conj_mask(mask, g)]
                if other not in orbit:
                    orbit.add(other)
                    stack.append(other)
        orbit_t = tuple(sorted(orbit))
        for sid in orbit_t:
            class_of[sid] = len(classes)
        classes.append(orbit_t)
        unassigned -= orbit

    return SubgroupLattice(
        group=G,
        subgroups=subgroups,
        names=tuple(names),
        class_of=tuple(class_of),
        classes=tuple(classes),
        _id_of_mask=id_of_mask,
        _id_of_name={n: i for i, n in enumerate(names)},
    )


# -- lattice operations -------------------------------------------------------


def conjugate_subgroup(L: SubgroupLattice, H: Subgroup, g: int) -> Subgroup:
    """The lattice member equal to H^g = g^-1 H g."""
    return L.subgroups[L.conj_id(H.lattice_id, g)]


def intersect(L: SubgroupLattice, H1: Subgroup, H2: Subgroup) -> Subgroup:
    return L.subgroups[L.intersect_ids(H1.lattice_id, H2.lattice_id)]


def is_subconjugate(
    L: SubgroupLattice, K: Subgroup, H: Subgroup
) -> tuple[bool, int | None]:
    """Whether some conjugate K^g lies in H, with the least witness g."""
    for g in range(L.group.order):
        if L.group.conj_mask(K.mask, g) & ~H.mask == 0:
            return True, g
    return False, None


def double_cosets(
    L: SubgroupLattice, K: Subgroup, H: Subgroup, A: Subgroup
) -> tuple[int, ...]:
    """Canonical representatives of K\\A/H, in increasing order."""
    blocks = L.double_coset_blocks(K.lattice_id, H.lattice_id, A.lattice_id)
    return tuple(b[0] for b in blocks)
