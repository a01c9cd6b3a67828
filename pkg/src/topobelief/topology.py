"""Finite topological spaces on carriers of at most 16 points.

Subsets of the carrier are plain ints used as bitmasks (world i is bit i).
A topology stores its full open-set family explicitly, deduplicated and in
canonical order (cardinality, then numeric bit pattern), so dumps and
reports are deterministic.  A lazily cached minimal-open-neighborhood
table backs the interior/closure operators; every finite space is
Alexandroff, so the table always exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

MAX_WORLDS = 16
ENUMERATION_MAX = 4


class TopologyError(Exception):
    pass


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def format_mask(mask: int) -> str:
    return "{" + ",".join(str(i) for i in bits(mask)) + "}"


def _canon(opens: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(opens), key=lambda m: (m.bit_count(), m)))


@dataclass(frozen=True)
class TopologyViolation:
    """Why a family of subsets fails to be a topology."""

    kind: str  # missing-empty | missing-carrier | missing-union | missing-intersection
    left: int | None
    right: int | None
    missing: int

    def __str__(self) -> str:
        if self.kind == "missing-empty":
            return "violation: empty set missing"
        if self.kind == "missing-carrier":
            return "violation: carrier missing"
        op = "U" if self.kind == "missing-union" else "n"
        return (
            f"violation: {format_mask(self.left)} {op} {format_mask(self.right)}"
            f" = {format_mask(self.missing)} missing"
        )


def find_violation(n: int, opens: Iterable[int]) -> TopologyViolation | None:
    """First reason the family is not a topology, or None when it is one.

    Checks membership of the empty set and the carrier, then scans pairs in
    canonical order for a missing union or intersection.
    """
    family = set(opens)
    if 0 not in family:
        return TopologyViolation("missing-empty", None, None, 0)
    if full_mask(n) not in family:
        return TopologyViolation("missing-carrier", None, None, full_mask(n))
    ordered = _canon(family)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            if a | b not in family:
                return TopologyViolation("missing-union", a, b, a | b)
            if a & b not in family:
                return TopologyViolation("missing-intersection", a, b, a & b)
    return None


def verify(t: "Topology") -> TopologyViolation | None:
    """Re-check a topology's family against the closure conditions."""
    return find_violation(t.n, t.opens)


class Topology:
    """Carrier size plus explicit open-set family; immutable once built."""

    __slots__ = ("n", "opens", "__dict__")

    def __init__(self, n: int, opens: tuple[int, ...]):
        # private; use from_opens / generate_from_subbasis for validated input
        self.n = n
        self.opens = opens

    @classmethod
    def from_opens(cls, n: int, opens: Iterable[int]) -> "Topology":
        _check_carrier(n)
        opens = list(opens)
        for o in opens:
            _check_subset(n, o)
        violation = find_violation(n, opens)
        if violation is not None:
            raise TopologyError(str(violation))
        return cls(n, _canon(opens))

    @classmethod
    def discrete(cls, n: int) -> "Topology":
        _check_carrier(n)
        return cls(n, _canon(range(1 << n)))

    @classmethod
    def indiscrete(cls, n: int) -> "Topology":
        _check_carrier(n)
        return cls(n, (0, full_mask(n)))

    @property
    def full(self) -> int:
        return full_mask(self.n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Topology) and self.n == other.n and self.opens == other.opens
        )

    def __hash__(self) -> int:
        return hash((self.n, self.opens))

    def __repr__(self) -> str:
        body = ",".join(format_mask(o) for o in self.opens)
        return f"Topology(n={self.n}, opens=[{body}])"

    def is_open(self, a: int) -> bool:
        _check_subset(self.n, a)
        return a in self._open_set

    @cached_property
    def _open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    @cached_property
    def min_neighborhoods(self) -> tuple[int, ...]:
        """Smallest open around each point (finite spaces are Alexandroff)."""
        out = []
        for x in range(self.n):
            nbhd = self.full
            bit = 1 << x
            for o in self.opens:
                if o & bit:
                    nbhd &= o
            out.append(nbhd)
        return tuple(out)

    def interior(self, a: int) -> int:
        """Largest open set contained in a."""
        _check_subset(self.n, a)
        m = 0
        for x, nbhd in enumerate(self.min_neighborhoods):
            if nbhd & ~a == 0:
                m |= 1 << x
        return m

    def closure(self, a: int) -> int:
        """Complement of the interior of the complement."""
        _check_subset(self.n, a)
        return self.full & ~self.interior(self.full & ~a)

    def is_dense_in(self, a: int, u: int) -> bool:
        """Whether u is contained in the closure of a."""
        _check_subset(self.n, a)
        _check_subset(self.n, u)
        return u & ~self.closure(a) == 0

    def is_nowhere_dense(self, a: int) -> bool:
        """Whether the closure of a has empty interior."""
        return self.interior(self.closure(a)) == 0

    def almost_subset(self, a: int, b: int) -> bool:
        """a minus b is nowhere dense ('almost all' of a lies in b)."""
        _check_subset(self.n, a)
        _check_subset(self.n, b)
        return self.is_nowhere_dense(a & ~b)


def _check_carrier(n: int) -> None:
    if not 1 <= n <= MAX_WORLDS:
        raise TopologyError(f"carrier size {n} outside 1..{MAX_WORLDS}")


def _check_subset(n: int, a: int) -> None:
    if a < 0 or a & ~full_mask(n):
        raise TopologyError(f"subset {bin(a)} out of carrier range 0..{n - 1}")


def generate_from_subbasis(n: int, subbasis: Iterable[int]) -> Topology:
    """Smallest topology containing the subbasis.

    Starts from the subbasis plus the empty set and the carrier and closes
    under pairwise intersection and union to a fixpoint; on a finite
    carrier this captures arbitrary unions as well.
    """
    _check_carrier(n)
    family = {0, full_mask(n)}
    for s in subbasis:
        _check_subset(n, s)
        family.add(s)
    queue = list(family)
    while queue:
        a = queue.pop()
        for b in list(family):
            for c in (a | b, a & b):
                if c not in family:
                    family.add(c)
                    queue.append(c)
    return Topology(n, _canon(family))


def _preorders(n: int) -> Iterator[tuple[int, ...]]:
    """All reflexive transitive relations as per-point successor masks."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    base = [1 << x for x in range(n)]
    for choice in range(1 << len(pairs)):
        succ = base[:]
        for k, (x, y) in enumerate(pairs):
            if choice >> k & 1:
                succ[x] |= 1 << y
        if _is_transitive(succ):
            yield tuple(succ)


def _is_transitive(succ: list[int]) -> bool:
    for x in range(len(succ)):
        reach = 0
        m = succ[x]
        while m:
            y = (m & -m).bit_length() - 1
            reach |= succ[y]
            m &= m - 1
        if reach & ~succ[x]:
            return False
    return True


def upset_topology(succ: tuple[int, ...]) -> tuple[int, ...]:
    """Open-set family of a preorder: subsets closed under successors."""
    n = len(succ)
    opens = []
    for s in range(1 << n):
        m = s
        ok = True
        while m:
            x = (m & -m).bit_length() - 1
            if succ[x] & ~s:
                ok = False
                break
            m &= m - 1
        if ok:
            opens.append(s)
    return _canon(opens)


def enumerate_topologies(n: int) -> Iterator[Topology]:
    """Every labeled topology on n points, exactly once, in canonical order.

    Finite topologies are Alexandroff, so they are exactly the up-set
    families of reflexive transitive relations; the n <= 4 gate keeps the
    sweep inside the exhaustive-testing budget.
    """
    if not 1 <= n <= ENUMERATION_MAX:
        raise TopologyError(f"exhaustive enumeration gated at n <= {ENUMERATION_MAX}")
    families = {upset_topology(succ) for succ in _preorders(n)}
    for opens in sorted(families, key=lambda fam: (len(fam), fam)):
        yield Topology(n, opens)
