"""Relational frames for the pure belief fragment and their topology bridge.

A belief frame (serial + transitive + Euclidean) decomposes into disjoint
brushes: cells of the derived equivalence x ~ y iff some z has xRz and
yRz, each cell relating totally onto its nonempty final cluster of
reflexive points.  The reflexive closure's successor sets form a basis
whose generated Alexandroff topology interprets the same belief formulas
at scenarios (x, cell-of-x) under strong semantics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from . import formula as fm
from .formula import Formula
from .model import SubsetModel, EDScenario, atom_names
from .semantics import Semantics, satisfies
from .topology import bits, format_mask, full_mask, generate_from_subbasis


class RelationalError(Exception):
    pass


@dataclass(frozen=True)
class RelationalModel:
    """Worlds 0..n-1, a binary relation, and a valuation atom -> mask."""

    n: int
    rel: frozenset[tuple[int, int]]
    valuation: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for x, y in self.rel:
            if not (0 <= x < self.n and 0 <= y < self.n):
                raise RelationalError(f"pair ({x},{y}) out of range")
        full = full_mask(self.n)
        for atom, subset in self.valuation.items():
            if subset < 0 or subset & ~full:
                raise RelationalError(f"valuation of {atom!r} out of carrier range")

    def successors(self, x: int) -> int:
        m = 0
        for a, b in self.rel:
            if a == x:
                m |= 1 << b
        return m

    def successor_masks(self) -> list[int]:
        out = [0] * self.n
        for a, b in self.rel:
            out[a] |= 1 << b
        return out


@dataclass(frozen=True)
class FrameProperties:
    serial: bool
    transitive: bool
    euclidean: bool
    belief_frame: bool
    brush: bool
    final_cluster: int | None  # mask, when the frame is a brush
    pin: bool


def classify(m: RelationalModel) -> FrameProperties:
    """Direct quantifier checks for the frame conditions."""
    succ = m.successor_masks()
    serial = all(s != 0 for s in succ)
    transitive = True
    euclidean = True
    for x in range(m.n):
        reach = 0
        rest = succ[x]
        while rest:
            y = (rest & -rest).bit_length() - 1
            reach |= succ[y]
            rest &= rest - 1
        if reach & ~succ[x]:
            transitive = False
        rest = succ[x]
        while rest:
            y = (rest & -rest).bit_length() - 1
            if succ[x] & ~succ[y]:
                euclidean = False
            rest &= rest - 1
    belief = serial and transitive and euclidean
    cluster = succ[0] if m.n else 0
    brush = cluster != 0 and all(s == cluster for s in succ)
    pin = brush and m.n - cluster.bit_count() == 1
    return FrameProperties(
        serial, transitive, euclidean, belief, brush, cluster if brush else None, pin
    )


@dataclass(frozen=True)
class BrushComponent:
    cell: int  # mask of the ~-equivalence class
    final_cluster: int  # mask of its reflexive points

    def __str__(self) -> str:
        return f"cell={format_mask(self.cell)} cluster={format_mask(self.final_cluster)}"


@dataclass(frozen=True)
class BrushDecomposition:
    components: tuple[BrushComponent, ...]

    def cell_of(self, x: int) -> int:
        for comp in self.components:
            if comp.cell >> x & 1:
                return comp.cell
        raise RelationalError(f"world {x} not covered")

    def reconstruct(self) -> frozenset[tuple[int, int]]:
        rel = set()
        for comp in self.components:
            for x in bits(comp.cell):
                for y in bits(comp.final_cluster):
                    rel.add((x, y))
        return frozenset(rel)


def decompose(m: RelationalModel) -> BrushDecomposition:
    """Split a belief frame into brush components.

    x ~ y iff some z has xRz and yRz; the cells are the ~-classes and each
    final cluster collects the cell's reflexive points.  Components are
    reported sorted by least world.
    """
    props = classify(m)
    if not props.belief_frame:
        raise RelationalError("not a belief frame (needs serial, transitive, Euclidean)")
    succ = m.successor_masks()
    assigned = 0
    components = []
    for x in range(m.n):
        if assigned >> x & 1:
            continue
        cell = 0
        for y in range(m.n):
            if succ[x] & succ[y]:
                cell |= 1 << y
        cluster = 0
        for y in bits(cell):
            if succ[y] >> y & 1:
                cluster |= 1 << y
        components.append(BrushComponent(cell, cluster))
        assigned |= cell
    return BrushDecomposition(tuple(components))


def to_subset_model(m: RelationalModel) -> SubsetModel:
    """Topology generated by the reflexive-closure successor sets.

    Needs a transitive relation; each closed successor set then comes out
    as the smallest open neighborhood of its world.
    """
    if not classify(m).transitive:
        raise RelationalError("frame-to-topology construction needs a transitive relation")
    succ = m.successor_masks()
    basis = [succ[x] | (1 << x) for x in range(m.n)]
    topology = generate_from_subbasis(m.n, basis)
    return SubsetModel(topology, dict(m.valuation))


def eval_relational(m: RelationalModel, x: int, f: Formula) -> bool:
    """Standard Kripke evaluation of a pure-belief formula at world x."""
    if not 0 <= x < m.n:
        raise RelationalError(f"world {x} out of range")
    bad = fm.modalities(f) - {"B"}
    if bad:
        raise RelationalError(f"relational evaluation is for the B fragment only (found {sorted(bad)})")
    return _eval(m, m.successor_masks(), x, f)


def _eval(m: RelationalModel, succ: list[int], x: int, f: Formula) -> bool:
    if isinstance(f, fm.Atom):
        return bool(m.valuation.get(f.name, 0) >> x & 1)
    if isinstance(f, fm.Top):
        return True
    if isinstance(f, fm.Bot):
        return False
    if isinstance(f, fm.Not):
        return not _eval(m, succ, x, f.sub)
    if isinstance(f, fm.And):
        return _eval(m, succ, x, f.left) and _eval(m, succ, x, f.right)
    if isinstance(f, fm.Or):
        return _eval(m, succ, x, f.left) or _eval(m, succ, x, f.right)
    if isinstance(f, fm.Implies):
        return not _eval(m, succ, x, f.left) or _eval(m, succ, x, f.right)
    if isinstance(f, fm.Iff):
        return _eval(m, succ, x, f.left) == _eval(m, succ, x, f.right)
    if isinstance(f, fm.Bel):
        rest = succ[x]
        while rest:
            y = (rest & -rest).bit_length() - 1
            if not _eval(m, succ, y, f.sub):
                return False
            rest &= rest - 1
        return True
    raise RelationalError(f"cannot evaluate node {f!r}")


def check_modal_equivalence(m: RelationalModel, f: Formula) -> int | None:
    """Relational truth vs strong-semantics truth at (x, cell-of-x).

    Returns None when every world agrees, otherwise the first world where
    the two sides differ.
    """
    props = classify(m)
    if not props.belief_frame:
        raise RelationalError("bridge check needs a belief frame")
    dec = decompose(m)
    subset = to_subset_model(m)
    for x in range(m.n):
        relational = eval_relational(m, x, f)
        scenario = EDScenario(x, dec.cell_of(x))
        topological = satisfies(subset, scenario, f, Semantics.STRONG)
        if relational != topological:
            return x
    return None


def random_belief_frame(seed: int, n: int, atoms: int = 2) -> RelationalModel:
    """Seeded belief frame built directly from its brush decomposition.

    Draw a partition of the worlds into cells, a nonempty final cluster
    inside each, and set R = union of cell x cluster; this reaches exactly
    the belief frames, with no rejection sampling.
    """
    if n < 1:
        raise RelationalError("need at least one world")
    rng = random.Random(seed)
    cells: list[list[int]] = []
    for w in range(n):
        k = rng.randrange(len(cells) + 1)
        if k == len(cells):
            cells.append([w])
        else:
            cells[k].append(w)
    rel = set()
    for cell in cells:
        cluster = rng.sample(cell, rng.randrange(1, len(cell) + 1))
        for x in cell:
            for y in cluster:
                rel.add((x, y))
    valuation = {name: rng.getrandbits(n) for name in atom_names(atoms)}
    return RelationalModel(n, frozenset(rel), valuation)


def all_belief_frames(n: int, valuation: Mapping[str, int] | None = None):
    """Every belief frame on n worlds, via partitions and clusters (tests)."""
    if n > 5:
        raise RelationalError("exhaustive belief-frame sweep gated at n <= 5")
    for partition in _partitions(list(range(n))):
        for rel in _cluster_choices(partition):
            yield RelationalModel(n, frozenset(rel), dict(valuation or {}))


def _partitions(items: list[int]):
    if not items:
        yield []
        return
    head, *rest = items
    for sub in _partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[head] + sub[i]] + sub[i + 1 :]
        yield [[head]] + sub


def _cluster_choices(partition: list[list[int]]):
    if not partition:
        yield []
        return
    cell, *rest = partition
    for tail in _cluster_choices(rest):
        for cluster_mask in range(1, 1 << len(cell)):
            cluster = [cell[i] for i in bits(cluster_mask)]
            pairs = [(x, y) for x in cell for y in cluster]
            yield pairs + tail


def cell_scenario(m: RelationalModel, x: int) -> EDScenario:
    """The strong-semantics scenario matching relational evaluation at x."""
    return EDScenario(x, decompose(m).cell_of(x))

