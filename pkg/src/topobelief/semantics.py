"""The three satisfaction relations and validity/countermodel machinery.

Extensions are computed bottom-up over subformulas and memoized per range
pair.  The belief clause is implemented directly per semantics:

  strong  B phi holds on (x, U) iff the interior of phi's extension is
          dense in U (equivalently U is inside cl(int(ext)))
  ed      B phi holds on (x, U, V) iff V is inside phi's extension
  ae      B phi holds on (x, U, V) iff V minus phi's extension is nowhere
          dense (almost-all quantification)

K and box read the same in all three: truth everywhere on U, and
membership in the interior of the extension.  The translation through
K-dia-box is kept in the test suite as an independent oracle for the
strong belief clause; the two are never reconciled silently.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Literal

from . import formula as fm
from .formula import Formula
from .model import (
    DEFAULT_SCENARIO_BUDGET,
    BudgetError,
    EDScenario,
    ScenarioClass,
    SubsetModel,
    check_scenario,
    ed_scenarios,
    epistemic_scenarios,
    random_model,
    range_groups,
)
from .topology import enumerate_topologies


class SemanticsError(Exception):
    pass


class Semantics(Enum):
    STRONG = "strong"
    ED = "ed"
    AE = "ae"

    @property
    def needs_doxastic_range(self) -> bool:
        return self is not Semantics.STRONG


@lru_cache(maxsize=None)
def _contains_bel(f: Formula) -> bool:
    if isinstance(f, fm.Bel):
        return True
    if isinstance(f, (fm.Not, fm.K, fm.Box)):
        return _contains_bel(f.sub)
    if isinstance(f, (fm.And, fm.Or, fm.Implies, fm.Iff)):
        return _contains_bel(f.left) or _contains_bel(f.right)
    return False


def _interior(mnb: tuple[int, ...], a: int) -> int:
    m = 0
    for x, nb in enumerate(mnb):
        if nb & ~a == 0:
            m |= 1 << x
    return m


class Evaluator:
    """Reference extension computer for one model and one semantics."""

    def __init__(self, model: SubsetModel, kind: Semantics):
        self.model = model
        self.kind = kind
        self.top = model.topology
        self._mnb = model.topology.min_neighborhoods
        self._full = model.topology.full
        self._memo: dict = {}

    def extension(self, f: Formula, u: int, v: int | None = None) -> int:
        """Worlds of u satisfying f under the ranges (a subset mask)."""
        if self.kind.needs_doxastic_range:
            if v is None:
                raise SemanticsError(f"{self.kind.value} semantics needs a doxastic range")
        elif v is not None:
            raise SemanticsError("strong semantics takes no doxastic range")
        return self._ext(f, u, v)

    def _ext(self, f: Formula, u: int, v: int | None) -> int:
        key = (f, u, v if _contains_bel(f) else None)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = self._compute(f, u, v)
        self._memo[key] = out
        return out

    def _compute(self, f: Formula, u: int, v: int | None) -> int:
        if isinstance(f, fm.Atom):
            return self.model.atom_mask(f.name) & u
        if isinstance(f, fm.Top):
            return u
        if isinstance(f, fm.Bot):
            return 0
        if isinstance(f, fm.Not):
            return u & ~self._ext(f.sub, u, v)
        if isinstance(f, fm.And):
            return self._ext(f.left, u, v) & self._ext(f.right, u, v)
        if isinstance(f, fm.Or):
            return self._ext(f.left, u, v) | self._ext(f.right, u, v)
        if isinstance(f, fm.Implies):
            return (u & ~self._ext(f.left, u, v)) | self._ext(f.right, u, v)
        if isinstance(f, fm.Iff):
            a = self._ext(f.left, u, v)
            b = self._ext(f.right, u, v)
            return u & ~(a ^ b)
        if isinstance(f, fm.K):
            return u if self._ext(f.sub, u, v) == u else 0
        if isinstance(f, fm.Box):
            return _interior(self._mnb, self._ext(f.sub, u, v))
        if isinstance(f, fm.Bel):
            a = self._ext(f.sub, u, v)
            if self.kind is Semantics.STRONG:
                dense_part = self.top.closure(_interior(self._mnb, a))
                return u if u & ~dense_part == 0 else 0
            if self.kind is Semantics.ED:
                return u if v & ~a == 0 else 0
            return u if self.top.almost_subset(v, a) else 0
        raise SemanticsError(f"cannot evaluate node {f!r}")


def extension(
    model: SubsetModel, f: Formula, kind: Semantics, u: int, v: int | None = None
) -> int:
    """One-shot extension; ranges must satisfy the scenario invariants."""
    top = model.topology
    if not top.is_open(u):
        raise SemanticsError("epistemic range is not open")
    if v is not None and (not top.is_open(v) or v & ~u):
        raise SemanticsError("doxastic range must be an open subset of the epistemic range")
    return Evaluator(model, kind).extension(f, u, v)


def satisfies(model: SubsetModel, s: EDScenario, f: Formula, kind: Semantics) -> bool:
    """Truth of f at the scenario under the given semantics."""
    check_scenario(model, s, need_v=kind.needs_doxastic_range)
    ext = Evaluator(model, kind).extension(f, s.u, s.v)
    return bool(ext >> s.x & 1)


@dataclass(frozen=True)
class Witness:
    scenario: EDScenario
    trace: tuple[tuple[str, bool], ...]


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: Witness | None = None


def _trace(ev: Evaluator, f: Formula, s: EDScenario) -> tuple[tuple[str, bool], ...]:
    entries = []
    for g in fm.subformulas(f):
        ext = ev.extension(g, s.u, s.v)
        entries.append((fm.to_text(g), bool(ext >> s.x & 1)))
    entries.sort(key=lambda item: (len(item[0]), item[0]))
    return tuple(entries)


def valid_in_model(
    model: SubsetModel,
    f: Formula,
    kind: Semantics,
    scenario_class: ScenarioClass = ScenarioClass.ALL,
    budget: int = DEFAULT_SCENARIO_BUDGET,
) -> Verdict:
    """Truth at every scenario of the class; first failure becomes the witness.

    Under strong semantics the scenarios are the epistemic ones and the
    class is irrelevant; under e-d semantics the class filters (U, V).
    """
    ev = Evaluator(model, kind)
    if kind is Semantics.STRONG:
        stream: Iterator[EDScenario] = epistemic_scenarios(model)
    else:
        stream = ed_scenarios(model, scenario_class, budget)
    for s in stream:
        ext = ev.extension(f, s.u, s.v)
        if not ext >> s.x & 1:
            return Verdict(False, Witness(s, _trace(ev, f, s)))
    return Verdict(True)


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a countermodel hunt.

    status "found" carries the witness; "exhausted" means the whole
    exhaustive space up to max_n was covered with no countermodel (a claim
    only the exhaustive phase may make); "budget" means the evaluation
    budget ran out first.
    """

    status: Literal["found", "exhausted", "budget"]
    model: SubsetModel | None
    scenario: EDScenario | None
    evaluations: int


def _scenario_stream(
    model: SubsetModel, kind: Semantics, cls: ScenarioClass, budget: int
) -> Iterator[EDScenario]:
    if kind is Semantics.STRONG:
        return epistemic_scenarios(model)
    return ed_scenarios(model, cls, budget)


def find_countermodel(
    f: Formula,
    kind: Semantics,
    scenario_class: ScenarioClass = ScenarioClass.ALL,
    max_n: int = 3,
    budget: int = 200_000,
    seed: int = 0,
) -> SearchOutcome:
    """Search for a model and scenario falsifying f.

    Exhaustive phase first: every topology on 1..min(max_n, 4) points
    crossed with every valuation of f's atoms, scenarios in canonical
    order, so the first hit is the canonically least witness.  If max_n
    exceeds 4, a seeded random phase follows until the budget runs out.
    Results are deterministic for a fixed seed, and a larger budget can
    only extend the search, never change an already found witness.
    """
    if not 1 <= max_n <= 16:
        raise SemanticsError(f"max_n {max_n} outside 1..16")
    names = sorted(fm.atoms(f))
    evaluations = 0
    exhaustive_cap = min(max_n, 4)

    def check_model(model: SubsetModel) -> SearchOutcome | None:
        nonlocal evaluations
        ev = Evaluator(model, kind)
        try:
            for s in _scenario_stream(model, kind, scenario_class, DEFAULT_SCENARIO_BUDGET):
                if evaluations >= budget:
                    return SearchOutcome("budget", None, None, evaluations)
                evaluations += 1
                ext = ev.extension(f, s.u, s.v)
                if not ext >> s.x & 1:
                    return SearchOutcome("found", model, s, evaluations)
        except BudgetError:
            return None  # scenario space too large; skip this model
        return None

    for n in range(1, exhaustive_cap + 1):
        for top in enumerate_topologies(n):
            for masks in itertools.product(range(1 << n), repeat=len(names)):
                model = SubsetModel(top, dict(zip(names, masks)))
                hit = check_model(model)
                if hit is not None:
                    return hit

    if max_n <= 4:
        return SearchOutcome("exhausted", None, None, evaluations)

    sizes = list(range(5, max_n + 1))
    draw = 0
    while evaluations < budget:
        model = _search_model(seed + draw, sizes[draw % len(sizes)], names)
        draw += 1
        hit = check_model(model)
        if hit is not None:
            return hit
    return SearchOutcome("budget", None, None, evaluations)


def _search_model(seed: int, size: int, atoms: list[str]) -> SubsetModel:
    """Random-phase draw: seeded topology plus valuations of the given atoms."""
    base = random_model(seed, size, atoms=0)
    rng = random.Random(f"{seed}:valuation")
    return SubsetModel(base.topology, {name: rng.getrandbits(base.n) for name in atoms})


# ---------------------------------------------------------------------------
# shared-subformula batch engine for soundness sweeps

_OP_ATOM, _OP_TOP, _OP_BOT, _OP_NOT, _OP_AND, _OP_OR, _OP_IMP, _OP_IFF = range(8)
_OP_K, _OP_BOX, _OP_BEL = 8, 9, 10

_BINARY = {fm.And: _OP_AND, fm.Or: _OP_OR, fm.Implies: _OP_IMP, fm.Iff: _OP_IFF}
_UNARY = {fm.K: _OP_K, fm.Box: _OP_BOX, fm.Bel: _OP_BEL}


class BatchEvaluator:
    """Extension engine over a fixed formula set, shared across models.

    Compiles the distinct subformulas of all roots into one postorder node
    list; a sweep over a model then runs one linear pass per epistemic
    range, plus a short overlay pass per doxastic range for the nodes that
    depend on it.  Agreement with Evaluator is pinned by tests.
    """

    def __init__(self, roots: Iterable[Formula], kind: Semantics):
        self.kind = kind
        self.nodes: list[tuple] = []  # (opcode, arg1, arg2)
        self.index: dict[Formula, int] = {}
        self.roots = {f: self._add(f) for f in roots}
        if kind is Semantics.STRONG:
            self._vdep = [False] * len(self.nodes)
        else:
            self._vdep = self._doxastic_dependence()
        order = range(len(self.nodes))
        self.base_order = [i for i in order if not self._vdep[i]]
        self.overlay_order = [i for i in order if self._vdep[i]]

    def _add(self, f: Formula) -> int:
        hit = self.index.get(f)
        if hit is not None:
            return hit
        cls = type(f)
        if cls is fm.Atom:
            node = (_OP_ATOM, f.name, 0)
        elif cls is fm.Top:
            node = (_OP_TOP, 0, 0)
        elif cls is fm.Bot:
            node = (_OP_BOT, 0, 0)
        elif cls is fm.Not:
            node = (_OP_NOT, self._add(f.sub), 0)
        elif cls in _BINARY:
            node = (_BINARY[cls], self._add(f.left), self._add(f.right))
        elif cls in _UNARY:
            node = (_UNARY[cls], self._add(f.sub), 0)
        else:
            raise SemanticsError(f"cannot compile node {f!r}")
        idx = len(self.nodes)
        self.nodes.append(node)
        self.index[f] = idx
        return idx

    def _doxastic_dependence(self) -> list[bool]:
        dep = [False] * len(self.nodes)
        for i, (op, a, b) in enumerate(self.nodes):
            if op == _OP_BEL:
                dep[i] = True
            elif op in (_OP_ATOM, _OP_TOP, _OP_BOT):
                pass
            elif op in (_OP_NOT, _OP_K, _OP_BOX):
                dep[i] = dep[a]
            else:
                dep[i] = dep[a] or dep[b]
        return dep

    def base_pass(self, model: SubsetModel, u: int) -> list[int]:
        """Extensions of all doxastic-range-independent nodes under u."""
        vals = [0] * len(self.nodes)
        self._run(model, u, None, vals, self.base_order)
        return vals

    def overlay_pass(self, model: SubsetModel, u: int, v: int, vals: list[int]) -> None:
        """Fill the nodes that read v, in place over a base pass.

        Overlay nodes are recomputed wholesale on every call, so reusing
        one array across successive doxastic ranges is safe.
        """
        self._run(model, u, v, vals, self.overlay_order)

    def _run(
        self, model: SubsetModel, u: int, v: int | None, vals: list[int], order: list[int]
    ) -> None:
        top = model.topology
        mnb = top.min_neighborhoods
        full = top.full
        valuation = model.valuation
        kind = self.kind
        nodes = self.nodes
        for i in order:
            op, a, b = nodes[i]
            if op == _OP_ATOM:
                out = valuation.get(a, 0) & u
            elif op == _OP_NOT:
                out = u & ~vals[a]
            elif op == _OP_AND:
                out = vals[a] & vals[b]
            elif op == _OP_OR:
                out = vals[a] | vals[b]
            elif op == _OP_IMP:
                out = (u & ~vals[a]) | vals[b]
            elif op == _OP_IFF:
                out = u & ~(vals[a] ^ vals[b])
            elif op == _OP_K:
                out = u if vals[a] == u else 0
            elif op == _OP_BOX:
                out = _interior(mnb, vals[a])
            elif op == _OP_BEL:
                sub = vals[a]
                if kind is Semantics.STRONG:
                    if sub == u:
                        out = u
                    else:
                        dense_part = full & ~_interior(mnb, full & ~_interior(mnb, sub))
                        out = u if u & ~dense_part == 0 else 0
                elif kind is Semantics.ED:
                    out = u if v & ~sub == 0 else 0
                else:
                    rest = v & ~sub
                    if rest == 0:
                        out = u
                    else:
                        cl = full & ~_interior(mnb, full & ~rest)
                        out = u if _interior(mnb, cl) == 0 else 0
            elif op == _OP_TOP:
                out = u
            else:
                out = 0
            vals[i] = out


@dataclass(frozen=True)
class BatchFailure:
    formula: Formula
    model: SubsetModel
    scenario: EDScenario


def sweep_validity(
    engine: BatchEvaluator,
    models: Iterable[SubsetModel],
    scenario_class: ScenarioClass = ScenarioClass.ALL,
    budget: int = DEFAULT_SCENARIO_BUDGET,
    skip: set[Formula] | None = None,
) -> dict[Formula, BatchFailure]:
    """First failure per root formula across a model stream.

    A root with no entry in the result is valid on every model of the
    stream (restricted to scenarios of the class).  Roots in `skip` or
    already failed are not re-checked.
    """
    failures: dict[Formula, BatchFailure] = {}
    skip = set(skip or ())
    live = [(f, idx) for f, idx in engine.roots.items() if f not in skip]
    for model in models:
        if failures:
            live = [(f, idx) for f, idx in live if f not in failures]
        if not live:
            break
        top = model.topology
        if engine.kind is Semantics.STRONG:
            for u in top.opens:
                if u == 0:
                    continue
                vals = engine.base_pass(model, u)
                for f, idx in live:
                    ext = vals[idx]
                    if ext != u and f not in failures:
                        x = _least_missing(u, ext)
                        failures[f] = BatchFailure(f, model, EDScenario(x, u))
        else:
            for u, vs in range_groups(top, scenario_class, budget):
                vals = engine.base_pass(model, u)
                for v in vs:
                    engine.overlay_pass(model, u, v, vals)
                    for f, idx in live:
                        ext = vals[idx]
                        if ext != u and f not in failures:
                            x = _least_missing(u, ext)
                            failures[f] = BatchFailure(f, model, EDScenario(x, u, v))
    return failures


def _least_missing(u: int, ext: int) -> int:
    missing = u & ~ext
    return (missing & -missing).bit_length() - 1
