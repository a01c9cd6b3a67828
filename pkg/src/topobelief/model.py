"""Topological subset models, scenarios, file I/O, and random generation.

A model document is a UTF-8 JSON object; `dump` produces the bit-exact
canonical form (sorted keys, two-space indent, canonically ordered opens),
so loading and re-dumping a canonical document is the identity.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Mapping

from .formula import ATOM_RE
from .topology import (
    MAX_WORLDS,
    Topology,
    TopologyError,
    bits,
    generate_from_subbasis,
    mask_of,
)


class ModelError(Exception):
    pass


class BudgetError(Exception):
    """Raised when a scenario sweep would exceed its enumeration budget."""


DEFAULT_SCENARIO_BUDGET = 10**6


@dataclass(frozen=True)
class SubsetModel:
    """A finite topological space plus a valuation atom -> subset mask."""

    topology: Topology
    valuation: Mapping[str, int]

    def __post_init__(self):
        full = self.topology.full
        for atom, subset in self.valuation.items():
            if not ATOM_RE.match(atom):
                raise ModelError(f"bad atom name {atom!r}")
            if subset < 0 or subset & ~full:
                raise ModelError(f"valuation of {atom!r} out of carrier range")

    @property
    def n(self) -> int:
        return self.topology.n

    def atom_mask(self, name: str) -> int:
        return self.valuation.get(name, 0)


@dataclass(frozen=True)
class EDScenario:
    """Evaluation point: world x, epistemic range u, optional doxastic range v.

    v is absent for plain epistemic scenarios.  When present it must be an
    open subset of u; it need not contain x (beliefs may be false) and it
    may be empty (the general case; belief then holds vacuously).
    """

    x: int
    u: int
    v: int | None = None

    def literal(self) -> str:
        out = f"x={self.x};U=" + ",".join(str(i) for i in bits(self.u))
        if self.v is not None:
            out += ";V=" + ",".join(str(i) for i in bits(self.v))
        return out


def parse_scenario(text: str) -> EDScenario:
    """Parse the CLI literal "x=<world>;U=<comma-list>[;V=<comma-list>]"."""
    fields: dict[str, str] = {}
    for part in text.split(";"):
        if "=" not in part:
            raise ModelError(f"bad scenario field {part!r}")
        key, _, value = part.partition("=")
        fields[key.strip()] = value.strip()
    unknown = set(fields) - {"x", "U", "V"}
    if unknown or "x" not in fields or "U" not in fields:
        raise ModelError(f"scenario literal needs x and U (got {sorted(fields)})")

    def world(token: str) -> int:
        try:
            value = int(token)
        except ValueError:
            raise ModelError(f"bad world index {token!r} in scenario {text!r}") from None
        if not 0 <= value < MAX_WORLDS:
            raise ModelError(f"world index {value} outside 0..{MAX_WORLDS - 1}")
        return value

    def int_list(value: str) -> int:
        if not value:
            return 0
        return mask_of(world(tok) for tok in value.split(","))

    x = world(fields["x"])
    u = int_list(fields["U"])
    v = int_list(fields["V"]) if "V" in fields else None
    return EDScenario(x, u, v)


def check_scenario(model: SubsetModel, s: EDScenario, need_v: bool | None = None) -> None:
    """Validate a scenario against a model; raises ModelError on violation."""
    top = model.topology
    if not 0 <= s.x < top.n:
        raise ModelError(f"world {s.x} out of range")
    if not top.is_open(s.u):
        raise ModelError("epistemic range is not open")
    if not s.u >> s.x & 1:
        raise ModelError("world not inside its epistemic range")
    if s.v is not None:
        if not top.is_open(s.v):
            raise ModelError("doxastic range is not open")
        if s.v & ~s.u:
            raise ModelError("doxastic range not contained in epistemic range")
    if need_v is True and s.v is None:
        raise ModelError("scenario needs a doxastic range for this semantics")
    if need_v is False and s.v is not None:
        raise ModelError("scenario must not carry a doxastic range for this semantics")


class ScenarioClass(Enum):
    """Admissible doxastic ranges: ALL admits empty v, CONSISTENT requires
    v nonempty, DENSE requires u inside cl(v), TOTAL forces v = u."""

    ALL = "all"
    CONSISTENT = "consistent"
    DENSE = "dense"
    TOTAL = "total"

    def admits(self, top: Topology, u: int, v: int) -> bool:
        if self is ScenarioClass.ALL:
            return True
        if self is ScenarioClass.CONSISTENT:
            return v != 0
        if self is ScenarioClass.DENSE:
            return top.is_dense_in(v, u)
        return v == u


def epistemic_scenarios(model: SubsetModel) -> Iterator[EDScenario]:
    """All (x, U) with x in U open, x ascending then U in canonical order."""
    top = model.topology
    for x in range(top.n):
        bit = 1 << x
        for u in top.opens:
            if u & bit:
                yield EDScenario(x, u)


def range_pairs(
    top: Topology, cls: ScenarioClass, budget: int = DEFAULT_SCENARIO_BUDGET
) -> list[tuple[int, int]]:
    """All (u, v) range pairs of the class, canonical order, budget-guarded."""
    cost = len(top.opens) ** 2 * top.n
    if cost > budget:
        raise BudgetError(
            f"scenario sweep cost {cost} exceeds budget {budget}"
            f" ({len(top.opens)} opens on {top.n} worlds)"
        )
    return [(u, v) for u, vs in _range_groups(top, cls) for v in vs]


@lru_cache(maxsize=4096)
def _range_groups(top: Topology, cls: ScenarioClass) -> tuple[tuple[int, tuple[int, ...]], ...]:
    out = []
    for u in top.opens:
        if u == 0:
            continue
        vs = tuple(v for v in top.opens if v & ~u == 0 and cls.admits(top, u, v))
        if vs:
            out.append((u, vs))
    return tuple(out)


def range_groups(
    top: Topology, cls: ScenarioClass, budget: int = DEFAULT_SCENARIO_BUDGET
) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """range_pairs grouped by epistemic range; cached per topology."""
    cost = len(top.opens) ** 2 * top.n
    if cost > budget:
        raise BudgetError(
            f"scenario sweep cost {cost} exceeds budget {budget}"
            f" ({len(top.opens)} opens on {top.n} worlds)"
        )
    return _range_groups(top, cls)


def ed_scenarios(
    model: SubsetModel,
    cls: ScenarioClass = ScenarioClass.ALL,
    budget: int = DEFAULT_SCENARIO_BUDGET,
) -> Iterator[EDScenario]:
    """All (x, U, V) of the class; x ascending, then U, then V canonically."""
    top = model.topology
    pairs = range_pairs(top, cls, budget)
    for x in range(top.n):
        bit = 1 << x
        for u, v in pairs:
            if u & bit:
                yield EDScenario(x, u, v)


# ---------------------------------------------------------------------------
# model documents


def _subsets_to_lists(opens: tuple[int, ...]) -> list[list[int]]:
    return [bits(o) for o in opens]


def dump(model) -> str:
    """Canonical JSON document for a subset or relational model."""
    from .relational import RelationalModel

    if isinstance(model, SubsetModel):
        doc = {
            "type": "subset",
            "worlds": model.n,
            "opens": _subsets_to_lists(model.topology.opens),
            "valuation": {atom: bits(mask) for atom, mask in sorted(model.valuation.items())},
        }
    elif isinstance(model, RelationalModel):
        doc = {
            "type": "relational",
            "worlds": model.n,
            "rel": [list(pair) for pair in sorted(model.rel)],
            "valuation": {atom: bits(mask) for atom, mask in sorted(model.valuation.items())},
        }
    else:
        raise ModelError(f"cannot dump {type(model).__name__}")
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load(text: str):
    """Parse and validate a model document.

    Returns a SubsetModel (type "subset", from explicit opens or from a
    subbasis) or a RelationalModel (type "relational").
    """
    from .relational import RelationalModel

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"bad model document: {exc}") from None
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")

    kind = doc.get("type")
    n = doc.get("worlds")
    if not isinstance(n, int) or not 1 <= n <= MAX_WORLDS:
        raise ModelError(f"worlds must be an integer in 1..{MAX_WORLDS}")

    valuation = {}
    raw_val = doc.get("valuation", {})
    if not isinstance(raw_val, dict):
        raise ModelError("valuation must be an object")
    for atom, indices in raw_val.items():
        valuation[atom] = _mask_field(n, indices, f"valuation of {atom!r}")

    if kind == "subset":
        if "opens" in doc and "subbasis" in doc:
            raise ModelError("give opens or subbasis, not both")
        if "opens" in doc:
            opens = [_mask_field(n, o, "open") for o in _list_field(doc, "opens")]
            try:
                topology = Topology.from_opens(n, opens)
            except TopologyError as exc:
                raise ModelError(str(exc)) from None
        elif "subbasis" in doc:
            subbasis = [_mask_field(n, s, "subbasis member") for s in _list_field(doc, "subbasis")]
            topology = generate_from_subbasis(n, subbasis)
        else:
            raise ModelError("subset model needs opens or subbasis")
        return SubsetModel(topology, valuation)

    if kind == "relational":
        raw_rel = _list_field(doc, "rel")
        rel = set()
        for pair in raw_rel:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(w, int) and 0 <= w < n for w in pair)
            ):
                raise ModelError(f"bad relation pair {pair!r}")
            rel.add((pair[0], pair[1]))
        return RelationalModel(n, frozenset(rel), valuation)

    raise ModelError(f"unknown model type {kind!r}")


def _list_field(doc: dict, key: str) -> list:
    value = doc.get(key)
    if not isinstance(value, list):
        raise ModelError(f"{key} must be a list")
    return value


def _mask_field(n: int, indices, what: str) -> int:
    if not isinstance(indices, list) or not all(isinstance(i, int) for i in indices):
        raise ModelError(f"{what} must be a list of world indices")
    for i in indices:
        if not 0 <= i < n:
            raise ModelError(f"{what}: world {i} out of range 0..{n - 1}")
    return mask_of(indices)


# ---------------------------------------------------------------------------
# random generation

ATOM_NAMES = ("p", "q", "r", "s")

SUBBASIS_TRIALS_PER_WORLD = 3  # bounded coin flips in random_model


def atom_names(count: int) -> tuple[str, ...]:
    names = list(ATOM_NAMES[:count])
    names += [f"a{i}" for i in range(len(names), count)]
    return tuple(names)


def random_model(seed: int, n: int, atoms: int = 2, density: float = 0.3) -> SubsetModel:
    """Deterministic random model: seeded subbasis draw plus uniform valuation.

    Each of a bounded number of uniformly random subsets joins the subbasis
    with the given probability; the topology it generates always verifies.
    """
    if not 1 <= n <= MAX_WORLDS:
        raise ModelError(f"size {n} outside 1..{MAX_WORLDS}")
    rng = random.Random(seed)
    subbasis = []
    for _ in range(SUBBASIS_TRIALS_PER_WORLD * n):
        candidate = rng.randrange(1 << n)
        if rng.random() < density:
            subbasis.append(candidate)
    topology = generate_from_subbasis(n, subbasis)
    valuation = {name: rng.getrandbits(n) for name in atom_names(atoms)}
    return SubsetModel(topology, valuation)


def sierpinski_model(p_at: int = 0) -> SubsetModel:
    """Two worlds, opens {{}, {0}, {0,1}}, one atom p true at the given world."""
    top = Topology.from_opens(2, [0, 1, 3])
    return SubsetModel(top, {"p": 1 << p_at})
