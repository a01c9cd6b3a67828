"""Named axiom suites, batch soundness runs, and certified non-theorems.

Each suite pairs a scheme list with the semantics and scenario class it is
sound for.  Suite runs instantiate every scheme over a fixed, versioned
substitution set and check validity on a deterministic model batch:
exhaustive small topologies crossed with all valuations, then seeded
random models.  Necessitation is not a scheme, so the runs check its
semantic counterpart instead: whenever a substitution-set formula is valid
on the whole batch, so must be its necessitation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import formula as fm
from .formula import Formula, Scheme, get_scheme, instantiate, parse
from .model import EDScenario, ScenarioClass, SubsetModel, dump, parse_scenario, random_model
from .semantics import (
    BatchEvaluator,
    Semantics,
    satisfies,
    sweep_validity,
    valid_in_model,
)
from .topology import Topology, enumerate_topologies, mask_of


class SuiteError(Exception):
    pass


DEFAULT_INSTANTIATION: tuple[Formula, ...] = tuple(
    parse(text) for text in ("p", "q", "p & q", "! p", "K p", "box p", "B p", "dia q")
)

# sound Table-1 instances for an S5 knowledge modality, an S4 knowability
# modality, and the knowledge-implies-knowability bridge
BASE_SCHEMES: tuple[str, ...] = (
    "K_K",
    "D_K",
    "T_K",
    "4_K",
    ".2_K",
    "5_K",
    "K_box",
    "D_box",
    "T_box",
    "4_box",
    "KI",
)

STRONG_BELIEF_SCHEMES: tuple[str, ...] = ("K_B", "sPI", "KB", "RB", "wF", "CB")
RANGE_BELIEF_SCHEMES: tuple[str, ...] = ("K_B", "sPI", "KB", "RB")


@dataclass(frozen=True)
class LogicSuite:
    name: str
    schemes: tuple[str, ...]
    semantics: Semantics
    scenario_class: ScenarioClass
    rules: tuple[str, ...]  # modalities licensed for the necessitation check


_SUITES: dict[str, LogicSuite] = {
    suite.name: suite
    for suite in (
        LogicSuite("el_kbox", BASE_SCHEMES, Semantics.STRONG, ScenarioClass.ALL, ("K", "box")),
        LogicSuite(
            "sel",
            BASE_SCHEMES + STRONG_BELIEF_SCHEMES,
            Semantics.STRONG,
            ScenarioClass.ALL,
            ("K", "box", "B"),
        ),
        LogicSuite(
            "el_kboxb",
            BASE_SCHEMES + RANGE_BELIEF_SCHEMES,
            Semantics.ED,
            ScenarioClass.ALL,
            ("K", "box", "B"),
        ),
        LogicSuite(
            "el_kboxb_d",
            BASE_SCHEMES + RANGE_BELIEF_SCHEMES + ("D_B",),
            Semantics.ED,
            ScenarioClass.CONSISTENT,
            ("K", "box", "B"),
        ),
        LogicSuite(
            "el_kboxb_wf",
            BASE_SCHEMES + RANGE_BELIEF_SCHEMES + ("wF",),
            Semantics.ED,
            ScenarioClass.DENSE,
            ("K", "box", "B"),
        ),
        LogicSuite(
            "el_kboxb_cb",
            BASE_SCHEMES + RANGE_BELIEF_SCHEMES + ("CB",),
            Semantics.AE,
            ScenarioClass.ALL,
            ("K", "box", "B"),
        ),
        LogicSuite(
            "kd45_b", ("K_B", "D_B", "4_B", "5_B"), Semantics.STRONG, ScenarioClass.ALL, ("B",)
        ),
    )
}

# the full-belief suite is also sound for almost-everywhere satisfaction
# once the doxastic range is forced to equal the epistemic range
DEFAULT_MATRIX: tuple[tuple[str, Semantics | None, ScenarioClass | None], ...] = (
    ("el_kbox", None, None),
    ("sel", None, None),
    ("sel", Semantics.AE, ScenarioClass.TOTAL),
    ("el_kboxb", None, None),
    ("el_kboxb_d", None, None),
    ("el_kboxb_wf", None, None),
    ("el_kboxb_cb", None, None),
    ("kd45_b", None, None),
)


def get_suite(name: str) -> LogicSuite:
    key = name.lower()
    if key == "stal_t":
        raise SuiteError(
            "stal_t is documentation-only: its axioms read knowledge for knowability"
            " and hold only on directed frames, which this library does not model"
        )
    try:
        return _SUITES[key]
    except KeyError:
        raise SuiteError(f"unknown suite {name!r} (try: {', '.join(sorted(_SUITES))})") from None


def suite_names() -> tuple[str, ...]:
    return tuple(sorted(_SUITES))


def stalnaker_images() -> dict[str, Formula]:
    """Knowability-collapsed (box -> K) images of the full-belief axioms.

    These are the license for reading this library's belief axioms as a
    conservative refinement of the classical bimodal postulates; they are
    reference material only and take part in no soundness run.
    """
    out = {}
    for name in STRONG_BELIEF_SCHEMES:
        out[name] = fm.translate(get_scheme(name).template, fm.T_MAP)
    return out


# ---------------------------------------------------------------------------
# batches


@dataclass(frozen=True)
class Batch:
    """Deterministic model stream: exhaustive part, then seeded random part."""

    exhaustive_n: int = 0
    atoms: tuple[str, ...] = ("p", "q")
    seeds: tuple[int, ...] = ()
    sizes: tuple[int, ...] = ()
    density: float = 0.3

    def __post_init__(self):
        if len(self.seeds) != len(self.sizes):
            raise SuiteError("seeds and sizes must align")

    def models(self) -> Iterator[SubsetModel]:
        for n in range(1, self.exhaustive_n + 1):
            for top in enumerate_topologies(n):
                for masks in itertools.product(range(1 << n), repeat=len(self.atoms)):
                    yield SubsetModel(top, dict(zip(self.atoms, masks)))
        for seed, size in zip(self.seeds, self.sizes):
            yield random_model(seed, size, atoms=len(self.atoms), density=self.density)

    def describe(self) -> dict:
        return {
            "exhaustive_n": self.exhaustive_n,
            "atoms": list(self.atoms),
            "seeds": list(self.seeds),
            "sizes": list(self.sizes),
            "density": self.density,
        }


def soundness_batch(
    exhaustive_n: int = 3,
    random_count: int = 200,
    sizes: Sequence[int] = (4, 5, 6),
    first_seed: int = 1,
) -> Batch:
    """The standard batch: exhaustive n<=3 plus seeded random models."""
    seeds = tuple(range(first_seed, first_seed + random_count))
    cycle = tuple(sizes[i % len(sizes)] for i in range(random_count)) if random_count else ()
    return Batch(exhaustive_n=exhaustive_n, seeds=seeds, sizes=cycle)


# ---------------------------------------------------------------------------
# suite runs


@dataclass(frozen=True)
class SchemeResult:
    scheme: str
    instance: str
    status: str  # "valid" | "countermodel"
    witness_model: dict | None = None
    witness_scenario: str | None = None
    witness_trace: tuple[tuple[str, bool], ...] | None = None


@dataclass(frozen=True)
class RuleResult:
    rule: str
    premise: str
    status: str  # "vacuous" | "valid" | "countermodel"


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    semantics: str
    scenario_class: str
    batch: dict
    results: tuple[SchemeResult, ...]
    rules: tuple[RuleResult, ...]

    @property
    def clean(self) -> bool:
        return all(r.status == "valid" for r in self.results) and all(
            r.status != "countermodel" for r in self.rules
        )

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "semantics": self.semantics,
            "class": self.scenario_class,
            "batch": self.batch,
            "clean": self.clean,
            "results": [
                {
                    "scheme": r.scheme,
                    "instance": r.instance,
                    "status": r.status,
                    **(
                        {
                            "witness": {
                                "model": r.witness_model,
                                "scenario": r.witness_scenario,
                                "trace": [list(t) for t in r.witness_trace],
                            }
                        }
                        if r.status == "countermodel"
                        else {}
                    ),
                }
                for r in self.results
            ],
            "rules": [
                {"rule": r.rule, "premise": r.premise, "status": r.status} for r in self.rules
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [
            f"suite {self.suite}: semantics={self.semantics} class={self.scenario_class}",
            f"batch: {json.dumps(self.batch, sort_keys=True)}",
        ]
        by_scheme: dict[str, list[SchemeResult]] = {}
        for r in self.results:
            by_scheme.setdefault(r.scheme, []).append(r)
        for scheme, rows in by_scheme.items():
            bad = [r for r in rows if r.status != "valid"]
            if not bad:
                lines.append(f"  {scheme}: {len(rows)} instances valid")
            else:
                first = bad[0]
                lines.append(
                    f"  {scheme}: countermodel for '{first.instance}'"
                    f" at {first.witness_scenario}"
                )
        checked = [r for r in self.rules if r.status != "vacuous"]
        lines.append(
            f"  necessitation: {len(checked)} premises checked,"
            f" {len(self.rules) - len(checked)} vacuous"
        )
        lines.append("all schemes valid" if self.clean else "countermodels found")
        return "\n".join(lines) + "\n"


def scheme_instances(
    scheme: Scheme, instantiation: Sequence[Formula] = DEFAULT_INSTANTIATION
) -> tuple[Formula, ...]:
    """All instances of the scheme over the substitution set, deduplicated."""
    names = sorted(scheme.metavariables())
    out: dict[Formula, None] = {}
    for values in itertools.product(instantiation, repeat=len(names)):
        out.setdefault(instantiate(scheme, dict(zip(names, values))), None)
    return tuple(out)


_RULE_OPS = {"K": fm.K, "box": fm.Box, "B": fm.Bel}


def run_suite(
    suite: LogicSuite,
    batch: Batch,
    instantiation: Sequence[Formula] = DEFAULT_INSTANTIATION,
    semantics: Semantics | None = None,
    scenario_class: ScenarioClass | None = None,
) -> SuiteReport:
    """Check every scheme instance on every batch model; aggregate a report.

    The semantics/class arguments override the suite's declared pair (used
    for cross-checks such as running a suite over a broader scenario
    class).  The first failing model yields a canonical witness, replayable
    through the reference evaluator.
    """
    kind = semantics or suite.semantics
    cls = scenario_class or suite.scenario_class

    rows: list[tuple[str, Formula]] = []
    for name in suite.schemes:
        for inst in scheme_instances(get_scheme(name), instantiation):
            rows.append((name, inst))

    premises = list(dict.fromkeys(instantiation))
    rule_rows: list[tuple[str, Formula, Formula]] = []
    for mod in suite.rules:
        op = _RULE_OPS[mod]
        for premise in premises:
            rule_rows.append((f"Nec_{mod}", premise, op(premise)))

    roots: dict[Formula, None] = {}
    for _, inst in rows:
        roots.setdefault(inst, None)
    for _, premise, wrapped in rule_rows:
        roots.setdefault(premise, None)
        roots.setdefault(wrapped, None)

    engine = BatchEvaluator(tuple(roots), kind)
    failures = sweep_validity(engine, batch.models(), cls)

    results = []
    for name, inst in rows:
        failure = failures.get(inst)
        if failure is None:
            results.append(SchemeResult(name, fm.to_text(inst), "valid"))
        else:
            verdict = valid_in_model(failure.model, inst, kind, cls)
            witness = verdict.witness
            results.append(
                SchemeResult(
                    name,
                    fm.to_text(inst),
                    "countermodel",
                    witness_model=json.loads(dump(failure.model)),
                    witness_scenario=witness.scenario.literal(),
                    witness_trace=witness.trace,
                )
            )

    rule_results = []
    for rule, premise, wrapped in rule_rows:
        if premise in failures:
            status = "vacuous"
        elif wrapped in failures:
            status = "countermodel"
        else:
            status = "valid"
        rule_results.append(RuleResult(rule, fm.to_text(premise), status))

    return SuiteReport(
        suite.name,
        kind.value,
        cls.value,
        batch.describe(),
        tuple(results),
        tuple(rule_results),
    )


# ---------------------------------------------------------------------------
# certified non-theorems


@dataclass(frozen=True)
class ExpectedFailure:
    """A formula that must fail, with a stored replayable witness."""

    label: str
    formula: str
    semantics: Semantics
    scenario_class: ScenarioClass
    max_worlds: int
    witness_model: SubsetModel
    witness_scenario: EDScenario

    def replay(self) -> bool:
        """True when the stored witness still falsifies the formula."""
        return not satisfies(
            self.witness_model, self.witness_scenario, parse(self.formula), self.semantics
        )


def _model(n: int, opens: Sequence[Sequence[int]], p: Sequence[int]) -> SubsetModel:
    top = Topology.from_opens(n, [mask_of(o) for o in opens])
    return SubsetModel(top, {"p": mask_of(p)})


def expected_failures() -> tuple[ExpectedFailure, ...]:
    """The registry of non-theorems, each with a desk-size witness.

    Sizes are guaranteed maxima: exhaustive search finds a countermodel
    within that many worlds.
    """
    nested = _model(3, [[], [0], [0, 1, 2]], [0, 1])
    sierp = _model(2, [[], [0], [0, 1]], [0])
    indis = _model(2, [[], [0, 1]], [0])
    point = _model(1, [[], [0]], [])
    disc2 = _model(2, [[], [0], [1], [0, 1]], [1])
    wedge = _model(3, [[], [0], [1], [0, 1], [0, 1, 2]], [0, 2])
    return (
        ExpectedFailure(
            "5_box",
            "! box p -> box ! box p",
            Semantics.STRONG,
            ScenarioClass.ALL,
            3,
            nested,
            parse_scenario("x=1;U=0,1,2"),
        ),
        ExpectedFailure(
            "box_dichotomy",
            "box p | box ! box p",
            Semantics.STRONG,
            ScenarioClass.ALL,
            3,
            nested,
            parse_scenario("x=1;U=0,1,2"),
        ),
        ExpectedFailure(
            "T_B",
            "B p -> p",
            Semantics.STRONG,
            ScenarioClass.ALL,
            2,
            sierp,
            parse_scenario("x=1;U=0,1"),
        ),
        ExpectedFailure(
            "omniscience",
            "p -> K p",
            Semantics.STRONG,
            ScenarioClass.ALL,
            2,
            indis,
            parse_scenario("x=0;U=0,1"),
        ),
        ExpectedFailure(
            "D_B",
            "B p -> ! B ! p",
            Semantics.ED,
            ScenarioClass.ALL,
            1,
            point,
            parse_scenario("x=0;U=0;V="),
        ),
        ExpectedFailure(
            "wF",
            "B p -> dia p",
            Semantics.ED,
            ScenarioClass.CONSISTENT,
            2,
            disc2,
            parse_scenario("x=0;U=0,1;V=1"),
        ),
        ExpectedFailure(
            "CB",
            "B (box p | box ! box p)",
            Semantics.ED,
            ScenarioClass.DENSE,
            3,
            wedge,
            parse_scenario("x=0;U=0,1,2;V=0,1,2"),
        ),
    )
