"""Countermodel mining: exhaustive search certifies non-theorems."""

from topobelief.formula import parse
from topobelief.model import dump
from topobelief.semantics import Semantics, find_countermodel, satisfies
from topobelief.suites import expected_failures

# The registry holds every formula the library certifies as invalid,
# each with a stored desk-size witness and a guaranteed search bound.
for entry in expected_failures():
    print(f"{entry.label:>14}: {entry.formula!r}"
          f"  [{entry.semantics.value}/{entry.scenario_class.value}]"
          f"  witness {entry.witness_scenario.literal()} on {entry.witness_model.n} world(s)"
          f"  replays={entry.replay()}")

# Fresh search, smallest witness first: negative introspection for
# knowability fails at a boundary point of the knowable region.
f = parse("! box p -> box ! box p")
out = find_countermodel(f, Semantics.STRONG, max_n=3)
print("\nsearch status:", out.status, "after", out.evaluations, "evaluations")
print("falsified at:", out.scenario.literal())
print(dump(out.model), end="")
print("replay:", not satisfies(out.model, out.scenario, f, Semantics.STRONG))
