"""The three satisfaction relations on one running example.

Strong semantics reads belief off the space itself (dense interiors);
the doxastic-range semantics add an explicit conjecture V; the
almost-everywhere variant lets belief ignore nowhere dense exceptions.
"""

from topobelief.formula import parse
from topobelief.model import SubsetModel, parse_scenario
from topobelief.semantics import Semantics, extension, satisfies, valid_in_model
from topobelief.topology import Topology, format_mask

# p holds only at world 0; {0} is open and dense, so the agent believes p
# everywhere on X even though p fails at world 1: a false belief.
sierp = SubsetModel(Topology.from_opens(2, [0b00, 0b01, 0b11]), {"p": 0b01})
s = parse_scenario("x=1;U=0,1")
for text in ("p", "K p", "B p", "dia p", "B p & ! p", "B p -> dia p"):
    print(f"strong, {text!r} at (1, X):", satisfies(sierp, s, parse(text), Semantics.STRONG))

# Extensions are computed per epistemic range.
print("extension of 'box p' under X:", format_mask(extension(sierp, parse("box p"), Semantics.STRONG, 0b11)))

# With an explicit conjecture the same space behaves differently: in the
# discrete plane belief loses its tie to unfalsifiability.
disc = SubsetModel(Topology.discrete(2), {"p": 0b10})
ed = parse_scenario("x=0;U=0,1;V=1")
print("ed, 'B p' with conjecture {1}:", satisfies(disc, ed, parse("B p"), Semantics.ED))
print("ed, 'dia p' same scenario:   ", satisfies(disc, ed, parse("dia p"), Semantics.ED))

# Almost-everywhere semantics: the conjecture may miss a nowhere dense
# part of the believed set and belief still holds.
ae = parse_scenario("x=1;U=0,1;V=0,1")
print("ae, 'B p' with V = X on the two-point chain:",
      satisfies(sierp, ae, parse("B p"), Semantics.AE))
print("ed, same scenario:", satisfies(sierp, ae, parse("B p"), Semantics.ED))

# Validity in a model quantifies over every scenario and hands back a
# replayable witness when it fails.
verdict = valid_in_model(sierp, parse("p -> K p"), Semantics.STRONG)
print("'p -> K p' valid:", verdict.valid, "| witness:", verdict.witness.scenario.literal())
