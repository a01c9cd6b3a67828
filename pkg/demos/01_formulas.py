"""Formulas: parsing, printing, axiom schemes, and the translation maps."""

from topobelief import formula as fm
from topobelief.formula import ALPHA_MAP, E_MAP, T_MAP, get_scheme, instantiate, parse, translate

# The surface syntax is plain ASCII.  K is knowledge, box is knowability,
# B is belief; hatK/dia/hatB are the duals and parse to not-op-not.
f = parse("B p <-> K dia box p")
print("parsed:   ", f)
print("desugared:", repr(f))

# Schemes are templates over phi/psi; instantiation is plain substitution.
for name in ("T_K", "4_B", "RB", "wF", "CB"):
    inst = instantiate(get_scheme(name), {"phi": parse("p")})
    print(f"{name:>4}:", inst)

# Three operator-replacement maps.  E eliminates belief entirely, ALPHA
# pads every belief with an unfalsifiability prefix, T collapses
# knowability into knowledge (reference only; see demo 05).
g = parse("B (p & B q)")
print("e-image:     ", translate(g, E_MAP))
print("alpha-image: ", translate(g, ALPHA_MAP))
print("t-image:     ", translate(parse("box K p"), T_MAP))

# Subformulas are deduplicated structurally.
print("subformulas of", g, "->", sorted(str(s) for s in fm.subformulas(g)))
