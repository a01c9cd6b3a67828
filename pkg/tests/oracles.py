"""Independent brute-force oracles used to freeze expected values.

Everything here recomputes results straight from definitions, on purpose
not sharing code paths with the library (no minimal-neighborhood tables,
no bit tricks beyond masks), so a test that compares the two is a real
cross-check.
"""

from itertools import product


def brute_interior(opens, a):
    """Union of all opens contained in a (the definition)."""
    m = 0
    for o in opens:
        if o & ~a == 0:
            m |= o
    return m


def brute_closure(n, opens, a):
    """Points whose every open neighborhood meets a (the definition)."""
    out = 0
    for x in range(n):
        bit = 1 << x
        if all(o & a for o in opens if o & bit):
            out |= bit
    return out


def reflexive_transitive_relations(n):
    """All preorders on n points as successor-mask tuples (matrix method)."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    for choice in product([False, True], repeat=len(pairs)):
        mat = [[x == y for y in range(n)] for x in range(n)]
        for on, (x, y) in zip(choice, pairs):
            if on:
                mat[x][y] = True
        if all(
            not (mat[x][y] and mat[y][z]) or mat[x][z]
            for x in range(n)
            for y in range(n)
            for z in range(n)
        ):
            yield tuple(
                sum(1 << y for y in range(n) if mat[x][y]) for x in range(n)
            )


def upset_family(n, succ):
    """Opens of a preorder: subsets closed under taking successors."""
    family = []
    for s in range(1 << n):
        if all(succ[x] & ~s == 0 for x in range(n) if s >> x & 1):
            family.append(s)
    return frozenset(family)


def all_topologies_oracle(n):
    """Set of open-set families of every labeled topology on n points."""
    return {upset_family(n, succ) for succ in reflexive_transitive_relations(n)}


def is_belief_relation(n, rel):
    """Serial + transitive + Euclidean, by direct triple quantification."""
    serial = all(any((x, y) in rel for y in range(n)) for x in range(n))
    transitive = all(
        (x, z) in rel
        for x in range(n)
        for y in range(n)
        for z in range(n)
        if (x, y) in rel and (y, z) in rel
    )
    euclidean = all(
        (y, z) in rel
        for x in range(n)
        for y in range(n)
        for z in range(n)
        if (x, y) in rel and (x, z) in rel
    )
    return serial and transitive and euclidean


def all_relations(n):
    pairs = [(x, y) for x in range(n) for y in range(n)]
    for choice in product([False, True], repeat=len(pairs)):
        yield frozenset(p for on, p in zip(choice, pairs) if on)


def count_nodes(f, cls):
    """Occurrences of a node class in the tree (multiset, not deduplicated)."""
    from topobelief import formula as fm

    count = isinstance(f, cls)
    if isinstance(f, (fm.Not, fm.K, fm.Box, fm.Bel)):
        return count + count_nodes(f.sub, cls)
    if isinstance(f, (fm.And, fm.Or, fm.Implies, fm.Iff)):
        return count + count_nodes(f.left, cls) + count_nodes(f.right, cls)
    return count
