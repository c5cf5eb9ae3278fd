"""Independent test oracles: brute-force circuit enumeration straight from the
rank criterion, with no pruning and no quotient-space shortcut."""
import itertools

from circuitfan.linalg import GradedMatrix, rank_rel
from circuitfan.ring import monomials_of_degree


def circuits_bruteforce(W: GradedMatrix) -> frozenset:
    """Every nonempty monomial subset is tested: dependent with all maximal
    proper subsets independent."""
    if W.dim == 0:
        return frozenset()
    monos = monomials_of_degree(W.ring.n, W.degree)
    dependent = {}
    for size in range(1, len(monos) + 1):
        for combo in itertools.combinations(monos, size):
            s = frozenset(combo)
            dependent[s] = rank_rel(W, combo, "sub") < len(combo)
    circuits = set()
    for s, dep in dependent.items():
        if not dep:
            continue
        if len(s) == 1 or all(not dependent[s - {m}] for m in s):
            circuits.add(s)
    return frozenset(circuits)
