"""Independent reference computations used only by the tests.

Nothing here touches the package's enumerator or group-by.
"""

from itertools import combinations

from sympy.utilities.iterables import partitions as sympy_partitions


def all_partitions(n):
    """Every partition of n as a nondecreasing tuple, via sympy."""
    out = []
    for p in sympy_partitions(n):
        parts = []
        for value, mult in p.items():
            parts.extend([value] * mult)
        out.append(tuple(sorted(parts)))
    return sorted(out)


def stats(parts, names):
    values = []
    for name in names:
        if name == "count":
            values.append(len(parts))
        elif name == "product":
            v = 1
            for x in parts:
                v *= x
            values.append(v)
        else:
            k = int(name.split(":")[1])
            values.append(sum(x ** k for x in parts))
    return tuple(values)


def pairwise_classes(n, names, count_filter=None):
    """Classes found by comparing every pair of partitions' keys (quadratic)."""
    ps = [p for p in all_partitions(n) if count_filter is None or count_filter(len(p))]
    keys = [stats(p, names) for p in ps]
    groups = {}
    for i, j in combinations(range(len(ps)), 2):
        if keys[i] == keys[j]:
            groups.setdefault(keys[i], set()).update([ps[i], ps[j]])
    return {k: frozenset(v) for k, v in groups.items()}


def oracle_solve(names, target_index, max_bus, count_filter=None):
    """Valid buses and first bus with two or more ambiguous targets, by brute force."""
    valid = []
    for b in range(1, max_bus + 1):
        targets = {k[target_index] for k in pairwise_classes(b, names, count_filter)}
        if len(targets) == 1:
            valid.append((b, targets.pop()))
        elif len(targets) >= 2:
            return valid, b
    return valid, None
