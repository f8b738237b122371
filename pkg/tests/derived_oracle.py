"""Independent membership test for the derived series of a free group.

F^(k) / F^(k+1) is the first homology of the Cayley graph of F / F^(k). So a
word w in F^(k) lies in F^(k+1) iff the closed loop it traces in that Cayley
graph crosses every edge as often forwards as backwards. Vertices visited by
the loop are the prefixes of w, and two prefixes u, v are the same vertex iff
u v^-1 lies in F^(k), which is decided recursively.
"""

from functools import lru_cache


def _reduce(letters):
    out = []
    for g, e in letters:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def _inv(letters):
    return tuple((g, -e) for g, e in reversed(letters))


@lru_cache(maxsize=None)
def in_derived(w: tuple, k: int) -> bool:
    w = _reduce(w)
    if k == 0 or not w:
        return True
    if not in_derived(w, k - 1):
        return False
    prefixes = [w[:i] for i in range(len(w) + 1)]
    vertex = []
    reps = []
    for p in prefixes:
        for idx, r in enumerate(reps):
            if in_derived(_reduce(p + _inv(r)), k - 1):
                vertex.append(idx)
                break
        else:
            reps.append(p)
            vertex.append(len(reps) - 1)
    flow = {}
    for i, (g, e) in enumerate(w):
        edge = (vertex[i], g) if e == 1 else (vertex[i + 1], g)
        flow[edge] = flow.get(edge, 0) + e
    return all(v == 0 for v in flow.values())


def oracle_depth(w: tuple, k_max: int):
    """(depth, exact) in the same convention as freegroup.derived_depth."""
    for k in range(1, k_max + 2):
        if not in_derived(w, k):
            return k - 1, True
    return k_max, False


def reduced_words(n_gens: int, max_len: int):
    """All nonempty freely reduced words over x1..xn up to the given length."""
    letters = [(g, e) for g in range(1, n_gens + 1) for e in (1, -1)]

    def extend(prefix):
        if prefix:
            yield prefix
        if len(prefix) == max_len:
            return
        for a in letters:
            if prefix and prefix[-1] == (a[0], -a[1]):
                continue
            yield from extend(prefix + (a,))

    yield from extend(())


def canonical_balanced_words(n_gens: int, max_len: int) -> list:
    """Representatives of cyclically reduced words with zero exponent sums.

    Every such word is equivalent to one listed here under relabeling and
    inverting generators, which are automorphisms preserving each F^(k); new
    generators appear in the order x1, x2, ... with exponent +1 first. Words
    that are not cyclically reduced are conjugates of shorter ones, and words
    with a nonzero exponent sum lie outside F^(1), so together with those two
    reductions this covers every word of length <= max_len.
    """
    out = []

    def extend(prefix, used, sums):
        n = len(prefix)
        if n and n % 2 == 0 and not any(sums.values()) and prefix[0] != (prefix[-1][0], -prefix[-1][1]):
            out.append(prefix)
        if n == max_len:
            return
        remaining = max_len - n - 1
        for g in range(1, min(used + 1, n_gens) + 1):
            for e in ((1,) if g == used + 1 else (1, -1)):
                if prefix and prefix[-1] == (g, -e):
                    continue
                s = dict(sums)
                s[g] = s.get(g, 0) + e
                if sum(abs(v) for v in s.values()) > remaining:
                    continue
                extend(prefix + ((g, e),), max(used, g), s)

    extend((), 0, {})
    return out
