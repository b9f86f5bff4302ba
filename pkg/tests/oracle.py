"""Independent reference implementations used as test oracles.

The matcher here is a naive recursive backtracker over the pattern AST,
written without looking at the engine's simulation: quantifiers consume
greedily and give back one repetition at a time.  Slow and obviously
correct is the whole point.
"""

from __future__ import annotations

import random
from itertools import combinations

from driftsig.alphabet import ALPHABET, ALPHABET_SET
from driftsig.patterns import Atom, Pattern, Quant


def _atom_accepts(atom: Atom, ch: str) -> bool:
    if atom.char is None:
        return ch in ALPHABET_SET
    return ch == atom.char


def backtrack_match(pattern: Pattern, s: str) -> bool:
    """Reference semantics for match_one."""
    atoms = pattern.atoms
    n = len(atoms)
    limit = len(s)

    def walk(k: int, i: int) -> bool:
        if k == n:
            return i == limit if pattern.anchored_end else True
        atom = atoms[k]
        if atom.quant is Quant.ONE:
            return i < limit and _atom_accepts(atom, s[i]) and walk(k + 1, i + 1)
        if atom.quant is Quant.ZERO_OR_ONE:
            if i < limit and _atom_accepts(atom, s[i]) and walk(k + 1, i + 1):
                return True
            return walk(k + 1, i)
        # greedy repetition: longest run first, backing off one at a time
        j = i
        while j < limit and _atom_accepts(atom, s[j]):
            j += 1
        floor = i + 1 if atom.quant is Quant.ONE_OR_MORE else i
        for stop in range(j, floor - 1, -1):
            if walk(k + 1, stop):
                return True
        return False

    if pattern.anchored_start:
        return walk(0, 0)
    return any(walk(0, start) for start in range(limit + 1))


def match_set_bruteforce(patterns, s: str) -> set[int]:
    """Per-pattern union; the reference for MultiMatcher.match_set."""
    return {i for i, p in enumerate(patterns) if backtrack_match(p, s)}


def random_pattern(rng: random.Random, max_atoms: int = 8) -> Pattern:
    """Random well-formed pattern biased toward collisions on few letters."""
    chars = "ab01.-_c"
    n = rng.randint(1, max_atoms)
    atoms = []
    for _ in range(n):
        if rng.random() < 0.2:
            atoms.append(Atom(None))
        else:
            quant = rng.choice(list(Quant)) if rng.random() < 0.4 else Quant.ONE
            atoms.append(Atom(rng.choice(chars), quant))
    if all(a.is_any for a in atoms):
        atoms[rng.randrange(n)] = Atom("a")
    return Pattern(
        tuple(atoms),
        anchored_start=rng.random() < 0.25,
        anchored_end=rng.random() < 0.25,
    )


def random_subject(rng: random.Random, max_len: int = 16) -> str:
    """Random subject string; occasionally injects a non-alphabet char."""
    chars = "ab01.-_c"
    s = "".join(rng.choice(chars) for _ in range(rng.randint(0, max_len)))
    if s and rng.random() < 0.1:
        k = rng.randrange(len(s))
        s = s[:k] + rng.choice("AZ%") + s[k + 1 :]
    return s


def minimum_cover_size(universe: frozenset, subsets) -> int | None:
    """Exhaustive smallest-cover search for tiny instances."""
    indices = range(len(subsets))
    for size in range(len(subsets) + 1):
        for combo in combinations(indices, size):
            covered = set()
            for i in combo:
                covered |= subsets[i]
            if universe <= covered:
                return size
    return None


def spearman_rho(xs, ys) -> float:
    """Spearman rank correlation, small-n, no tie correction beyond averaging."""

    def ranks(vals):
        order = sorted(range(len(vals)), key=lambda i: vals[i])
        r = [0.0] * len(vals)
        i = 0
        while i < len(order):
            j = i
            while j + 1 < len(order) and vals[order[j + 1]] == vals[order[i]]:
                j += 1
            avg = (i + j) / 2 + 1
            for k in range(i, j + 1):
                r[order[k]] = avg
            i = j + 1
        return r

    rx, ry = ranks(xs), ranks(ys)
    n = len(xs)
    mx = sum(rx) / n
    my = sum(ry) / n
    num = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    dx = sum((a - mx) ** 2 for a in rx) ** 0.5
    dy = sum((b - my) ** 2 for b in ry) ** 0.5
    if dx == 0 or dy == 0:
        return 0.0
    return num / (dx * dy)
