"""Matching engine: per-pattern simulation and a combined multi-pattern automaton.

Each pattern compiles to a short chain of states: state 0 is the start
and state ``i`` means "first ``i`` atoms consumed".  Quantifiers become
two flags per atom (may repeat; may be skipped), so simulation is a
linear scan over states -- no backtracking.  ``MultiMatcher`` glues all
chains into one subset-construction automaton so a whole pattern set is
matched in a single pass over the input, with one table lookup per
character regardless of how many patterns are loaded.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from . import _kernels
from .alphabet import CHAR_TO_CODE, CODE_ANY, N_SYMBOLS, encode, encode_many
from .errors import CapacityError
from .patterns import Pattern, Quant

DEFAULT_STATE_LIMIT = 1_000_000

_LOOPING = (Quant.ZERO_OR_MORE, Quant.ONE_OR_MORE)
_SKIPPABLE = (Quant.ZERO_OR_ONE, Quant.ZERO_OR_MORE)


def _atom_code(atom) -> int:
    return CODE_ANY if atom.is_any else CHAR_TO_CODE[atom.char]


def pack_patterns(patterns) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Flatten patterns into (codes, loop, skip, offsets, flags) kernel arrays."""
    pats = list(patterns)
    offsets = np.zeros(len(pats) + 1, dtype=np.int64)
    np.cumsum([len(p.atoms) for p in pats], out=offsets[1:])
    total = int(offsets[-1])
    codes = np.zeros(total, dtype=np.uint8)
    loop = np.zeros(total, dtype=np.uint8)
    skip = np.zeros(total, dtype=np.uint8)
    flags = np.zeros(len(pats), dtype=np.uint8)
    for p, pat in enumerate(pats):
        base = int(offsets[p])
        for i, atom in enumerate(pat.atoms):
            codes[base + i] = _atom_code(atom)
            loop[base + i] = atom.quant in _LOOPING
            skip[base + i] = atom.quant in _SKIPPABLE
        flags[p] = (1 if pat.anchored_start else 0) | (2 if pat.anchored_end else 0)
    return codes, loop, skip, offsets, flags


def match_many(patterns, values) -> np.ndarray:
    """Boolean matrix: entry [p, j] is True when pattern p matches values[j]."""
    codes, loop, skip, offsets, flags = pack_patterns(patterns)
    scodes, s_off = encode_many(values)
    return _kernels.nfa_match_matrix(codes, loop, skip, offsets, flags, scodes, s_off)


def match_any_of(patterns, values) -> np.ndarray:
    """Boolean vector: entry [p] is True when pattern p matches some value.

    Same result as ``match_many(...).any(axis=1)`` but may stop scanning a
    pattern at its first hit.
    """
    codes, loop, skip, offsets, flags = pack_patterns(patterns)
    scodes, s_off = encode_many(values)
    return _kernels.nfa_match_any(codes, loop, skip, offsets, flags, scodes, s_off)


def match_one(pattern: Pattern, value: str) -> bool:
    """True when the pattern matches somewhere in ``value``.

    Containment semantics: an unanchored pattern matches if any
    substring of ``value`` belongs to its language; anchors pin the
    match to the start and/or end.  Characters outside the event
    alphabet never match anything.
    """
    return bool(match_many([pattern], [value])[0, 0])


class MultiMatcher:
    """Immutable combined automaton over an ordered pattern set.

    Built once by :func:`compile_set`; matching never mutates state, so
    instances can be shared freely across threads.
    """

    def __init__(self, patterns, trans, hit_run, hit_end, run_ids, end_ids, always, state_limit):
        self.patterns = tuple(patterns)
        self._trans = trans
        self._hit_run = hit_run
        self._hit_end = hit_end
        self._run_ids = run_ids
        self._end_ids = end_ids
        self._always = always
        self.state_limit = state_limit
        trans.setflags(write=False)
        hit_run.setflags(write=False)
        hit_end.setflags(write=False)

    @property
    def n_states(self) -> int:
        return self._trans.shape[0]

    def scan_states(self, value: str):
        """Automaton states visited while reading ``value``, including the
        initial one -- exactly ``len(value) + 1`` entries, one shared pass."""
        states = [0]
        state = 0
        trans = self._trans
        for c in encode(value):
            state = int(trans[state, c])
            states.append(state)
        return states

    def match_set(self, value: str) -> set[int]:
        """Indices of all patterns matching ``value``."""
        matched = set(self._always)
        states = self.scan_states(value)
        for state in states:
            matched.update(self._run_ids[state])
        matched.update(self._end_ids[states[-1]])
        return matched

    def match_any(self, value: str) -> bool:
        """True when at least one pattern matches ``value``."""
        if self._always:
            return True
        state = 0
        if self._hit_run[0]:
            return True
        trans = self._trans
        hit_run = self._hit_run
        for c in encode(value):
            state = int(trans[state, c])
            if hit_run[state]:
                return True
        return bool(self._hit_end[state])

    def match_any_batch(self, values) -> np.ndarray:
        """Vectorized :meth:`match_any` over a sequence of strings."""
        if self._always:
            return np.ones(len(values), dtype=bool)
        scodes, s_off = encode_many(values)
        return _kernels.dfa_match_any(self._trans, self._hit_run, self._hit_end, scodes, s_off)


def compile_set(patterns, state_limit: int = DEFAULT_STATE_LIMIT) -> MultiMatcher:
    """Compile patterns into one shared automaton.

    Raises :class:`CapacityError` if subset construction needs more than
    ``state_limit`` states.
    """
    pats = [p for p in patterns]
    n_states = sum(len(p.atoms) + 1 for p in pats)

    # flat chain-NFA arrays; state layout per pattern: start, then one
    # state per atom, chains laid out back to back
    code = np.zeros(n_states, dtype=np.int16)
    loop = np.zeros(n_states, dtype=np.uint8)
    skip = np.zeros(n_states, dtype=np.uint8)
    is_start = np.zeros(n_states, dtype=bool)
    accept_of = np.full(n_states, -1, dtype=np.int64)
    starts = []
    base = 0
    for pid, pat in enumerate(pats):
        starts.append(base)
        is_start[base] = True
        for i, atom in enumerate(pat.atoms, start=1):
            code[base + i] = _atom_code(atom)
            loop[base + i] = atom.quant in _LOOPING
            skip[base + i] = atom.quant in _SKIPPABLE
        accept_of[base + len(pat.atoms)] = pid
        base += len(pat.atoms) + 1

    def closed(states) -> set[int]:
        out = set(states)
        for t in sorted(states):
            v = t + 1
            while v < n_states and not is_start[v] and skip[v]:
                out.add(v)
                v += 1
        return out

    def matches(state: int, sym: int) -> bool:
        c = code[state]
        return c == sym or (c == CODE_ANY and sym != N_SYMBOLS - 1)

    def move(srcs, sym: int) -> set[int]:
        out = set()
        for u in srcs:
            if not is_start[u] and loop[u] and matches(u, sym):
                out.add(u)
            v = u + 1
            if v < n_states and not is_start[v] and matches(v, sym):
                out.add(v)
        return out

    # States live while the scan runs regardless of position: the start
    # states of unanchored patterns plus their skip closures.  They are in
    # every subset, so they are factored out of the stored sets and their
    # per-symbol moves are computed once.
    core = frozenset(closed({s for s, p in zip(starts, pats) if not p.anchored_start}))
    core_move = [frozenset(closed(move(core, sym)) - core) for sym in range(N_SYMBOLS)]

    start_store = frozenset(closed(set(starts)) - core)
    index = {start_store: 0}
    stores = [start_store]
    rows = []
    work = deque([0])
    while work:
        sid = work.popleft()
        store = stores[sid]
        row = np.empty(N_SYMBOLS, dtype=np.int32)
        for sym in range(N_SYMBOLS):
            target = frozenset(closed(move(store, sym)) - core) | core_move[sym]
            nid = index.get(target)
            if nid is None:
                nid = len(stores)
                if nid >= state_limit:
                    raise CapacityError(
                        f"combined automaton needs more than {state_limit} states"
                    )
                index[target] = nid
                stores.append(target)
                work.append(nid)
            row[sym] = nid
        rows.append(row)

    trans = np.vstack(rows) if rows else np.zeros((1, N_SYMBOLS), dtype=np.int32)

    always = tuple(sorted(int(accept_of[t]) for t in core if accept_of[t] >= 0))
    run_ids = []
    end_ids = []
    for store in stores:
        run, endl = [], []
        for t in store:
            pid = int(accept_of[t])
            if pid >= 0:
                (endl if pats[pid].anchored_end else run).append(pid)
        run_ids.append(tuple(sorted(run)))
        end_ids.append(tuple(sorted(endl)))
    hit_run = np.array([1 if ids else 0 for ids in run_ids], dtype=np.uint8)
    hit_end = np.array([1 if ids else 0 for ids in end_ids], dtype=np.uint8)

    return MultiMatcher(pats, trans, hit_run, hit_end, tuple(run_ids), tuple(end_ids), always, state_limit)


def match_set(matcher: MultiMatcher, value: str) -> set[int]:
    """Indices of matcher patterns that match ``value``."""
    return matcher.match_set(value)
