"""Detection model: an ordered disjunction of patterns, plus file I/O.

A model predicts positive when any of its patterns matches the event
string; the empty model predicts negative for everything.  Updates never
drop patterns -- new ones are unioned in, ensemble style.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .engine import DEFAULT_STATE_LIMIT, MultiMatcher, compile_set
from .patterns import Pattern, parse_pattern, render_pattern


@dataclass
class Model:
    patterns: tuple[Pattern, ...] = ()
    generation: int = 0
    state_limit: int = DEFAULT_STATE_LIMIT
    _matcher: MultiMatcher | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        texts = [render_pattern(p) for p in self.patterns]
        if len(set(texts)) != len(texts):
            raise ValueError("model patterns must be unique")

    @property
    def size(self) -> int:
        return len(self.patterns)

    def texts(self) -> list[str]:
        return [render_pattern(p) for p in self.patterns]

    @property
    def matcher(self) -> MultiMatcher:
        # compiled once per model generation, then reused
        if self._matcher is None:
            self._matcher = compile_set(self.patterns, self.state_limit)
        return self._matcher

    def predict(self, value: str) -> int:
        return 1 if self.matcher.match_any(value) else 0

    def predict_batch(self, values) -> np.ndarray:
        """Labels (0/1) for a sequence of event strings."""
        if not self.patterns:
            return np.zeros(len(values), dtype=np.int8)
        return self.matcher.match_any_batch(values).astype(np.int8)

    def union(self, new_patterns) -> "Model":
        """Next-generation model with ``new_patterns`` appended (dedup by text)."""
        known = {render_pattern(p) for p in self.patterns}
        merged = list(self.patterns)
        for pat in new_patterns:
            text = render_pattern(pat)
            if text not in known:
                known.add(text)
                merged.append(pat)
        return Model(tuple(merged), self.generation + 1, self.state_limit)


def save_model(model: Model, path) -> None:
    """Write one rendered pattern per line (the model file format)."""
    with open(path, "w", encoding="utf-8") as fh:
        for text in model.texts():
            fh.write(text + "\n")


def load_model(path) -> Model:
    """Read a model file; '#' lines are comments, blank lines are skipped."""
    patterns = []
    seen = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line not in seen:
                seen.add(line)
                patterns.append(parse_pattern(line))
    return Model(tuple(patterns))
