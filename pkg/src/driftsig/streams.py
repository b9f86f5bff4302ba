"""Labeled event sources: TSV replay and a drifting synthetic generator.

The synthetic stream stands in for a live corpus.  Positive events are
built from a pool of seed tokens that mutate over time (the adversary
changing tactics); negative events come from a fixed, Zipf-weighted
token pool so that rare negatives drop out of individual windows.  Every
value is ``<letters><digit>.<tld>``, which keeps the two classes
textually similar while guaranteeing that a string never flips class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .alphabet import in_alphabet
from .errors import LabelError, ParseError

# Shape of generated values.  Stems are letters-only (the single digit that
# follows makes the stem parse out unambiguously, so positive and negative
# values can never collide).  The reduced stem alphabet keeps n-gram overlap
# between the two classes high enough that self-training errors can occur;
# the long Zipf tail of negative stems, drawn from an even narrower alphabet,
# means individual windows never see the whole negative population.
STEM_ALPHABET = "abcdefghijkl"
TAIL_ALPHABET = "abcdefgh"
TAIL_START = 100
STEM_MIN_LEN = 5
STEM_MAX_LEN = 8
N_SUFFIXES = 8
TLDS = ("com", "net", "org", "biz")
ZIPF_EXPONENT = 1.0
SWAP_KEEP = 2

MUTATION_KINDS = ("substitution", "insertion", "suffix_swap", "rotation")


@dataclass(frozen=True)
class Event:
    seq: int
    value: str
    truth: int


@dataclass(frozen=True)
class DriftConfig:
    """Parameters of the synthetic evolving-adversary stream."""

    positive_frac: float = 0.34
    drift_rate: float = 0.034
    mutation_weights: tuple[float, float, float, float] = (0.30, 0.10, 0.45, 0.15)
    n_pos_seeds: int = 20
    n_neg_seeds: int = 600
    window_hint: int = 1000
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.positive_frac <= 1.0:
            raise ValueError("positive_frac must be in [0, 1]")
        if not 0.0 <= self.drift_rate <= 1.0:
            raise ValueError("drift_rate must be in [0, 1]")
        if self.n_pos_seeds < 1 or self.n_neg_seeds < 1:
            raise ValueError("seed pools must be non-empty")
        if self.window_hint < 1:
            raise ValueError("window_hint must be >= 1")
        if len(self.mutation_weights) != len(MUTATION_KINDS) or min(self.mutation_weights) < 0:
            raise ValueError("mutation_weights needs one non-negative weight per kind")


def _draw_stem(rng: random.Random, alphabet: str = STEM_ALPHABET) -> str:
    length = rng.randint(STEM_MIN_LEN, STEM_MAX_LEN)
    return "".join(rng.choice(alphabet) for _ in range(length))


def _mutate_stem(stem: str, rng: random.Random, weights, forbidden: frozenset) -> str:
    """Apply one weighted mutation; redraw until the result is a new stem
    that does not collide with the negative pool (keeps labels a function
    of the value).  suffix_swap models a hard re-tool: everything past the
    first couple of characters is replaced."""
    for _ in range(64):
        kind = rng.choices(MUTATION_KINDS, weights=weights)[0]
        if kind == "substitution" or (kind == "insertion" and len(stem) >= STEM_MAX_LEN):
            pos = rng.randrange(len(stem))
            mutated = stem[:pos] + rng.choice(STEM_ALPHABET) + stem[pos + 1 :]
        elif kind == "insertion":
            pos = rng.randrange(len(stem) + 1)
            mutated = stem[:pos] + rng.choice(STEM_ALPHABET) + stem[pos:]
        elif kind == "suffix_swap":
            keep = min(SWAP_KEEP, len(stem) - 1)
            mutated = stem[:keep] + "".join(rng.choice(STEM_ALPHABET) for _ in range(len(stem) - keep))
        else:  # rotation
            mutated = stem[1:] + stem[0]
        if mutated != stem and mutated not in forbidden:
            return mutated
    return stem


def gen_synthetic(cfg: DriftConfig) -> Iterator[Event]:
    """Infinite deterministic stream of labeled events.

    Each event is positive with probability ``positive_frac``.  Every
    ``window_hint`` events each positive stem mutates independently with
    probability ``drift_rate``; the negative pool never changes, so the
    truth label is a fixed function of the value.
    """
    rng = random.Random(cfg.seed)

    neg_stems: list[str] = []
    taken = set()
    while len(neg_stems) < cfg.n_neg_seeds:
        alphabet = TAIL_ALPHABET if len(neg_stems) >= TAIL_START else STEM_ALPHABET
        stem = _draw_stem(rng, alphabet)
        if stem not in taken:
            taken.add(stem)
            neg_stems.append(stem)
    neg_set = frozenset(neg_stems)

    pos_stems: list[str] = []
    while len(pos_stems) < cfg.n_pos_seeds:
        stem = _draw_stem(rng)
        if stem not in taken:
            taken.add(stem)
            pos_stems.append(stem)

    # rare negatives matter: Zipf weights give the pool a long tail
    neg_weights = [1.0 / (i + 1) ** ZIPF_EXPONENT for i in range(cfg.n_neg_seeds)]
    tld_of = {stem: rng.choice(TLDS) for stem in neg_stems + pos_stems}

    def value_of(stem: str) -> str:
        return f"{stem}{rng.randrange(N_SUFFIXES)}.{tld_of[stem]}"

    seq = 0
    while True:
        if seq > 0 and seq % cfg.window_hint == 0:
            for i, stem in enumerate(pos_stems):
                if rng.random() < cfg.drift_rate:
                    mutated = _mutate_stem(stem, rng, cfg.mutation_weights, neg_set)
                    if mutated not in tld_of:
                        tld_of[mutated] = rng.choice(TLDS)
                    pos_stems[i] = mutated
        if rng.random() < cfg.positive_frac:
            stem = rng.choice(pos_stems)
            truth = 1
        else:
            stem = rng.choices(neg_stems, weights=neg_weights)[0]
            truth = 0
        yield Event(seq, value_of(stem), truth)
        seq += 1


def load_tsv(path) -> Iterator[Event]:
    """Replay an events TSV (``seq<TAB>value<TAB>label``, no header).

    Yields events in file order with ``seq`` equal to the 0-based line
    index.  Raises :class:`ParseError` (1-based line number) on malformed
    rows and :class:`LabelError` when a value reappears with a different
    label.
    """
    labels: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            row = line.rstrip("\n").rstrip("\r")
            if not row:
                continue
            parts = row.split("\t")
            if len(parts) != 3:
                raise ParseError(line_no, f"expected 3 tab-separated fields, got {len(parts)}")
            seq_text, value, label_text = parts
            try:
                int(seq_text)
            except ValueError:
                raise ParseError(line_no, f"bad sequence number {seq_text!r}") from None
            if label_text not in ("0", "1"):
                raise ParseError(line_no, f"label must be 0 or 1, got {label_text!r}")
            if not value or not in_alphabet(value):
                raise ParseError(line_no, f"value outside the event alphabet: {value!r}")
            truth = int(label_text)
            if labels.setdefault(value, truth) != truth:
                raise LabelError(value)
            yield Event(line_no - 1, value, truth)


def write_tsv(events, path) -> int:
    """Write events in the TSV format; returns the number of rows."""
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for event in events:
            fh.write(f"{event.seq}\t{event.value}\t{event.truth}\n")
            n += 1
    return n


def load_blacklist(path) -> dict[str, set[str]]:
    """Read a ``category<TAB>domain`` file into a category map."""
    categories: dict[str, set[str]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            row = line.strip()
            if not row or row.startswith("#"):
                continue
            parts = row.split("\t")
            if len(parts) != 2:
                raise ParseError(line_no, "expected category<TAB>domain")
            category, domain = parts
            categories.setdefault(category, set()).add(domain)
    return categories


def bootstrap_label(value: str, blacklist: dict[str, set[str]], positive_categories) -> int:
    """1 when the value's registered-domain suffix sits in a positive category.

    Suffix semantics: ``x.doubleclick.net`` inherits the label of
    ``doubleclick.net``.
    """
    positive = set()
    for category in positive_categories:
        positive.update(blacklist.get(category, ()))
    if not positive:
        return 0
    parts = value.split(".")
    for i in range(len(parts)):
        if ".".join(parts[i:]) in positive:
            return 1
    return 0
