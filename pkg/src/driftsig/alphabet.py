"""Event alphabet and the symbol encoding shared by the engine and generators.

Events are domain-like strings over lowercase letters, digits, '-', '.'
and '_'.  The engine works on small integer codes; any character outside
the alphabet maps to ``CODE_OTHER``, which no atom (not even the
wildcard) can match.
"""

from __future__ import annotations

import numpy as np

ALPHABET = "abcdefghijklmnopqrstuvwxyz0123456789-._"
ALPHABET_SET = frozenset(ALPHABET)

# Literal characters that may appear unescaped in pattern text; a literal
# dot is written '\.' so it cannot be confused with the wildcard.
LITERAL_CHARS = ALPHABET_SET - {"."}

CODE_OTHER = len(ALPHABET)      # any character outside the alphabet
N_SYMBOLS = len(ALPHABET) + 1   # alphabet codes plus CODE_OTHER
CODE_ANY = 64                   # atom code reserved for the '.' wildcard

CHAR_TO_CODE = {ch: i for i, ch in enumerate(ALPHABET)}

# byte -> code table so encoding is a single bytes.translate pass
_BYTE_TABLE = bytes(
    CHAR_TO_CODE.get(chr(b), CODE_OTHER) for b in range(256)
)


def encode(value: str) -> np.ndarray:
    """Encode one string as a uint8 code array."""
    raw = value.encode("utf-8", "backslashreplace")
    return np.frombuffer(raw.translate(_BYTE_TABLE), dtype=np.uint8)


def encode_many(values) -> tuple[np.ndarray, np.ndarray]:
    """Encode a sequence of strings as (flat codes, offsets).

    ``offsets`` has one extra trailing entry, so string ``j`` occupies
    ``codes[offsets[j]:offsets[j + 1]]``.
    """
    blobs = [v.encode("utf-8", "backslashreplace").translate(_BYTE_TABLE) for v in values]
    offsets = np.zeros(len(blobs) + 1, dtype=np.int64)
    np.cumsum([len(b) for b in blobs], out=offsets[1:])
    codes = np.frombuffer(b"".join(blobs), dtype=np.uint8)
    return codes, offsets


def in_alphabet(value: str) -> bool:
    """True when every character of ``value`` is in the event alphabet."""
    return all(ch in ALPHABET_SET for ch in value)
