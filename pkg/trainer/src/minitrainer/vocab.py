"""Token vocabulary derived from a dataset manifest.

Every vertex id is a single token, as are the separator, the item markers,
each uppercase hash character, the pause token and the dummy token used by
the multi-token objective. The dummy and pause tokens never occur in any
body, so they are safe control codes.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

PAD = "<pad>"
BOS = "<bos>"
EOS = "<eos>"
DUMMY = "$"
PAUSE = "<p>"
SEPARATOR = ","
TRIANGLE_MARKER = "triangle:"
EDGE_MARKER = "edge:"


@dataclass(frozen=True)
class TaskVocabulary:
    tokens: tuple[str, ...]

    def __post_init__(self):
        mapping = {}
        for i, tok in enumerate(self.tokens):
            if tok in mapping:
                raise ValueError(f"duplicate token {tok!r}")
            mapping[tok] = i
        object.__setattr__(self, "_ids", mapping)

    def __len__(self) -> int:
        return len(self.tokens)

    def encode(self, token: str) -> int:
        try:
            return self._ids[token]
        except KeyError:
            raise KeyError(f"token {token!r} not in vocabulary") from None

    def decode(self, idx: int) -> str:
        return self.tokens[idx]

    @property
    def pad_id(self) -> int:
        return self._ids[PAD]

    @property
    def bos_id(self) -> int:
        return self._ids[BOS]

    @property
    def eos_id(self) -> int:
        return self._ids[EOS]

    @property
    def dummy_id(self) -> int:
        return self._ids[DUMMY]


def vertex_count_for(config: dict) -> int:
    task = config["task"]
    if task == "sibling":
        return config["num_parents"] * (1 + config["children_per_parent"])
    if task == "triangle":
        return config["num_vertices"]
    return config["vocab_size"]


def vocab_for_config(config: dict) -> TaskVocabulary:
    """Build the vocabulary a model needs for one task configuration."""
    task = config["task"]
    tokens = [PAD, BOS, EOS, DUMMY, PAUSE]
    tokens.extend(string.ascii_uppercase)
    if task == "triangle":
        tokens.extend([TRIANGLE_MARKER, EDGE_MARKER, SEPARATOR])
    elif task in ("circle", "line"):
        tokens.append(SEPARATOR)
    tokens.extend(str(v) for v in range(vertex_count_for(config)))
    return TaskVocabulary(tuple(tokens))
