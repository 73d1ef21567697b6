"""Dataset loading against the benchmark's file contract.

Reads `manifest.json` plus the TAB-separated `prefix TAB body` training
file and encodes each line as `prefix tokens, <bos>, body tokens, <eos>`
padded to a common context length. The loss masks distinguish response
positions (body + end marker) from the body-token positions that the
multi-token objective replaces with dummies.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import torch

from .vocab import PAUSE, TaskVocabulary, vocab_for_config


def prefix_tokens(text: str) -> list[str]:
    """Prefix field -> model tokens: one per hash char / pause repeat."""
    if text == "":
        return []
    if text.isalpha() and text.isupper():
        return list(text)
    count, rem = divmod(len(text), len(PAUSE))
    if rem == 0 and text == PAUSE * count:
        return [PAUSE] * count
    raise ValueError(f"unrecognized prefix field {text!r}")


@dataclass
class EncodedDataset:
    """Training lines as padded id tensors plus loss masks."""

    seq: torch.Tensor          # [N, L] token ids
    response_mask: torch.Tensor  # [N, L] True at body + eos positions
    body_mask: torch.Tensor      # [N, L] True at body positions only
    vocab: TaskVocabulary
    config: dict
    prefix_texts: list[str]
    context_len: int

    def __len__(self) -> int:
        return self.seq.shape[0]


def load_manifest(manifest_path) -> tuple[dict, Path]:
    manifest_path = Path(manifest_path)
    if manifest_path.is_dir():
        manifest_path = manifest_path / "manifest.json"
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    return manifest, manifest_path.parent


def read_train_lines(manifest: dict, base_dir: Path) -> list[tuple[str, list[str]]]:
    raw = (base_dir / manifest["train_path"]).read_text(encoding="utf-8")
    lines = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        prefix_text, _, body_text = line.partition("\t")
        tokens = body_text.split(" ")
        if not body_text or "" in tokens:
            raise ValueError(f"train line {lineno} is malformed: {line!r}")
        lines.append((prefix_text, tokens))
    return lines


def encode_dataset(manifest: dict, base_dir: Path) -> EncodedDataset:
    config = manifest["config"]
    vocab = vocab_for_config(config)
    lines = read_train_lines(manifest, base_dir)

    encoded = []
    max_len = 0
    for prefix_text, body in lines:
        ptoks = prefix_tokens(prefix_text)
        ids = ([vocab.encode(t) for t in ptoks] + [vocab.bos_id]
               + [vocab.encode(t) for t in body] + [vocab.eos_id])
        body_start = len(ptoks) + 1
        encoded.append((ids, body_start, len(body)))
        max_len = max(max_len, len(ids))

    n = len(encoded)
    seq = torch.full((n, max_len), vocab.pad_id, dtype=torch.long)
    response_mask = torch.zeros((n, max_len), dtype=torch.bool)
    body_mask = torch.zeros((n, max_len), dtype=torch.bool)
    for i, (ids, body_start, body_len) in enumerate(encoded):
        seq[i, :len(ids)] = torch.tensor(ids, dtype=torch.long)
        response_mask[i, body_start:body_start + body_len + 1] = True  # body + eos
        body_mask[i, body_start:body_start + body_len] = True

    return EncodedDataset(
        seq=seq,
        response_mask=response_mask,
        body_mask=body_mask,
        vocab=vocab,
        config=config,
        prefix_texts=[p for p, _ in lines],
        context_len=max_len,
    )
