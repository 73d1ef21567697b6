"""Autoregressive decoding into benchmark-format generations files.

Each draw is independent: build a prefix (fresh hash, training hash, null
or pause), start from the begin marker, decode under the chosen sampler
until the end marker or the context cap, and write one `prefix TAB body`
line. Truncated generations are written as-is; the scorer marks them
incoherent.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import torch
import torch.nn.functional as F

from .model import ModelConfig, TinyDecoder
from .vocab import PAUSE, TaskVocabulary

PREFIX_SOURCES = ("hash", "train-hash", "null", "pause")


@dataclass(frozen=True)
class SamplerSpec:
    kind: str                     # "greedy" | "temperature" | "nucleus"
    value: Optional[float] = None

    @classmethod
    def parse(cls, spec: str) -> "SamplerSpec":
        if spec == "greedy":
            return cls("greedy")
        kind, sep, value = spec.partition(":")
        if sep and kind in ("temp", "temperature"):
            t = float(value)
            if t <= 0:
                raise ValueError("temperature must be positive")
            return cls("temperature", t)
        if sep and kind == "nucleus":
            p = float(value)
            if not 0 < p <= 1:
                raise ValueError("nucleus mass must be in (0, 1]")
            return cls("nucleus", p)
        raise ValueError(f"unknown sampler {spec!r} "
                         "(use greedy, temp:T or nucleus:P)")


def load_checkpoint(path) -> tuple[TinyDecoder, TaskVocabulary, dict]:
    payload = torch.load(path, map_location="cpu", weights_only=False)
    model = TinyDecoder(ModelConfig.from_dict(payload["model_config"]))
    model.load_state_dict(payload["model_state"])
    model.eval()
    vocab = TaskVocabulary(tuple(payload["vocab_tokens"]))
    return model, vocab, payload


def fresh_hashes(count: int, length: int, taken: set, seed: int) -> list[str]:
    """Uppercase hash strings disjoint from `taken` and from each other."""
    rng = random.Random(seed)
    if 26 ** length <= len(taken) + count:
        raise ValueError("hash space too small for a disjoint evaluation pool")
    out = []
    seen = set(taken)
    while len(out) < count:
        text = "".join(rng.choice(string.ascii_uppercase) for _ in range(length))
        if text not in seen:
            seen.add(text)
            out.append(text)
    return out


def build_prefix_texts(source: str, count: int, meta: dict, seed: int) -> list[str]:
    if source == "null":
        return [""] * count
    if source == "pause":
        return [PAUSE * meta["prefix_length"]] * count
    train = meta.get("train_prefixes", [])
    if source == "train-hash":
        if meta.get("prefix_mode") != "hash":
            raise ValueError("train-hash prompting needs a hash-conditioned checkpoint")
        return [train[i % len(train)] for i in range(count)]
    if source == "hash":
        return fresh_hashes(count, meta["prefix_length"], set(train), seed)
    raise ValueError(f"unknown prefix source {source!r}")


def _pick(logits: torch.Tensor, sampler: SamplerSpec,
          rng: torch.Generator) -> torch.Tensor:
    """Next-token ids [B] from final-position logits [B, V]."""
    if sampler.kind == "greedy":
        return logits.argmax(dim=-1)
    if sampler.kind == "temperature":
        probs = F.softmax(logits / sampler.value, dim=-1)
        return torch.multinomial(probs, 1, generator=rng).squeeze(-1)
    # nucleus: smallest top set reaching mass p, renormalized
    probs = F.softmax(logits, dim=-1)
    sorted_probs, order = probs.sort(dim=-1, descending=True)
    cum = sorted_probs.cumsum(dim=-1)
    keep = cum - sorted_probs < sampler.value  # always keeps the top token
    sorted_probs = sorted_probs * keep
    sorted_probs = sorted_probs / sorted_probs.sum(dim=-1, keepdim=True)
    picked = torch.multinomial(sorted_probs, 1, generator=rng)
    return order.gather(-1, picked).squeeze(-1)


@torch.no_grad()
def decode(model: TinyDecoder, vocab: TaskVocabulary, prefix_texts: list[str],
           sampler: SamplerSpec, seed: int) -> list[list[str]]:
    """Batched decoding; returns the body tokens of each generation."""
    from .data import prefix_tokens

    rng = torch.Generator().manual_seed(seed)
    starts = [[vocab.encode(t) for t in prefix_tokens(p)] + [vocab.bos_id]
              for p in prefix_texts]
    start_len = len(starts[0])
    if any(len(s) != start_len for s in starts):
        raise ValueError("all prefixes in one batch must have equal length")
    tokens = torch.tensor(starts, dtype=torch.long)

    max_new = model.config.context_len - start_len
    for _ in range(max_new):
        logits = model(tokens)[:, -1, :]
        nxt = _pick(logits, sampler, rng)
        tokens = torch.cat([tokens, nxt[:, None]], dim=1)

    bodies = []
    for row in tokens[:, start_len:].tolist():
        body = []
        for idx in row:
            if idx == vocab.eos_id:
                break
            body.append(vocab.decode(idx))
        bodies.append(body)
    return bodies


def generate_file(checkpoint_path, prefix_source: str, sampler_spec: str,
                  count: int, seed: int, out_path) -> Path:
    """Decode `count` independent generations and write the benchmark file."""
    model, vocab, meta = load_checkpoint(checkpoint_path)
    sampler = SamplerSpec.parse(sampler_spec)
    prefixes = build_prefix_texts(prefix_source, count, meta, seed)
    bodies = decode(model, vocab, prefixes, sampler, seed)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", encoding="utf-8") as fh:
        for prefix_text, body in zip(prefixes, bodies):
            fh.write(prefix_text + "\t" + " ".join(body) + "\n")
    return out_path
