"""Minibatch training loop with periodic checkpoints and a loss log."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import torch

from .data import encode_dataset, load_manifest
from .model import ModelConfig, TinyDecoder
from .objectives import loss_hybrid, loss_multi_token, loss_next_token, make_batch


@dataclass(frozen=True)
class TrainerConfig:
    multi_weight: float = 0.0     # weight of the multi-token term
    steps: int = 2000
    seed: int = 0
    lr: float = 1e-3
    batch_size: int = 64
    layers: int = 4
    width: int = 256
    heads: int = 4
    checkpoint_every: int = 0     # 0: only the final checkpoint
    log_every: int = 100

    def __post_init__(self):
        if not 0.0 <= self.multi_weight <= 1.0:
            raise ValueError("multi-token weight must be in [0, 1]")
        if self.steps < 0 or self.batch_size < 1:
            raise ValueError("steps must be >= 0 and batch_size >= 1")


class DivergedError(RuntimeError):
    """Training loss became non-finite."""


def _log_losses(model, batch) -> dict:
    with torch.no_grad():
        return {
            "next_token": float(loss_next_token(model, batch)),
            "multi_token": float(loss_multi_token(model, batch)),
        }


def train(manifest_path, config: TrainerConfig, out_dir) -> Path:
    """Train on one dataset; returns the final checkpoint path."""
    manifest, base_dir = load_manifest(manifest_path)
    dataset = encode_dataset(manifest, base_dir)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    torch.manual_seed(config.seed)
    model_config = ModelConfig(
        vocab_size=len(dataset.vocab),
        context_len=dataset.context_len,
        layers=config.layers,
        width=config.width,
        heads=config.heads,
    )
    model = TinyDecoder(model_config)
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.lr)
    sampler = torch.Generator().manual_seed(config.seed)

    def checkpoint_payload(step: int) -> dict:
        return {
            "step": step,
            "model_state": model.state_dict(),
            "model_config": model_config.to_dict(),
            "vocab_tokens": list(dataset.vocab.tokens),
            "task_config": dataset.config,
            "prefix_mode": manifest["prefix_mode"],
            "prefix_length": manifest["prefix_length"],
            "train_prefixes": dataset.prefix_texts,
            "trainer_config": asdict(config),
        }

    log = []
    n = len(dataset)
    for step in range(1, config.steps + 1):
        indices = torch.randint(n, (config.batch_size,), generator=sampler)
        batch = make_batch(dataset, indices)
        loss, _ = loss_hybrid(model, batch, config.multi_weight)
        loss_value = float(loss.detach())
        if not math.isfinite(loss_value):
            raise DivergedError(f"loss became {loss_value} at step {step}")
        optimizer.zero_grad(set_to_none=True)
        loss.backward()
        optimizer.step()

        if step == 1 or step % config.log_every == 0 or step == config.steps:
            entry = {"step": step, **_log_losses(model, batch)}
            log.append(entry)
            print(f"step {step:>6}  next-token {entry['next_token']:.4f}  "
                  f"multi-token {entry['multi_token']:.4f}")
        if config.checkpoint_every and step % config.checkpoint_every == 0:
            torch.save(checkpoint_payload(step), out_dir / f"step-{step:06d}.pt")

    if config.steps == 0:
        # record the untouched init so downstream tooling has a checkpoint
        log.append({"step": 0, **_log_losses(model, make_batch(
            dataset, torch.arange(min(n, config.batch_size))))})

    final_path = out_dir / "final.pt"
    torch.save(checkpoint_payload(config.steps), final_path)
    (out_dir / "training_log.json").write_text(
        json.dumps({"log": log, "trainer_config": asdict(config)}, indent=2) + "\n",
        encoding="utf-8")
    return final_path
