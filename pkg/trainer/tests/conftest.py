"""Shared fixtures: handcrafted dataset directories and a tiny model."""

import json

import pytest
import torch

from minitrainer import ModelConfig, TinyDecoder, encode_dataset


def write_dataset_dir(path, lines, config, prefix_mode="hash", prefix_length=4):
    """Materialize the benchmark's file contract by hand."""
    path.mkdir(parents=True, exist_ok=True)
    train = "".join(f"{prefix}\t{body}\n" for prefix, body in lines)
    (path / "train.txt").write_text(train, encoding="utf-8")
    manifest = {
        "engine_version": "test",
        "config": config,
        "prefix_mode": prefix_mode,
        "prefix_length": prefix_length,
        "train_path": "train.txt",
        "graph_path": None,
        "counts": {"train_size": len(lines)},
        "digests": {},
    }
    (path / "manifest.json").write_text(json.dumps(manifest), encoding="utf-8")
    return path


SIBLING_CONFIG = {
    "task": "sibling",
    "train_size": 4,
    "seed": 0,
    "num_parents": 2,
    "children_per_parent": 3,
    "sibling_order": "sibling_first",
}

SIBLING_LINES = [
    ("ABCD", "2 3 0"),
    ("EFGH", "4 2 0"),
    ("IJKL", "5 7 1"),
    ("MNOP", "6 5 1"),
]


@pytest.fixture()
def sibling_dataset(tmp_path):
    d = write_dataset_dir(tmp_path / "data", SIBLING_LINES, SIBLING_CONFIG)
    manifest = json.loads((d / "manifest.json").read_text())
    return encode_dataset(manifest, d)


@pytest.fixture()
def randomized_model(sibling_dataset):
    """Tiny model with a non-degenerate head (zero head ties every logit)."""
    torch.manual_seed(0)
    model = TinyDecoder(ModelConfig(
        vocab_size=len(sibling_dataset.vocab),
        context_len=sibling_dataset.context_len,
        layers=2, width=32, heads=2))
    torch.nn.init.normal_(model.head.weight, std=0.2)
    torch.nn.init.normal_(model.head.bias, std=0.2)
    return model
