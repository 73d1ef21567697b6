"""Vocabulary derivation and dataset encoding against the file contract."""

import json

import pytest

from minitrainer import encode_dataset, prefix_tokens, vocab_for_config
from minitrainer.vocab import BOS, DUMMY, EOS, PAD, PAUSE, TaskVocabulary

from conftest import SIBLING_CONFIG, SIBLING_LINES, write_dataset_dir


def test_vocab_for_sibling_task():
    vocab = vocab_for_config(SIBLING_CONFIG)
    # 5 specials + 26 hash letters + 2 parents + 6 children
    assert len(vocab) == 5 + 26 + 8
    for tok in (PAD, BOS, EOS, DUMMY, PAUSE, "A", "Z", "0", "7"):
        assert vocab.decode(vocab.encode(tok)) == tok
    with pytest.raises(KeyError):
        vocab.encode("8")  # beyond the vertex range
    with pytest.raises(KeyError):
        vocab.encode(",")  # sibling bodies have no separator


def test_vocab_for_triangle_and_construction_tasks():
    tri = vocab_for_config({"task": "triangle", "num_vertices": 9})
    assert tri.encode("triangle:") != tri.encode("edge:")
    assert "," in tri.tokens
    circ = vocab_for_config({"task": "circle", "vocab_size": 7})
    assert "," in circ.tokens
    assert "triangle:" not in circ.tokens
    assert len(circ.tokens) == 5 + 26 + 1 + 7


def test_duplicate_tokens_rejected():
    with pytest.raises(ValueError):
        TaskVocabulary(("a", "b", "a"))


def test_prefix_tokens_modes():
    assert prefix_tokens("") == []
    assert prefix_tokens("ABC") == ["A", "B", "C"]
    assert prefix_tokens(PAUSE * 3) == [PAUSE, PAUSE, PAUSE]
    with pytest.raises(ValueError):
        prefix_tokens("<p>X")
    with pytest.raises(ValueError):
        prefix_tokens("abc")


def test_encode_dataset_layout(sibling_dataset):
    ds = sibling_dataset
    # prefix 4 + bos + body 3 + eos
    assert ds.context_len == 4 + 1 + 3 + 1
    assert ds.seq.shape == (4, 9)
    vocab = ds.vocab
    row = ds.seq[0].tolist()
    assert row[:4] == [vocab.encode(c) for c in "ABCD"]
    assert row[4] == vocab.bos_id
    assert row[5:8] == [vocab.encode(t) for t in ("2", "3", "0")]
    assert row[8] == vocab.eos_id
    # response covers body + eos; body mask stops before eos
    assert ds.response_mask[0].tolist() == [False] * 5 + [True] * 4
    assert ds.body_mask[0].tolist() == [False] * 5 + [True] * 3 + [False]


def test_context_length_invariant(sibling_dataset):
    max_body = max(len(body.split()) for _, body in SIBLING_LINES)
    assert sibling_dataset.context_len >= 4 + max_body + 2


def test_variable_length_bodies_are_padded(tmp_path):
    config = {"task": "circle", "vocab_size": 6, "train_size": 2, "seed": 0,
              "length": 3}
    lines = [("AB", "0 1 , 1 2 , 2 0"), ("CD", "3 4 , 4 5 , 5 3")]
    d = write_dataset_dir(tmp_path / "d", lines, config, prefix_length=2)
    manifest = json.loads((d / "manifest.json").read_text())
    ds = encode_dataset(manifest, d)
    assert ds.seq.shape[1] == 2 + 1 + 8 + 1
    assert int(ds.response_mask.sum()) == 2 * 9


def test_malformed_train_line_rejected(tmp_path):
    d = write_dataset_dir(tmp_path / "d", [("AB", "1  2")], SIBLING_CONFIG,
                          prefix_length=2)
    manifest = json.loads((d / "manifest.json").read_text())
    with pytest.raises(ValueError):
        encode_dataset(manifest, d)


def test_pause_and_null_prefixes_encode(tmp_path):
    config = dict(SIBLING_CONFIG)
    lines = [("", "2 3 0"), ("<p><p>", "4 2 0")]
    d = write_dataset_dir(tmp_path / "d", lines, config, prefix_mode="null",
                          prefix_length=2)
    manifest = json.loads((d / "manifest.json").read_text())
    ds = encode_dataset(manifest, d)
    vocab = ds.vocab
    assert ds.seq[0, 0].item() == vocab.bos_id  # null prefix: bos first
    assert ds.seq[1, 0].item() == vocab.encode(PAUSE)
    # shorter rows are right-padded
    assert ds.seq[0, -1].item() == vocab.pad_id
    assert not ds.response_mask[0, -1]
