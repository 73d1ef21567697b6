"""Toy-scale decoder-only transformer trainer for creativity-bench datasets.

Implements teacher-forced next-token training and the teacherless
multi-token objective (dummy tokens in place of revealed response tokens),
with hash / pause / null prefix conditioning and greedy, temperature and
nucleus decoding. Talks to the benchmark engine purely through its file
contracts: manifests and train files in, generations files out.
"""

from .data import EncodedDataset, encode_dataset, load_manifest, prefix_tokens
from .generation import SamplerSpec, decode, fresh_hashes, generate_file, load_checkpoint
from .model import ModelConfig, TinyDecoder
from .objectives import loss_hybrid, loss_multi_token, loss_next_token, make_batch
from .training import DivergedError, TrainerConfig, train
from .vocab import TaskVocabulary, vocab_for_config

__version__ = "0.1.0"
