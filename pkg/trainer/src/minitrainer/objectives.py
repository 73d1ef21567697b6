"""Next-token and teacherless multi-token training objectives.

Both objectives score only the response positions (body tokens plus the end
marker), never the prefix. Next-token feeds the model the true preceding
tokens; the multi-token variant feeds dummy tokens in place of every
response token it would otherwise reveal, so each prediction sees the
prefix alone. The hybrid loss is the deterministic weighted sum and
degenerates bit-for-bit to next-token at weight 0.
"""

from __future__ import annotations

import torch
import torch.nn.functional as F


def response_nll(model, inputs: torch.Tensor, targets: torch.Tensor,
                 target_mask: torch.Tensor) -> torch.Tensor:
    """Per-position negative log-likelihood, zeroed outside the mask."""
    logits = model(inputs)
    nll = F.cross_entropy(logits.transpose(1, 2), targets, reduction="none")
    return nll * target_mask


def _shifted(batch):
    seq, response_mask = batch["seq"], batch["response_mask"]
    inputs = seq[:, :-1]
    targets = seq[:, 1:]
    target_mask = response_mask[:, 1:]
    return inputs, targets, target_mask


def loss_next_token(model, batch) -> torch.Tensor:
    """Teacher-forced objective, averaged over response tokens."""
    inputs, targets, target_mask = _shifted(batch)
    nll = response_nll(model, inputs, targets, target_mask)
    return nll.sum() / target_mask.sum()


def loss_multi_token(model, batch) -> torch.Tensor:
    """Teacherless term: response inputs replaced by dummy tokens."""
    inputs, targets, target_mask = _shifted(batch)
    body_inputs = batch["body_mask"][:, :-1]
    inputs = torch.where(body_inputs, batch["dummy_id"], inputs)
    nll = response_nll(model, inputs, targets, target_mask)
    return nll.sum() / target_mask.sum()


def loss_hybrid(model, batch, multi_weight: float):
    """weight * multi-token + (1 - weight) * next-token.

    The endpoints skip the unused forward pass entirely, which also makes
    weight = 0 bit-identical to the plain next-token loss.
    """
    if not 0.0 <= multi_weight <= 1.0:
        raise ValueError(f"multi-token weight must be in [0, 1], got {multi_weight}")
    if multi_weight == 0.0:
        ntp = loss_next_token(model, batch)
        return ntp, {"next_token": float(ntp.detach()), "multi_token": None}
    if multi_weight == 1.0:
        mtp = loss_multi_token(model, batch)
        return mtp, {"next_token": None, "multi_token": float(mtp.detach())}
    ntp = loss_next_token(model, batch)
    mtp = loss_multi_token(model, batch)
    loss = multi_weight * mtp + (1.0 - multi_weight) * ntp
    return loss, {"next_token": float(ntp.detach()), "multi_token": float(mtp.detach())}


def make_batch(dataset, indices: torch.Tensor) -> dict:
    """Assemble the tensors one optimization step consumes."""
    return {
        "seq": dataset.seq[indices],
        "response_mask": dataset.response_mask[indices],
        "body_mask": dataset.body_mask[indices],
        "dummy_id": torch.tensor(dataset.vocab.dummy_id, dtype=torch.long),
    }
