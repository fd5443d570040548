"""Weighted edit-distance alignment over arbitrary symbol sequences.

One dynamic program serves every granularity in the toolkit: words,
characters, and phones under feature-weighted substitution costs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple, Optional, Sequence


def _default_sub_cost(a: Any, b: Any) -> float:
    return 1.0


def _default_match(a: Any, b: Any) -> bool:
    return a == b


@dataclass(frozen=True)
class CostModel:
    """Per-operation alignment costs.

    ``sub_cost`` is consulted only for pairs that fail the ``match``
    predicate optimization; matches always cost zero. All costs must be
    finite and non-negative.
    """

    sub_cost: Callable[[Any, Any], float] = _default_sub_cost
    del_cost: float = 1.0
    ins_cost: float = 1.0
    match: Callable[[Any, Any], bool] = _default_match

    def __post_init__(self) -> None:
        for label, value in (("del_cost", self.del_cost), ("ins_cost", self.ins_cost)):
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                raise ValueError(f"{label} must be finite and non-negative, got {value!r}")


def unit_cost_model() -> CostModel:
    """Classical Levenshtein costs: every edit costs one."""
    return CostModel()


class EditOp(NamedTuple):
    """One backtraced alignment step.

    ``kind`` is one of ``match``, ``sub``, ``del``, ``ins``; the index
    into the side a step does not consume is ``None``.
    """

    kind: str
    ref_index: Optional[int]
    hyp_index: Optional[int]


@dataclass(frozen=True)
class AlignmentResult:
    ops: tuple[EditOp, ...]
    hits: int
    subs: int
    dels: int
    ins: int
    cost: float

    @property
    def ref_len(self) -> int:
        return self.hits + self.subs + self.dels

    @property
    def hyp_len(self) -> int:
        return self.hits + self.subs + self.ins


# Backpointer codes double as the tie-break preference order.
_MATCH, _SUB, _DEL, _INS = 0, 1, 2, 3
_KINDS = ("match", "sub", "del", "ins")


def align(ref: Sequence, hyp: Sequence, cost: CostModel | None = None) -> AlignmentResult:
    """Minimum-cost alignment of ``hyp`` against ``ref``.

    Deterministic: among equal-cost alignments the one with the most
    matches wins, and remaining ties fall to the earliest operation in
    the order match, substitute, delete, insert.
    """
    model = cost or unit_cost_model()
    n, m = len(ref), len(hyp)
    # Each cell carries (cost, -hits); minimizing that pair
    # lexicographically maximizes hits among minimum-cost paths.
    costs = [[0.0] * (m + 1) for _ in range(n + 1)]
    neghits = [[0] * (m + 1) for _ in range(n + 1)]
    back = [[-1] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        costs[i][0] = costs[i - 1][0] + model.del_cost
        back[i][0] = _DEL
    for j in range(1, m + 1):
        costs[0][j] = costs[0][j - 1] + model.ins_cost
        back[0][j] = _INS
    for i in range(1, n + 1):
        a = ref[i - 1]
        row = costs[i]
        prev_row = costs[i - 1]
        for j in range(1, m + 1):
            b = hyp[j - 1]
            if model.match(a, b):
                best_cost = prev_row[j - 1]
                best_hits = neghits[i - 1][j - 1] - 1
                best_op = _MATCH
            else:
                step = model.sub_cost(a, b)
                if not (isinstance(step, (int, float)) and math.isfinite(step) and step >= 0):
                    raise ValueError(
                        f"sub_cost({a!r}, {b!r}) must be finite and non-negative, got {step!r}"
                    )
                best_cost = prev_row[j - 1] + step
                best_hits = neghits[i - 1][j - 1]
                best_op = _SUB
            cand_cost = prev_row[j] + model.del_cost
            cand_hits = neghits[i - 1][j]
            if (cand_cost, cand_hits) < (best_cost, best_hits):
                best_cost, best_hits, best_op = cand_cost, cand_hits, _DEL
            cand_cost = row[j - 1] + model.ins_cost
            cand_hits = neghits[i][j - 1]
            if (cand_cost, cand_hits) < (best_cost, best_hits):
                best_cost, best_hits, best_op = cand_cost, cand_hits, _INS
            row[j] = best_cost
            neghits[i][j] = best_hits
            back[i][j] = best_op

    ops: list[EditOp] = []
    counts = [0, 0, 0, 0]
    i, j = n, m
    while i > 0 or j > 0:
        op = back[i][j]
        counts[op] += 1
        if op == _DEL:
            i -= 1
            ops.append(EditOp("del", i, None))
        elif op == _INS:
            j -= 1
            ops.append(EditOp("ins", None, j))
        else:
            i -= 1
            j -= 1
            ops.append(EditOp(_KINDS[op], i, j))
    ops.reverse()
    return AlignmentResult(
        ops=tuple(ops),
        hits=counts[_MATCH],
        subs=counts[_SUB],
        dels=counts[_DEL],
        ins=counts[_INS],
        cost=costs[n][m],
    )
