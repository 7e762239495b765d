"""Exact small-n Turán numbers by branch and bound over triples."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .hypergraph import ThreeGraph, all_triples, is_family_free

log = logging.getLogger(__name__)

MAX_DEFAULT_N = 9
CHECKPOINT_MAGIC = "# simtri turan-checkpoint v1"
CHECKPOINT_EVERY = 10**7


class SearchRefused(ValueError):
    pass


@dataclass
class SearchResult:
    n: int
    family_id: str
    max_edges: int
    witness: ThreeGraph
    nodes_expanded: int = 0
    checkpoint: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "family": self.family_id,
            "max_edges": self.max_edges,
            "witness": [[v + 1 for v in e] for e in self.witness.sorted_edges()],
            "nodes_expanded": self.nodes_expanded,
        }


def _images(H: ThreeGraph, n: int) -> set[frozenset]:
    """Distinct edge sets of all copies of ``H`` inside ``K_n^(3)``."""
    out = set()
    if H.n > n:
        return out
    edges = list(H.edges)
    for verts in combinations(range(n), H.n):
        for perm in permutations(verts):
            out.add(frozenset(tuple(sorted(perm[x] for x in e)) for e in edges))
    return out


def _has_k4_minus(family: Sequence[ThreeGraph]) -> bool:
    # every 3-edge 3-graph on 4 vertices is a K4-
    return any(H.n == 4 and H.num_edges == 3 for H in family)


class _Masks:
    """Per-triple edge sets that would complete a forbidden copy.

    Masks are stored as rows of 64-bit words so membership tests vectorize.
    """

    def __init__(self, n: int, family: Sequence[ThreeGraph]):
        self.triples = all_triples(n)
        self.rank = {t: i for i, t in enumerate(self.triples)}
        self.words = max(1, -(-len(self.triples) // 64))
        per_triple: list[set[int]] = [set() for _ in self.triples]
        for H in family:
            if H.num_edges == 0:
                continue
            for img in _images(H, n):
                bits = [self.rank[e] for e in img]
                full = 0
                for b in bits:
                    full |= 1 << b
                for b in bits:
                    per_triple[b].add(full & ~(1 << b))
        self.masks = [_minimal(self._pack(sorted(s, key=_popcount_key))) for s in per_triple]

    def _pack(self, masks: list[int]) -> np.ndarray:
        out = np.zeros((len(masks), self.words), dtype=np.uint64)
        for r, m in enumerate(masks):
            for w in range(self.words):
                out[r, w] = (m >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
        return out

    def completes(self, i: int, current: int) -> bool:
        ms = self.masks[i]
        if len(ms) == 0:
            return False
        cur = self._pack([current])[0]
        return bool(((ms & cur) == ms).all(axis=1).any())


def _popcount_key(m: int):
    return (bin(m).count("1"), m)


def _minimal(rows: np.ndarray) -> np.ndarray:
    """Drop rows that contain an earlier kept row; input sorted by popcount."""
    kept = np.empty_like(rows)
    k = 0
    for row in rows:
        if k and ((kept[:k] & row) == kept[:k]).all(axis=1).any():
            continue
        kept[k] = row
        k += 1
    return kept[:k].copy()


def exact_turan(
    n: int,
    family: Sequence[ThreeGraph],
    family_id: str = "custom",
    force: bool = False,
    checkpoint: Optional[str | Path] = None,
    checkpoint_every: int = CHECKPOINT_EVERY,
) -> SearchResult:
    """Maximum edge count of a family-free 3-graph on ``n`` vertices.

    Depth-first over triples in lexicographic order, trying "include" before
    "exclude". A triple is only included when it does not complete a copy of
    a family member through itself (the parent is family-free already).

    Two relabelling arguments hold for any family closed under isomorphism:
    vertex 0 may be taken to have maximum degree, and then ``{0, 1, 2}`` may
    be taken to be an edge. Triples through vertex 0 come first in the order,
    so once they are decided every other degree is capped by ``deg(0)``.

    Subtrees are cut when no completion can beat the incumbent, using the
    smallest of: all undecided triples, ``sum_v min(cap, deg v + open v) / 3``,
    and (when K4- is forbidden) at most two edges per 4-set.
    """
    family = list(family)
    if not family:
        raise ValueError("family must be nonempty")
    if n > MAX_DEFAULT_N and not force:
        raise SearchRefused(f"n={n} exceeds the default guard {MAX_DEFAULT_N}; pass force=True")
    if n < 0:
        raise ValueError("n must be nonnegative")

    masks = _Masks(n, family)
    triples = masks.triples
    T = len(triples)
    through_zero = comb(n - 1, 2) if n >= 3 else 0
    k4m = n >= 4 and _has_k4_minus(family)
    quads = list(combinations(range(n), 4))
    quad_index = {q: i for i, q in enumerate(quads)}
    quads_of = [
        [quad_index[tuple(sorted(t + (x,)))] for x in range(n) if x not in t] for t in triples
    ]
    q_cur = [0] * len(quads)
    q_open = [4] * len(quads)
    q_sum = 2 * len(quads)  # sum of min(2, cur + open)
    per_quad_edge = max(n - 3, 1)
    deg = [0] * n
    open_deg = [comb(max(n - 1, 0), 2)] * n

    best = -1
    best_mask = 0
    current = 0
    count = 0
    nodes = 0
    path: list[str] = []
    resume = _load_checkpoint(checkpoint, n, family_id) if checkpoint else None
    if resume is not None:
        best, best_mask, resume_path = resume
    else:
        resume_path = ""

    def save() -> None:
        lines = [
            CHECKPOINT_MAGIC,
            f"n {n}",
            f"family {family_id}",
            f"best {best}",
            "witness " + " ".join(str(i) for i in range(T) if best_mask >> i & 1),
            "path " + "".join(path),
        ]
        Path(checkpoint).write_text("\n".join(lines) + "\n")

    def rec(i: int, resuming: bool) -> None:
        nonlocal best, best_mask, current, count, nodes, q_sum
        nodes += 1
        if checkpoint and nodes % checkpoint_every == 0:
            save()
        if count > best:
            best, best_mask = count, current
        if i == T:
            return
        cap = deg[0] if i >= through_zero else deg[0] + open_deg[0]
        bound = min(count + (T - i), sum(min(cap, d + o) for d, o in zip(deg, open_deg)) // 3)
        if k4m:
            bound = min(bound, q_sum // per_quad_edge)
        if bound <= best:
            return
        t = triples[i]
        qs = quads_of[i]
        forced = resuming and i < len(resume_path)
        choice = resume_path[i] if forced else None

        included = False
        if (
            choice != "0"
            and all(deg[v] < cap for v in t if v != 0)
            and not masks.completes(i, current)
        ):
            included = True
            current |= 1 << i
            count += 1
            for v in t:
                deg[v] += 1
                open_deg[v] -= 1
            for q in qs:
                q_cur[q] += 1
                q_open[q] -= 1
            path.append("1")
            rec(i + 1, forced and choice == "1")
            path.pop()
            for q in qs:
                q_cur[q] -= 1
                q_open[q] += 1
            for v in t:
                deg[v] -= 1
                open_deg[v] += 1
            current &= ~(1 << i)
            count -= 1

        if i == 0 and included:
            return  # {0, 1, 2} is an edge without loss of generality
        saved = []
        for q in qs:
            before = min(2, q_cur[q] + q_open[q])
            q_open[q] -= 1
            after = min(2, q_cur[q] + q_open[q])
            q_sum += after - before
            saved.append(before - after)
        for v in t:
            open_deg[v] -= 1
        path.append("0")
        rec(i + 1, forced and choice == "0")
        path.pop()
        for v in t:
            open_deg[v] += 1
        for q, delta in zip(qs, saved):
            q_open[q] += 1
            q_sum += delta

    rec(0, bool(resume_path))
    witness = ThreeGraph(n, frozenset(triples[i] for i in range(T) if best_mask >> i & 1))
    if best < 0:
        best, witness = 0, ThreeGraph(n, frozenset())
    return SearchResult(n, family_id, best, witness, nodes, str(checkpoint) if checkpoint else None)


def _load_checkpoint(path, n: int, family_id: str):
    p = Path(path)
    if not p.exists():
        return None
    try:
        lines = p.read_text().splitlines()
        if not lines or lines[0] != CHECKPOINT_MAGIC:
            raise ValueError("missing magic header")
        fields = dict(line.split(" ", 1) if " " in line else (line, "") for line in lines[1:])
        if int(fields["n"]) != n or fields["family"] != family_id:
            raise ValueError("checkpoint belongs to a different search")
        best = int(fields["best"])
        mask = 0
        for tok in fields["witness"].split():
            mask |= 1 << int(tok)
        resume_path = fields["path"].strip()
        if set(resume_path) - {"0", "1"}:
            raise ValueError("bad path")
    except (OSError, ValueError, KeyError) as exc:
        log.warning("ignoring checkpoint %s: %s", path, exc)
        return None
    return best, mask, resume_path


def verify_witness(result: SearchResult, family: Sequence[ThreeGraph]) -> bool:
    """Recheck family-freeness and the edge count from scratch."""
    return (
        result.witness.n == result.n
        and result.witness.num_edges == result.max_edges
        and is_family_free(result.witness, family)
    )


def brute_force_turan(n: int, family: Sequence[ThreeGraph]) -> int:
    """Maximum over all ``2^C(n,3)`` edge subsets; only sensible for ``n <= 6``."""
    triples = list(combinations(range(n), 3))
    T = len(triples)
    if T > 24:
        raise ValueError(f"{2**T} subsets is too many for the exhaustive oracle")
    index = {t: i for i, t in enumerate(triples)}
    forb = set()
    for H in family:
        if H.n > n or H.num_edges == 0:
            continue
        edges = list(H.edges)
        for image in permutations(range(n), H.n):
            m = 0
            for e in edges:
                m |= 1 << index[tuple(sorted(image[x] for x in e))]
            forb.add(m)
    subsets = np.arange(1 << T, dtype=np.uint32)
    ok = np.ones(1 << T, dtype=bool)
    for m in sorted(forb, key=_popcount_key):
        mm = np.uint32(m)
        ok &= (subsets & mm) != mm
    sizes = np.zeros(1 << T, dtype=np.uint8)
    for b in range(T):
        sizes += ((subsets >> np.uint32(b)) & np.uint32(1)).astype(np.uint8)
    return int(sizes[ok].max())
