"""Cache content placement: the score-ordered collaborative fill under a
replication factor, plus the greedy-popular and non-collaborative baselines."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .catalog import ContentCatalog
from .centrality import CentralityScores
from .graph import Topology


@dataclass(frozen=True)
class CacheAssignment:
    """Per-node cache contents split into a common portion (replicated across
    the fog) and a unique portion, plus the ordered fog membership."""

    scheme: str
    common_parts: dict[int, tuple[int, ...]]
    unique_parts: dict[int, tuple[int, ...]]
    fog: tuple[int, ...]
    alpha: float | None
    buffer_items: int

    def nodes(self) -> list[int]:
        return sorted(set(self.common_parts) | set(self.unique_parts))

    def items_at(self, node: int) -> tuple[int, ...]:
        return self.common_parts.get(node, ()) + self.unique_parts.get(node, ())

    def holders_by_item(self) -> dict[int, set[int]]:
        holders: dict[int, set[int]] = {}
        for node in self.nodes():
            for item in self.items_at(node):
                holders.setdefault(item, set()).add(node)
        return holders


def _score_order(scores: CentralityScores, topology: Topology, caching_nodes) -> list[int]:
    # decreasing raw score, ties to the smaller original id
    return sorted(set(caching_nodes),
                  key=lambda v: (-scores.raw[v], topology.original_ids[v]))


def place_fog(topology: Topology, scores: CentralityScores, catalog: ContentCatalog,
              caching_nodes, buffer_items: int, alpha: float) -> CacheAssignment:
    """Collaborative placement: nodes join the fog in decreasing score order,
    each caching the same floor(alpha*b) most popular items plus the most
    popular items not yet cached anywhere in the fog.

    Fill stops when the catalog is exhausted; late fog nodes may keep spare
    unique capacity empty.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if buffer_items < 1:
        raise ValueError("buffer_items must be >= 1")
    if not caching_nodes:
        raise ValueError("caching_nodes must be non-empty")
    order = _score_order(scores, topology, caching_nodes)
    n_items = catalog.size
    common_size = min(math.floor(alpha * buffer_items), n_items)
    unique_size = buffer_items - math.floor(alpha * buffer_items)
    common = tuple(range(common_size))
    fog_items = set(common)
    next_rank = common_size
    common_parts = {}
    unique_parts = {}
    for v in order:
        unique = []
        while len(unique) < unique_size and next_rank < n_items:
            # ranks below next_rank are all in fog_items already: the common
            # part is a rank prefix and unique fills advance monotonically
            unique.append(next_rank)
            fog_items.add(next_rank)
            next_rank += 1
        common_parts[v] = common
        unique_parts[v] = tuple(unique)
    return CacheAssignment(scheme="fog", common_parts=common_parts,
                           unique_parts=unique_parts, fog=tuple(order),
                           alpha=alpha, buffer_items=buffer_items)


def place_greedy_popular(catalog: ContentCatalog, caching_nodes,
                         buffer_items: int) -> CacheAssignment:
    """Social-unaware baseline: every caching node independently holds the
    top-b most popular items (runtime LRU dynamics then churn the contents)."""
    if buffer_items < 1:
        raise ValueError("buffer_items must be >= 1")
    top = tuple(range(min(buffer_items, catalog.size)))
    nodes = sorted(set(caching_nodes))
    return CacheAssignment(scheme="greedy_popular",
                           common_parts={v: top for v in nodes},
                           unique_parts={v: () for v in nodes},
                           fog=tuple(nodes), alpha=None,
                           buffer_items=buffer_items)


def place_noncollaborative(topology: Topology, scores: CentralityScores,
                           catalog: ContentCatalog, caching_nodes,
                           buffer_items: int) -> CacheAssignment:
    """No-fog baseline: the same score-ranked caching nodes, but each fills
    its buffer alone, so all end up with the identical top-b items and no
    fog set is formed."""
    if buffer_items < 1:
        raise ValueError("buffer_items must be >= 1")
    order = _score_order(scores, topology, caching_nodes)
    top = tuple(range(min(buffer_items, catalog.size)))
    return CacheAssignment(scheme="noncollaborative",
                           common_parts={v: () for v in order},
                           unique_parts={v: top for v in order},
                           fog=(), alpha=None, buffer_items=buffer_items)


def fog_distinct_items(assignment: CacheAssignment) -> set[int]:
    items: set[int] = set()
    for v in assignment.nodes():
        items.update(assignment.items_at(v))
    return items


def export_assignment_csv(assignment: CacheAssignment, topology: Topology,
                          stream) -> None:
    """CSV rows: node_id, scheme, slot_index, item_rank, portion."""
    stream.write("node_id,scheme,slot_index,item_rank,portion\n")
    for v in assignment.nodes():
        slot = 0
        for item in assignment.common_parts.get(v, ()):
            stream.write(f"{topology.original_ids[v]},{assignment.scheme},"
                         f"{slot},{item},common\n")
            slot += 1
        for item in assignment.unique_parts.get(v, ()):
            stream.write(f"{topology.original_ids[v]},{assignment.scheme},"
                         f"{slot},{item},unique\n")
            slot += 1
