"""Deterministic interest-routing simulation: role split, nearest-replica
forwarding, hit/forward accounting, optional LRU churn, and the two metrics."""
from __future__ import annotations

import random
from collections import Counter, OrderedDict
from dataclasses import dataclass, field

from .catalog import InterestWorkload
from .graph import UNREACHABLE, PathCache, Topology
from .placement import CacheAssignment


@dataclass(frozen=True)
class RoleAssignment:
    """Partition of the non-origin nodes into consumers, providers (caching
    enabled) and passive forwarders."""

    consumers: tuple[int, ...]
    providers: tuple[int, ...]
    passive: tuple[int, ...]
    seed: int


def assign_roles(topology: Topology, consumer_frac: float, provider_frac: float,
                 seed: int) -> RoleAssignment:
    """Seeded sampling without replacement; the origin takes no role."""
    if not 0.0 <= consumer_frac <= 1.0 or not 0.0 <= provider_frac <= 1.0:
        raise ValueError("role fractions must lie in [0, 1]")
    if consumer_frac + provider_frac > 1.0 + 1e-12:
        raise ValueError("role fractions must sum to at most 1")
    n = topology.node_count
    pool = [v for v in range(n) if v != topology.origin]
    n_consumers = min(round(consumer_frac * n), len(pool))
    n_providers = min(round(provider_frac * n), len(pool) - n_consumers)
    rng = random.Random(seed)
    chosen = rng.sample(pool, n_consumers + n_providers)
    consumers = tuple(sorted(chosen[:n_consumers]))
    providers = tuple(sorted(chosen[n_consumers:]))
    taken = set(chosen)
    passive = tuple(v for v in pool if v not in taken)
    return RoleAssignment(consumers=consumers, providers=providers,
                          passive=passive, seed=seed)


@dataclass(frozen=True)
class RouteOutcome:
    served_from: str  # one of "self", "cache", "origin", "none"
    server: int | None
    path: tuple[int, ...]  # consumer..server inclusive; empty for self/none


@dataclass
class SimMetrics:
    """Per-node and global counters of one simulation run."""

    providers: tuple[int, ...]
    interests_received: list[int]
    cache_responses: list[int]
    forwards: list[int]
    interests_generated: int = 0
    satisfied_from_cache: int = 0
    satisfied_from_origin: int = 0
    satisfied_self: int = 0
    unsatisfied: int = 0


def _route(topology: Topology, cache: PathCache, holders, consumer: int,
           item: int) -> RouteOutcome:
    """Forward one interest along the shortest path (ties: smallest next-hop
    id) toward the nearest current holder; the origin always holds the item."""
    origin = topology.origin
    if consumer in holders or consumer == origin:
        return RouteOutcome(served_from="self", server=consumer, path=())
    dist = cache.dist_from(consumer)
    best = dist[origin] if dist[origin] != UNREACHABLE else None
    target = origin if best is not None else None
    for h in holders:
        d = dist[h]
        if d == UNREACHABLE:
            continue
        if best is None or d < best or (d == best and h < target):
            best, target = d, h
    if target is None:
        return RouteOutcome(served_from="none", server=None, path=())
    dist_t = cache.dist_from(target)
    path = [consumer]
    cur = consumer
    server = None
    while cur != target:
        goal = dist_t[cur] - 1
        for nb in topology.adjacency[cur]:  # sorted: first match = smallest id
            if dist_t[nb] == goal:
                cur = nb
                break
        path.append(cur)
        if cur in holders or cur == origin:
            server = cur
            break
    served = "origin" if server == origin else "cache"
    return RouteOutcome(served_from=served, server=server, path=tuple(path))


def route_interest(topology: Topology, caches, consumer: int, item: int,
                   cache: PathCache | None = None) -> RouteOutcome:
    """Route one interest given explicit per-node cache contents.

    ``caches`` maps node id -> current item container; the origin is always a
    holder regardless of ``caches``.
    """
    if item < 0:
        raise ValueError(f"invalid item rank {item}")
    holders = {node for node, items in caches.items() if item in items}
    return _route(topology, cache or PathCache(topology), holders, consumer, item)


def _apply(metrics: SimMetrics, outcome: RouteOutcome, count: int) -> None:
    metrics.interests_generated += count
    kind = outcome.served_from
    if kind == "self":
        metrics.satisfied_self += count
        return
    if kind == "none":
        metrics.unsatisfied += count
        return
    path = outcome.path
    received = metrics.interests_received
    fwd = metrics.forwards
    for v in path[1:-1]:
        received[v] += count
        fwd[v] += count
    received[outcome.server] += count
    if kind == "cache":
        metrics.cache_responses[outcome.server] += count
        metrics.satisfied_from_cache += count
    else:
        metrics.satisfied_from_origin += count


def run_simulation(topology: Topology, assignment: CacheAssignment,
                   roles: RoleAssignment, workload: InterestWorkload,
                   lru_enabled: bool = False,
                   path_cache: PathCache | None = None) -> SimMetrics:
    """Process the workload in order, accumulating counters.

    With ``lru_enabled`` (social-unaware baseline), every provider on the
    return path of an origin-served interest inserts the item, evicting its
    least-recently-used entry at capacity; cache hits refresh recency.  All
    other schemes keep their placed caches static.
    """
    n = topology.node_count
    cache = path_cache or PathCache(topology)
    consumer_set = set(roles.consumers)
    for c, item in workload.draws:
        if c not in consumer_set:
            raise ValueError(f"workload consumer {c} lacks the consumer role")
    metrics = SimMetrics(providers=roles.providers,
                         interests_received=[0] * n,
                         cache_responses=[0] * n,
                         forwards=[0] * n)
    holders: dict[int, set[int]] = assignment.holders_by_item()

    if not lru_enabled:
        # static caches: outcomes depend only on the (consumer, item) pair,
        # so route each distinct pair once
        empty: set[int] = set()
        for (c, item), count in Counter(workload.draws).items():
            outcome = _route(topology, cache, holders.get(item, empty), c, item)
            _apply(metrics, outcome, count)
    else:
        provider_set = set(roles.providers)
        capacity = assignment.buffer_items
        # per-provider recency state, least-recent first; seed it with the
        # placed contents so the least popular item is evicted first
        lru: dict[int, OrderedDict[int, None]] = {}
        for v in assignment.nodes():
            lru[v] = OrderedDict((item, None)
                                 for item in reversed(assignment.items_at(v)))
        empty = set()
        for c, item in workload.draws:
            outcome = _route(topology, cache, holders.get(item, empty), c, item)
            _apply(metrics, outcome, 1)
            if outcome.served_from == "cache" and outcome.server in lru:
                lru[outcome.server].move_to_end(item)
            elif outcome.served_from == "origin":
                for v in outcome.path[1:-1]:
                    if v not in provider_set:
                        continue
                    state = lru.setdefault(v, OrderedDict())
                    if item in state:
                        state.move_to_end(item)
                        continue
                    state[item] = None
                    holders.setdefault(item, set()).add(v)
                    if len(state) > capacity:
                        evicted, _ = state.popitem(last=False)
                        holders[evicted].discard(v)

    total = (metrics.satisfied_from_cache + metrics.satisfied_from_origin +
             metrics.satisfied_self + metrics.unsatisfied)
    assert total == metrics.interests_generated, "interest conservation violated"
    return metrics


def cache_hit_rate(metrics: SimMetrics) -> float:
    """Mean over providers that received interests of responses/received."""
    ratios = [metrics.cache_responses[v] / metrics.interests_received[v]
              for v in metrics.providers if metrics.interests_received[v] > 0]
    return sum(ratios) / len(ratios) if ratios else 0.0


def pooled_hit_rate(metrics: SimMetrics) -> float:
    """Network-wide diagnostic: total provider responses over total provider
    receipts."""
    received = sum(metrics.interests_received[v] for v in metrics.providers)
    if received == 0:
        return 0.0
    responses = sum(metrics.cache_responses[v] for v in metrics.providers)
    return responses / received


def success_rate(metrics: SimMetrics) -> float:
    """Fraction of generated interests that reached any copy of the content."""
    if metrics.interests_generated == 0:
        return 0.0
    satisfied = (metrics.satisfied_from_cache + metrics.satisfied_from_origin +
                 metrics.satisfied_self)
    return satisfied / metrics.interests_generated
