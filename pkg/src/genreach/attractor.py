"""Attractor computation and the solvers that are pure attractor work.

The attractor of a target set, for a player, is everything from which that
player can force the token into the set.  It is computed backwards with
per-vertex successor counters, touching every edge at most once.  Ranks
record how many steps the forcing needs; they drive positional move
extraction (step to any successor of strictly smaller rank).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import NotOpponentPlayerError
from .model import Arena, Game, Owner
from .strategies import FiniteMemoryStrategy, SolveResult, identity_memory


@dataclass(frozen=True)
class AttractorResult:
    """`rank[v]` is None outside the attractor.  `moves` maps each owned
    vertex of positive rank to its lowest-index rank-decreasing successor.
    `ops` counts predecessor-edge relaxations (at most the edge count)."""

    player: Owner
    attractor: frozenset[int]
    rank: tuple[int | None, ...]
    moves: dict[int, int]
    ops: int


def _pred_lists(arena: Arena) -> list[list[int]]:
    pred: list[list[int]] = [[] for _ in range(arena.n)]
    for u in range(arena.n):
        for v in arena.succ[u]:
            pred[v].append(u)
    return pred


def attractor(
    arena: Arena, targets: Iterable[int], player: Owner = Owner.EVE
) -> AttractorResult:
    n = arena.n
    rank: list[int | None] = [None] * n
    counter = [len(arena.succ[v]) for v in range(n)]
    pred = _pred_lists(arena)
    queue = deque()
    for t in sorted(set(targets)):
        rank[t] = 0
        queue.append(t)
    ops = 0
    # FIFO order pops vertices by non-decreasing rank, so the popped
    # neighbor below is a minimum-rank successor (owned case) or the
    # maximum-rank one (counter case).
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if rank[u] is not None:
                continue
            ops += 1
            if arena.owner[u] is player:
                rank[u] = rank[v] + 1
                queue.append(u)
            else:
                counter[u] -= 1
                if counter[u] == 0:
                    rank[u] = rank[v] + 1
                    queue.append(u)

    moves: dict[int, int] = {}
    for u in range(n):
        ru = rank[u]
        if arena.owner[u] is not player or ru is None or ru == 0:
            continue
        for w in arena.succ[u]:
            rw = rank[w]
            if rw is not None and rw < ru:
                moves[u] = w
                break
    inside = frozenset(v for v in range(n) if rank[v] is not None)
    return AttractorResult(player, inside, tuple(rank), moves, ops)


def avoid_moves(arena: Arena, result: AttractorResult) -> dict[int, int]:
    """For each opponent vertex outside the attractor, the lowest-index
    successor that is also outside.  The complement is closed for the
    opponent, so one always exists."""
    opponent = result.player.opponent()
    moves: dict[int, int] = {}
    for v in range(arena.n):
        if arena.owner[v] is not opponent or v in result.attractor:
            continue
        for w in arena.succ[v]:
            if w not in result.attractor:
                moves[v] = w
                break
        else:
            raise AssertionError("attractor complement must be closed")
    return moves


def solve_reachability(arena: Arena, targets: Iterable[int]) -> SolveResult:
    """Plain reachability: Eve tries to visit `targets` at least once.

    Both players get positional strategies: Eve walks ranks down inside
    her region, Adam stays outside it forever.
    """
    attr = attractor(arena, targets, Owner.EVE)
    eve_region = attr.attractor
    adam_region = frozenset(range(arena.n)) - eve_region
    eve = FiniteMemoryStrategy(
        Owner.EVE, identity_memory(), {(u, 0): w for u, w in attr.moves.items()}
    )
    adam = FiniteMemoryStrategy(
        Owner.ADAM,
        identity_memory(),
        {(u, 0): w for u, w in avoid_moves(arena, attr).items()},
    )
    return SolveResult(
        method="attractor",
        eve_region=eve_region,
        adam_region=adam_region,
        eve_strategy=eve,
        adam_strategy=adam,
        stats={"ops": attr.ops, "max_rank": max((r for r in attr.rank if r is not None), default=0)},
    )


def solve_opponent_player(game: Game) -> SolveResult:
    """Games whose every vertex belongs to Adam.

    Eve wins from v exactly when every path from v is dragged through
    every color set, i.e. v lies in all k single-color attractors (which
    degenerate to "all paths reach" sets here).  Eve needs no moves.  No
    Adam strategy is reported: on his region he must commit to a color to
    starve, and no single positional or region-uniform choice works for
    every start, so callers wanting one should use the general solver.
    """
    arena = game.arena
    for v in range(arena.n):
        if arena.owner[v] is not Owner.ADAM:
            raise NotOpponentPlayerError(
                f"vertex {arena.names[v]!r} belongs to eve"
            )
    region = frozenset(range(arena.n))
    ops = 0
    sizes = []
    for members in game.objective.color_sets:
        attr = attractor(arena, members, Owner.EVE)
        region &= attr.attractor
        ops += attr.ops
        sizes.append(len(attr.attractor))
    eve = FiniteMemoryStrategy(Owner.EVE, identity_memory(), {})
    return SolveResult(
        method="opponent",
        eve_region=region,
        adam_region=frozenset(range(arena.n)) - region,
        eve_strategy=eve,
        adam_strategy=None,
        stats={"ops": ops, "attractor_sizes": sizes},
    )
