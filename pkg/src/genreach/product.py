"""Subset memory, the synchronized product, and the bitmask solver.

The solver tracks which color sets a play has visited.  That memory is a
k-bit mask, the product of arena and memory is an ordinary reachability
game whose targets are the full-mask configurations, and the attractor of
those targets decides every vertex at once.  Eve's winning strategy lives
on the non-full masks (at most 2^k - 1 states); Adam's winning strategy
compresses further, onto per-vertex antichains of masks (at most
C(k, floor(k/2)) states).
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Mapping

from .attractor import _pred_lists
from .errors import CapExceededError, NotDownwardClosedError
from .model import DEFAULT_COLOR_CAP, Arena, Game, Objective, Owner
from .strategies import (
    FiniteMemoryStrategy,
    MemoryStructure,
    SolveResult,
)


def subset_memory(
    objective: Objective, v0: int | None = None, cap: int = DEFAULT_COLOR_CAP
) -> MemoryStructure:
    """Memory whose state is the bitmask of color sets visited so far.

    The state after an edge folds in the target vertex's colors.  The
    initial state is the start vertex's own colors: with `v0` it is that
    single mask, otherwise it is per-vertex so the same structure serves
    plays from anywhere.
    """
    if objective.k > cap:
        raise CapExceededError(
            f"{objective.k} color sets exceed the bitmask cap of {cap}"
        )
    mask = objective.mask
    initial: int | dict[int, int]
    if v0 is None:
        initial = {v: mask[v] for v in range(len(mask))}
    else:
        initial = mask[v0]
    return MemoryStructure(1 << objective.k, initial, lambda s, u, w: s | mask[w])


@dataclass(eq=False)
class ProductArena:
    """The base arena synchronized with a memory structure.

    Configurations (v, m) get dense ids; `codes[i] = v * states + m`.  A
    full build materializes every pair (ids equal codes); a lazy build
    keeps only what forward reachability from the start set discovers.
    Configurations flagged terminal by the builder get no outgoing edges.
    """

    base: Arena
    memory: MemoryStructure
    codes: "range | list[int]"
    id_of: dict[int, int]
    succ: list[list[int]]
    full: bool

    @property
    def n_configs(self) -> int:
        return len(self.codes)

    @property
    def n_edges(self) -> int:
        return sum(len(row) for row in self.succ)

    def vertex_of(self, i: int) -> int:
        return self.codes[i] // self.memory.states

    def state_of(self, i: int) -> int:
        return self.codes[i] % self.memory.states

    def config_id(self, v: int, m: int) -> int:
        """Dense id of (v, m), or -1 if the pair was never materialized."""
        code = v * self.memory.states + m
        if self.full:
            return code
        return self.id_of.get(code, -1)

    def is_eve(self, i: int) -> bool:
        return self.base.owner[self.vertex_of(i)] is Owner.EVE


def build_product(
    arena: Arena,
    mem: MemoryStructure,
    start: Iterable[int] | None = None,
    terminal: Callable[[int, int], bool] | None = None,
    max_configs: int | None = None,
) -> ProductArena:
    """Synchronize `arena` with `mem`.

    Without `start`, every (vertex, state) pair is materialized.  With
    `start` (an iterable of arena vertices), only configurations forward
    reachable from their initial states are.  `terminal` marks absorbing
    configurations whose outgoing edges the caller will never examine;
    they are kept as vertices but not expanded.
    """
    states = mem.states
    update = mem.update
    base_succ = arena.succ

    if start is None:
        total = arena.n * states
        if max_configs is not None and total > max_configs:
            raise CapExceededError(
                f"full product needs {total} configurations, above the"
                f" limit of {max_configs}"
            )
        succ: list[list[int]] = []
        for v in range(arena.n):
            targets = base_succ[v]
            for m in range(states):
                if terminal is not None and terminal(v, m):
                    succ.append([])
                else:
                    succ.append([w * states + update(m, v, w) for w in targets])
        return ProductArena(arena, mem, range(total), {}, succ, full=True)

    codes: list[int] = []
    id_of: dict[int, int] = {}
    for v in start:
        code = v * states + mem.initial_state(v)
        if code not in id_of:
            id_of[code] = len(codes)
            codes.append(code)
    succ = []
    lookup = id_of.get
    i = 0
    while i < len(codes):
        if max_configs is not None and len(codes) > max_configs:
            raise CapExceededError(
                f"product exceeded the limit of {max_configs} configurations"
            )
        code = codes[i]
        v, m = divmod(code, states)
        if terminal is not None and terminal(v, m):
            succ.append([])
            i += 1
            continue
        row = []
        for w in base_succ[v]:
            c2 = w * states + update(m, v, w)
            j = lookup(c2)
            if j is None:
                j = len(codes)
                id_of[c2] = j
                codes.append(c2)
            row.append(j)
        succ.append(row)
        i += 1
    return ProductArena(arena, mem, codes, id_of, succ, full=False)


@dataclass(eq=False)
class ProductSolution:
    """Attractor of the target configurations inside a product.

    `rank[i]` is -1 outside the attractor.  `choice[i]` is the chosen
    successor id: rank-decreasing for Eve configurations inside, an
    escape staying outside for Adam configurations outside, -1 elsewhere.
    """

    product: ProductArena
    rank: list[int]
    choice: list[int]
    ops: int

    def winning(self, i: int) -> bool:
        return self.rank[i] >= 0


def solve_product(product: ProductArena, targets: Iterable[int]) -> ProductSolution:
    succ = product.succ
    n = len(succ)
    states = product.memory.states
    owner_eve = [o is Owner.EVE for o in product.base.owner]
    eve = [owner_eve[c // states] for c in product.codes]
    pred: list[list[int]] = [[] for _ in range(n)]
    for i, row in enumerate(succ):
        for j in row:
            pred[j].append(i)
    rank = [-1] * n
    counter = [len(row) for row in succ]
    queue = deque()
    for t in targets:
        if rank[t] == -1:
            rank[t] = 0
            queue.append(t)
    ops = 0
    while queue:
        j = queue.popleft()
        r = rank[j] + 1
        for i in pred[j]:
            if rank[i] != -1:
                continue
            ops += 1
            if eve[i]:
                rank[i] = r
                queue.append(i)
            else:
                counter[i] -= 1
                if counter[i] == 0:
                    rank[i] = r
                    queue.append(i)

    choice = [-1] * n
    for i in range(n):
        ri = rank[i]
        if eve[i]:
            if ri > 0:
                for j in succ[i]:
                    rj = rank[j]
                    if 0 <= rj < ri:
                        choice[i] = j
                        break
        elif ri == -1:
            for j in succ[i]:
                if rank[j] == -1:
                    choice[i] = j
                    break
    return ProductSolution(product, rank, choice, ops)


def lift_strategy(
    product: ProductArena, player: Owner, positional: Mapping[int, int]
) -> FiniteMemoryStrategy:
    """Turn a positional product strategy (dense id to dense id) into a
    finite-memory strategy on the base arena over the product's memory."""
    moves = {
        (product.vertex_of(i), product.state_of(i)): product.vertex_of(j)
        for i, j in positional.items()
    }
    return FiniteMemoryStrategy(player, product.memory, moves)


def solve_fpt(game: Game, cap: int = DEFAULT_COLOR_CAP) -> SolveResult:
    """Decide every vertex by reachability to the full-mask configurations.

    The product is never materialized.  Masks only grow along edges, so
    its configurations split into one level per mask: forward discovery
    fills the reachable levels in ascending popcount order, then the
    backward attractor sweep solves them in descending order, when every
    level a mask-changing edge can land in is already final and each
    level reduces to a plain reachability pass over the base arena.
    Both regions are total because discovery starts from (v, colors(v))
    for every v.  Eve's strategy replays the moves recorded by the
    sweep, on a memory holding only the non-full masks that actually
    occur; Adam's strategy keeps the play outside the attractor, on the
    raw subset memory.
    """
    t0 = time.perf_counter()
    arena = game.arena
    n = arena.n
    k = game.k
    if k > cap:
        raise CapExceededError(f"{k} color sets exceed the bitmask cap of {cap}")
    vm = game.objective.mask
    full = game.objective.full_mask
    succ = arena.succ

    # Edges into uncolored vertices never change the mask; split each
    # successor list once so the sweeps skip mask arithmetic on them.
    plain: list[list[int]] = [[] for _ in range(n)]
    colored: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for w in succ[v]:
            (colored[v] if vm[w] else plain[v]).append(w)

    nlevels = 1 << k
    live: list[bytearray | None] = [None] * nlevels
    verts: list[list[int] | None] = [None] * nlevels
    buckets: list[list[int]] = [[] for _ in range(k + 1)]
    for v in range(n):
        s = vm[v]
        row = live[s]
        if row is None:
            row = live[s] = bytearray(n)
            verts[s] = []
            buckets[s.bit_count()].append(s)
        row[v] = 1
        verts[s].append(v)

    # Forward discovery.  A jump lands in a strictly larger mask, so by
    # the time a bucket runs its levels are fully seeded and a level's
    # worklist only grows through same-mask edges.  The full level is
    # absorbing and never expanded.
    levels: list[tuple[int, list[int]]] = []
    n_edges = 0
    for p in range(k + 1):
        for s in buckets[p]:
            vs = verts[s]
            levels.append((s, vs))
            if s == full:
                continue
            lrow = live[s]
            i = 0
            while i < len(vs):
                v = vs[i]
                i += 1
                pv = plain[v]
                cv = colored[v]
                n_edges += len(pv) + len(cv)
                for w in pv:
                    if not lrow[w]:
                        lrow[w] = 1
                        vs.append(w)
                for w in cv:
                    s2 = s | vm[w]
                    row = live[s2]
                    if row is None:
                        row = live[s2] = bytearray(n)
                        verts[s2] = []
                        buckets[s2.bit_count()].append(s2)
                    if not row[w]:
                        row[w] = 1
                        verts[s2].append(w)

    live_masks = sorted(s for s, _ in levels if s != full)
    idx = {s: i for i, s in enumerate(live_masks)}

    pred = _pred_lists(arena)
    eve = [o is Owner.EVE for o in arena.owner]
    win: list[bytearray | None] = [None] * nlevels
    eve_moves: dict[tuple[int, int], int] = {}
    adam_moves: dict[tuple[int, int], int] = {}
    ops = 0
    for s, vs in reversed(levels):
        wrow = bytearray(n)
        win[s] = wrow
        if s == full:
            for v in vs:
                wrow[v] = 1
            continue
        si = idx[s]
        lrow = live[s]
        rem = [0] * n
        q: list[int] = []
        # Jumps land in levels already solved; fold their verdicts in
        # first.  An Eve configuration wins outright on a winning jump;
        # an Adam one with a losing jump never wins (sentinel -1), and
        # one whose every successor jumps to a win loses Adam the level
        # before the in-level pass even starts.
        for v in vs:
            if eve[v]:
                for w in colored[v]:
                    s2 = s | vm[w]
                    if s2 != s and win[s2][w]:
                        wrow[v] = 1
                        eve_moves[(v, si)] = w
                        q.append(v)
                        break
            else:
                r = len(plain[v])
                for w in colored[v]:
                    s2 = s | vm[w]
                    if s2 == s:
                        r += 1
                    elif not win[s2][w]:
                        r = -1
                        break
                rem[v] = r
                if r == 0:
                    wrow[v] = 1
                    q.append(v)
        # In-level attractor over base predecessor lists.  A live target
        # carries its own colors inside the mask, so no predecessor edge
        # can jump; only liveness of the source needs checking.
        i = 0
        while i < len(q):
            w = q[i]
            i += 1
            for u in pred[w]:
                if not lrow[u] or wrow[u]:
                    continue
                ops += 1
                if eve[u]:
                    wrow[u] = 1
                    eve_moves[(u, si)] = w
                    q.append(u)
                else:
                    r = rem[u] - 1
                    rem[u] = r
                    if r == 0:
                        wrow[u] = 1
                        q.append(u)
        # Each losing Adam configuration keeps its first escape.
        for v in vs:
            if not eve[v] and not wrow[v]:
                for w in succ[v]:
                    if not win[s | vm[w]][w]:
                        adam_moves[(v, s)] = w
                        break
                else:
                    raise AssertionError("losing configuration with no escape")

    eve_region = frozenset(v for v in range(n) if win[vm[v]][v])
    adam_region = frozenset(range(n)) - eve_region

    if live_masks:

        def eve_update(s: int, u: int, w: int, _m=live_masks, _i=idx) -> int:
            t = _i.get(_m[s] | vm[w])
            return s if t is None else t

        eve_mem = MemoryStructure(
            len(live_masks), {v: idx.get(vm[v], 0) for v in range(n)}, eve_update
        )
    else:
        eve_mem = MemoryStructure(1, {v: 0 for v in range(n)}, lambda s, u, w: s)

    mem = subset_memory(game.objective, cap=cap)
    eve_strategy = FiniteMemoryStrategy(Owner.EVE, eve_mem, eve_moves)
    adam_strategy = FiniteMemoryStrategy(Owner.ADAM, mem, adam_moves)
    return SolveResult(
        method="fpt",
        eve_region=eve_region,
        adam_region=adam_region,
        eve_strategy=eve_strategy,
        adam_strategy=adam_strategy,
        stats={
            "k": k,
            "configs": sum(len(x) for _, x in levels),
            "product_edges": n_edges,
            "ops": ops,
            "eve_states": eve_mem.states,
            "adam_states": mem.states,
            "seconds": time.perf_counter() - t0,
        },
    )


@dataclass(frozen=True)
class AntichainTable:
    """Per-vertex maximal masks of Adam's product region, ascending."""

    k: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def p(self) -> int:
        return max((len(row) for row in self.rows), default=0)

    @property
    def bound(self) -> int:
        return comb(self.k, self.k // 2)


def antichain_table(
    adam_region: Iterable[tuple[int, int]], k: int, n: int
) -> AntichainTable:
    """Maximal masks per vertex of a (vertex, mask) region.

    The region must be downward closed in the mask coordinate; a solver
    producing anything else is broken, which NotDownwardClosed signals.
    """
    by_vertex: list[set[int]] = [set() for _ in range(n)]
    for v, s in adam_region:
        by_vertex[v].add(s)
    for v, masks in enumerate(by_vertex):
        for s in masks:
            bits = s
            while bits:
                low = bits & -bits
                if s ^ low not in masks:
                    raise NotDownwardClosedError(
                        f"region holds (vertex {v}, mask {s:#b}) but not"
                        f" mask {s ^ low:#b}"
                    )
                bits ^= low
    rows = []
    for masks in by_vertex:
        maximal: list[int] = []
        for s in sorted(masks, key=lambda m: (-m.bit_count(), m)):
            if not any(s | t == t for t in maximal):
                maximal.append(s)
        rows.append(tuple(sorted(maximal)))
    return AntichainTable(k, tuple(rows))


def compress_adam(
    game: Game,
    solution: ProductSolution | None = None,
    cap: int = DEFAULT_COLOR_CAP,
    max_configs: int = 1 << 22,
) -> FiniteMemoryStrategy:
    """Adam strategy over antichain indices instead of raw masks.

    State i at vertex v stands for the i-th maximal mask of Adam's region
    at v, an overapproximation of the true visited mask that his region
    still contains.  Updates re-maximize after each edge; moves replay
    the product escape of the represented configuration.  State count is
    max_v p(v), at most C(k, floor(k/2)).

    Needs the full product: Adam's region is downward closed only when
    every configuration is present.  Computes it when not handed one.
    """
    arena = game.arena
    n = arena.n
    k = game.k
    mask = game.objective.mask
    full = game.objective.full_mask
    if solution is None:
        mem = subset_memory(game.objective, cap=cap)
        product = build_product(
            arena,
            mem,
            terminal=lambda v, m: m == full,
            max_configs=max_configs,
        )
        solution = solve_product(
            product,
            [i for i in range(product.n_configs) if product.state_of(i) == full],
        )
    product = solution.product
    if not product.full:
        raise ValueError("antichain compression needs a full product solution")
    rank = solution.rank
    states = product.memory.states

    table = antichain_table(
        (
            (product.vertex_of(i), product.state_of(i))
            for i in range(product.n_configs)
            if rank[i] == -1
        ),
        k,
        n,
    )
    rows = table.rows
    nstates = max(1, table.p)

    update: dict[tuple[int, int, int], int] = {}
    moves: dict[tuple[int, int], int] = {}
    for u in range(n):
        row = rows[u]
        for i, s in enumerate(row):
            for w in arena.succ[u]:
                t = s | mask[w]
                for j, s2 in enumerate(rows[w]):
                    if t | s2 == s2:
                        if j != i:
                            update[(i, u, w)] = j
                        break
            if arena.owner[u] is Owner.ADAM:
                escape = solution.choice[product.config_id(u, s)]
                if escape != -1:
                    moves[(u, i)] = product.vertex_of(escape)

    initial: dict[int, int] = {}
    for v in range(n):
        if rank[v * states + mask[v]] == -1:
            for j, s2 in enumerate(rows[v]):
                if mask[v] | s2 == s2:
                    initial[v] = j
                    break
    memory = MemoryStructure.from_table(nstates, initial, update)
    return FiniteMemoryStrategy(Owner.ADAM, memory, moves)
