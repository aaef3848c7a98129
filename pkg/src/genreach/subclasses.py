"""Polynomial solvers for games with small color sets.

Two shapes admit fast algorithms: every color set a single vertex (in
any arena), and color sets of at most two vertices when Eve owns every
vertex (via a reduction to 2-SAT).  Both revolve around the question
"can the owner force a visit of w starting from v", captured once in
ReachMatrix.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .attractor import AttractorResult, attractor, avoid_moves
from .errors import (
    ColorTooLargeError,
    GameParseError,
    NotOnePlayerError,
    NotSingletonError,
)
from .model import Arena, Game, Owner, trace_play
from .scc import strongly_connected_components
from .strategies import (
    FiniteMemoryStrategy,
    MemoryStructure,
    SolveResult,
    identity_memory,
)


@dataclass(frozen=True, eq=False)
class ReachMatrix:
    """Attractor membership between a set of distinguished vertices.

    `leq(v, w)` holds when Eve can force a visit of w from v; on a
    one-player arena this degenerates to plain graph reachability.
    Queries are valid for any v, but w must be one of `vertices`.
    """

    vertices: tuple[int, ...]
    results: Mapping[int, AttractorResult]

    def leq(self, v: int, w: int) -> bool:
        return v in self.results[w].attractor

    def comparable(self, v: int, w: int) -> bool:
        return self.leq(v, w) or self.leq(w, v)

    def dominance(self, v: int) -> int:
        """How many distinguished vertices v can force a visit of."""
        return sum(1 for w in self.vertices if self.leq(v, w))

    def incomparable_pair(self) -> tuple[int, int] | None:
        for i, v in enumerate(self.vertices):
            for w in self.vertices[i + 1:]:
                if not self.comparable(v, w):
                    return v, w
        return None

    def chain(self, items: Iterable[int], first: int | None = None) -> list[int]:
        """Sort pairwise-comparable vertices so each can reach the next.

        Descending dominance works because equal counts force mutual
        reachability; `first` breaks ties in favour of a start vertex.
        """
        order = sorted(
            items,
            key=lambda v: (-self.dominance(v), 0 if v == first else 1, v),
        )
        for a, b in zip(order, order[1:]):
            assert self.leq(a, b), "dominance sort must refine reachability"
        return order


def reach_matrix(arena: Arena, relevant: Iterable[int], v0: int | None = None) -> ReachMatrix:
    """One attractor run per distinguished vertex, O(|relevant|*(n+m))."""
    vertices = set(relevant)
    if v0 is not None:
        vertices.add(v0)
    ordered = tuple(sorted(vertices))
    results = {w: attractor(arena, [w]) for w in ordered}
    return ReachMatrix(ordered, results)


def solve_singleton(game: Game) -> SolveResult:
    """Solve a game in which every color set is a single vertex.

    Eve wins exactly on the intersection of the target attractors when
    the targets are pairwise attractor-ordered, using k memory states
    that chase the targets in order.  A single incomparable pair hands
    Adam the whole arena with a 2-state avoidance strategy.
    """
    arena = game.arena
    objective = game.objective
    for i, members in enumerate(objective.color_sets):
        if len(members) != 1:
            raise NotSingletonError(
                f"color {i + 1} has {len(members)} vertices, expected exactly one"
            )
    n = arena.n
    k = objective.k
    everyone = frozenset(range(n))
    if k == 0:
        eve = FiniteMemoryStrategy(Owner.EVE, identity_memory(), {})
        return SolveResult(
            "singleton", everyone, frozenset(), eve_strategy=eve,
            stats={"total": True, "visit_order": []},
        )

    targets = [min(members) for members in objective.color_sets]
    matrix = reach_matrix(arena, targets)
    for i in range(k):
        for j in range(i + 1, k):
            if not matrix.comparable(targets[i], targets[j]):
                return _singleton_adam(game, matrix, targets, i, j)

    # Visit order: most dominant target first, so each target lies in
    # the attractor of its successor.
    order = sorted(range(k), key=lambda i: (-matrix.dominance(targets[i]), i))
    chain = [targets[i] for i in order]
    for a, b in zip(chain, chain[1:]):
        assert matrix.leq(a, b), "dominance sort must refine the attractor order"

    region = everyone
    for t in targets:
        region &= matrix.results[t].attractor
    assert region == matrix.results[chain[0]].attractor, (
        "the first target's attractor must be the intersection"
    )

    def advance(state: int, w: int) -> int:
        nxt = state
        while nxt < k and chain[nxt] == w:
            nxt += 1
        return min(nxt, k - 1)

    update: dict[tuple[int, int, int], int] = {}
    moves: dict[tuple[int, int], int] = {}
    for state in range(k):
        w = chain[state]
        nxt = advance(state, w)
        for u in range(n):
            if nxt != state and w in arena.succ[u]:
                update[(state, u, w)] = nxt
        for u, step_to in matrix.results[w].moves.items():
            moves[(u, state)] = step_to
    initial = {v: advance(0, v) if v == chain[0] else 0 for v in range(n)}
    eve = FiniteMemoryStrategy(
        Owner.EVE, MemoryStructure.from_table(k, initial, update), moves
    )

    adam_moves = {
        (u, 0): w for u, w in avoid_moves(arena, matrix.results[chain[0]]).items()
    }
    adam = FiniteMemoryStrategy(Owner.ADAM, identity_memory(), adam_moves)
    return SolveResult(
        "singleton", region, everyone - region,
        eve_strategy=eve, adam_strategy=adam,
        stats={"total": True, "visit_order": [i + 1 for i in order]},
    )


def _singleton_adam(
    game: Game, matrix: ReachMatrix, targets: Sequence[int], i: int, j: int
) -> SolveResult:
    """Adam wins everywhere off an incomparable target pair.

    State 0 plays the positional complement strategy of the first
    target's attractor; once the play enters that target the memory
    flips and avoids the second one instead.  If the second target is
    seen first, the play already sits outside the first's attractor and
    state 0 keeps it there, so no extra state is needed.
    """
    arena = game.arena
    n = arena.n
    vi, vj = targets[i], targets[j]
    moves: dict[tuple[int, int], int] = {}
    for u, w in avoid_moves(arena, matrix.results[vi]).items():
        moves[(u, 0)] = w
    for u, w in avoid_moves(arena, matrix.results[vj]).items():
        moves[(u, 1)] = w
    update = {
        (0, u, vi): 1 for u in range(n) if vi in arena.succ[u]
    }
    initial = {v: 1 if v == vi else 0 for v in range(n)}
    adam = FiniteMemoryStrategy(
        Owner.ADAM, MemoryStructure.from_table(2, initial, update), moves
    )
    return SolveResult(
        "singleton", frozenset(), frozenset(range(n)),
        adam_strategy=adam,
        stats={"total": False, "incomparable_colors": (i + 1, j + 1)},
    )


@dataclass(frozen=True)
class TwoSatFormula:
    """CNF with clauses of width two; unit clauses duplicate a literal.

    Literals follow the DIMACS convention: variable v is the positive
    literal v and its negation -v, with 1 <= v <= num_vars.
    """

    num_vars: int
    clauses: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("negative variable count")
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")
        if self.labels is not None and len(self.labels) != self.num_vars:
            raise ValueError("one label per variable expected")

    @classmethod
    def from_clauses(
        cls,
        num_vars: int,
        clauses: Iterable[Sequence[int]],
        labels: Sequence[str] | None = None,
    ) -> "TwoSatFormula":
        pairs = []
        for clause in clauses:
            if not 1 <= len(clause) <= 2:
                raise ValueError(
                    f"clause {tuple(clause)} must have one or two literals"
                )
            pairs.append((clause[0], clause[-1]))
        return cls(num_vars, tuple(pairs), None if labels is None else tuple(labels))


@dataclass(frozen=True)
class TwoSatResult:
    satisfiable: bool
    assignment: tuple[bool, ...] | None
    conflict_var: int | None


def two_sat_solve(formula: TwoSatFormula) -> TwoSatResult:
    """Linear-time satisfiability via the implication graph.

    UNSAT comes with the first variable sharing a strongly connected
    component with its own negation.
    """

    def node(lit: int) -> int:
        return 2 * (abs(lit) - 1) + (0 if lit > 0 else 1)

    succ: list[list[int]] = [[] for _ in range(2 * formula.num_vars)]
    for a, b in formula.clauses:
        succ[node(-a)].append(node(b))
        succ[node(-b)].append(node(a))
    _, comp = strongly_connected_components(succ)

    for v in range(1, formula.num_vars + 1):
        if comp[2 * (v - 1)] == comp[2 * (v - 1) + 1]:
            return TwoSatResult(False, None, v)
    # Component ids count up in completion order, so the smaller id is
    # further downstream in the implication order and safe to satisfy.
    assignment = tuple(
        comp[2 * i] < comp[2 * i + 1] for i in range(formula.num_vars)
    )
    for a, b in formula.clauses:
        sat_a = assignment[abs(a) - 1] == (a > 0)
        sat_b = assignment[abs(b) - 1] == (b > 0)
        assert sat_a or sat_b, "assignment must satisfy every clause"
    return TwoSatResult(True, assignment, None)


def parse_dimacs_cnf2(text: str) -> TwoSatFormula:
    """Parse DIMACS CNF restricted to clauses of width one or two."""
    num_vars: int | None = None
    declared = 0
    clauses: list[tuple[int, int]] = []
    pending: list[int] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "%":
            break
        if tokens[0] == "p":
            if num_vars is not None:
                raise GameParseError("duplicate problem line", lineno)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise GameParseError(
                    "problem line must be 'p cnf <vars> <clauses>'", lineno
                )
            num_vars = _int_token(tokens[2], lineno)
            declared = _int_token(tokens[3], lineno)
            if num_vars < 0 or declared < 0:
                raise GameParseError("negative count in problem line", lineno)
            continue
        if num_vars is None:
            raise GameParseError("clause before problem line", lineno)
        for token in tokens:
            lit = _int_token(token, lineno)
            if lit == 0:
                if not pending:
                    raise GameParseError("empty clause", lineno)
                if len(pending) > 2:
                    raise GameParseError(
                        f"clause has {len(pending)} literals, at most two allowed",
                        lineno,
                    )
                clauses.append((pending[0], pending[-1]))
                pending.clear()
            elif abs(lit) > num_vars:
                raise GameParseError(
                    f"literal {lit} out of range, {num_vars} variables declared",
                    lineno,
                )
            else:
                pending.append(lit)
    if num_vars is None:
        raise GameParseError("missing problem line", max(lineno, 1))
    if pending:
        raise GameParseError("unterminated clause at end of input", lineno)
    if len(clauses) != declared:
        raise GameParseError(
            f"declared {declared} clauses, found {len(clauses)}", lineno
        )
    return TwoSatFormula(num_vars, tuple(clauses))


def _int_token(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GameParseError(f"expected an integer, got '{token}'", lineno) from None


def solve_oneplayer_size2(game: Game) -> SolveResult:
    """Solve an all-Eve game whose color sets have at most two vertices.

    Eve wins from v iff she can visit one vertex per color along a
    single path, which a 2-SAT formula over the colored vertices
    expresses: incomparable vertices exclude each other, each color
    demands a member, and unit clauses drop members unreachable from v.
    A witness play is rebuilt from the satisfying assignment.
    """
    arena = game.arena
    objective = game.objective
    for v in range(arena.n):
        if not arena.is_eve(v):
            raise NotOnePlayerError(
                f"vertex '{arena.names[v]}' belongs to the opponent"
            )
    for i, members in enumerate(objective.color_sets):
        if len(members) > 2:
            raise ColorTooLargeError(
                f"color {i + 1} has {len(members)} vertices, at most two allowed"
            )
    n = arena.n
    k = objective.k
    everyone = frozenset(range(n))
    if k == 0:
        witness = (game.init,) if game.init is not None else None
        eve = FiniteMemoryStrategy(Owner.EVE, identity_memory(), {})
        return SolveResult(
            "oneplayer2", everyone, frozenset(), eve_strategy=eve,
            witness=witness, stats={"variables": 0, "clauses": 0},
        )
    for i, members in enumerate(objective.color_sets):
        if not members:
            adam = FiniteMemoryStrategy(Owner.ADAM, identity_memory(), {})
            return SolveResult(
                "oneplayer2", frozenset(), everyone, adam_strategy=adam,
                stats={"empty_color": i + 1},
            )

    # One variable per (color, vertex) occurrence; a singleton color
    # contributes a single variable that its width-two clause repeats.
    occ: list[tuple[int, int]] = []
    for i, members in enumerate(objective.color_sets):
        occ.extend((i, v) for v in sorted(members))
    nvars = len(occ)
    labels = tuple(f"c{i + 1}:{arena.names[v]}" for i, v in occ)
    matrix = reach_matrix(arena, {v for _, v in occ})

    static: list[tuple[int, int]] = []
    for p in range(nvars):
        for q in range(p + 1, nvars):
            if not matrix.comparable(occ[p][1], occ[q][1]):
                static.append((-(p + 1), -(q + 1)))
    incomparable = len(static)
    var = 1
    for members in objective.color_sets:
        if len(members) == 1:
            static.append((var, var))
        else:
            static.append((var, var + 1))
        var += len(members)

    eve_region = set()
    init_assignment = None
    for v in range(n):
        units = [
            (-(p + 1), -(p + 1))
            for p in range(nvars)
            if not matrix.leq(v, occ[p][1])
        ]
        result = two_sat_solve(
            TwoSatFormula(nvars, tuple(static + units), labels)
        )
        if result.satisfiable:
            eve_region.add(v)
            if v == game.init:
                init_assignment = result.assignment

    witness = None
    if init_assignment is not None:
        witness = _size2_witness(game, matrix, occ, init_assignment)
    return SolveResult(
        "oneplayer2", frozenset(eve_region), everyone - eve_region,
        witness=witness,
        stats={
            "variables": nvars,
            "clauses": len(static),
            "incomparable_pairs": incomparable,
        },
    )


def _size2_witness(
    game: Game,
    matrix: ReachMatrix,
    occ: Sequence[tuple[int, int]],
    assignment: Sequence[bool],
) -> tuple[int, ...]:
    """Chain one chosen vertex per color into a play visiting them all."""
    arena = game.arena
    chosen: dict[int, int] = {}
    for p, (color, v) in enumerate(occ):
        if assignment[p] and color not in chosen:
            chosen[color] = v
    stops = dict.fromkeys([game.init, *chosen.values()])
    order = matrix.chain(stops, first=game.init)
    assert order[0] == game.init, "witness chain must start at the init vertex"
    path = [order[0]]
    for a, b in zip(order, order[1:]):
        path.extend(_shortest_path(arena, a, b)[1:])
    play = trace_play(game, path)
    assert play.masks[-1] == game.objective.full_mask, (
        "witness play must collect every color"
    )
    assert len(path) - 1 <= arena.n * game.objective.k
    return tuple(path)


def _shortest_path(arena: Arena, src: int, dst: int) -> list[int]:
    if src == dst:
        return [src]
    parent = {src: -1}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in arena.succ[u]:
            if w not in parent:
                parent[w] = u
                if w == dst:
                    path = [w]
                    while path[-1] != src:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                queue.append(w)
    raise AssertionError(f"no path from {src} to {dst}")
