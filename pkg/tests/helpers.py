"""Small builders shared by the test modules."""

import dataclasses
import random

from genreach import (
    FiniteMemoryStrategy,
    Game,
    GenParams,
    MemoryStructure,
    Owner,
    generate,
    minimax_oracle,
)


def random_game(
    seed: int,
    n: int = 8,
    k: int = 2,
    density: float = 0.3,
    eve_ratio: float = 0.5,
    color_size: tuple[int, int] = (1, 2),
) -> Game:
    return generate(
        GenParams(
            "random",
            k=k,
            n=n,
            density=density,
            eve_ratio=eve_ratio,
            color_size=color_size,
            seed=seed,
        )
    )


def minimax_region(game: Game) -> frozenset[int]:
    """Eve's winning region computed one start vertex at a time."""
    return frozenset(
        v
        for v in range(game.arena.n)
        if minimax_oracle(dataclasses.replace(game, init=v)) is Owner.EVE
    )


def random_machine(
    game: Game, player: Owner, states: int, rng: random.Random
) -> FiniteMemoryStrategy:
    """A uniformly random finite-memory strategy for one player."""
    arena = game.arena
    table = {
        (s, v, w): rng.randrange(states)
        for s in range(states)
        for v in range(arena.n)
        for w in arena.succ[v]
    }
    moves = {
        (v, s): rng.choice(arena.succ[v])
        for v in range(arena.n)
        if arena.owner[v] is player and len(arena.succ[v]) > 1
        for s in range(states)
    }
    return FiniteMemoryStrategy(
        player, MemoryStructure.from_table(states, 0, table), moves
    )
