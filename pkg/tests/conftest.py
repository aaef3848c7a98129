"""Shared fixtures: a hand-written demo game and the generated families."""

import pytest

from genreach import GenParams, generate, parse_game

# Four vertices, two colors.  Eve owns c (the start) and b, Adam owns a and
# d.  Color 1 is {a, b}, color 2 is the self-looping sink d.  Eve wins from
# c, a and b (pick up color 1, then fall into d); from d alone the first
# color is unreachable.
DEMO_TEXT = """\
genreach 1
colors 2
vertex c eve
vertex a adam 1
vertex b eve 1
vertex d adam 2
edge c a
edge c b
edge c d
edge a b
edge a d
edge b a
edge b d
edge d d
init c
"""

# Forall x exists y forall z: (x or not y) and (not y or z).  True: pick y
# false regardless of x, both clauses hold whatever z is.
QBF1_TEXT = """\
p cnf 3 2
a 1 0
e 2 0
a 3 0
1 -2 0
-2 3 0
"""


@pytest.fixture
def demo():
    return parse_game(DEMO_TEXT)


@pytest.fixture(scope="session")
def flower2():
    return generate(GenParams("flower", k=2))


@pytest.fixture(scope="session")
def flower3():
    return generate(GenParams("flower", k=3))


@pytest.fixture(scope="session")
def picker3():
    return generate(GenParams("picker", k=3))


@pytest.fixture(scope="session")
def fig42():
    return generate(GenParams("fig4", k=2))


@pytest.fixture(scope="session")
def fig44():
    return generate(GenParams("fig4", k=4))


@pytest.fixture(scope="session")
def fig5():
    return generate(GenParams("fig5"))
