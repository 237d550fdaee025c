import pytest

from coxfold.coxeter import CoxeterMatrix
from coxfold.cyclo import INF
from coxfold.folding import Automorphism
from coxfold.words import CoxeterGroup


def a_matrix(n):
    return CoxeterMatrix.from_labels(n, {(i, i + 1): 3 for i in range(1, n)})


MATRICES = {
    "a2": a_matrix(2),
    "a3": a_matrix(3),
    "a4": a_matrix(4),
    "a5": a_matrix(5),
    "b2": CoxeterMatrix.from_labels(2, {(1, 2): 4}),
    "b3": CoxeterMatrix.from_labels(3, {(1, 2): 3, (2, 3): 4}),
    "d4": CoxeterMatrix.from_labels(4, {(1, 2): 3, (2, 3): 3, (2, 4): 3}),
    "i25": CoxeterMatrix.from_labels(2, {(1, 2): 5}),
    "i26": CoxeterMatrix.from_labels(2, {(1, 2): 6}),
    "a1x3": CoxeterMatrix.from_labels(3, {}),
    "triangle": CoxeterMatrix.from_labels(3, {(1, 2): 3, (2, 3): 3, (1, 3): 3}),
    "dinf": CoxeterMatrix.from_labels(2, {(1, 2): INF}),
}

FLIPS = {
    "a2": Automorphism((2, 1)),
    "a3": Automorphism((3, 2, 1)),
    "a4": Automorphism((4, 3, 2, 1)),
    "a5": Automorphism((5, 4, 3, 2, 1)),
    "d4_triality": Automorphism((3, 2, 4, 1)),
    "d4_swap": Automorphism((1, 2, 4, 3)),
    "triangle": Automorphism((2, 1, 3)),
    "dinf": Automorphism((2, 1)),
}

_groups: dict[str, CoxeterGroup] = {}


@pytest.fixture(scope="session")
def group_of():
    """Shared CoxeterGroup instances keyed by matrix name."""

    def get(name):
        if name not in _groups:
            _groups[name] = CoxeterGroup(MATRICES[name])
        return _groups[name]

    return get
