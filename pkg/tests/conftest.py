"""Shared fixtures: the two worked symmetry contexts and their matrix."""

import pytest

from eqdeg.spectral import GammaSpec, ProblemConfig, build_symmetry_context

# symmetric, commutes with coordinate permutations, eigenvalues -2 and -1/2
CASE_A = (
    (-1.0, -0.5, -0.5),
    (-0.5, -1.0, -0.5),
    (-0.5, -0.5, -1.0),
)


def case_config(m, **kwargs):
    defaults = dict(m=m, k=3, gamma=GammaSpec(type="dihedral", n=3),
                    a_matrix=CASE_A)
    defaults.update(kwargs)
    return ProblemConfig(**defaults)


@pytest.fixture(scope="session")
def ctx_m3():
    return build_symmetry_context(case_config(3))


@pytest.fixture(scope="session")
def ctx_m4():
    return build_symmetry_context(case_config(4))
