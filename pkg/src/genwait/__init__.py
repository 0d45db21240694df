"""Exact, certified and simulated waiting times for generating finite groups."""

__version__ = "0.1.0"

from .named import GroupSpec, parse_group, standard_group  # noqa: E402
from .perm import FiniteGroup, Permutation, group_from_generators  # noqa: E402
from .waiting import (DirichletPolynomial, expected_wait_exact,  # noqa: E402
                      gen_probability, gen_probability_dirichlet)

__all__ = [
    "DirichletPolynomial", "FiniteGroup", "GroupSpec", "Permutation", "__version__",
    "expected_wait_exact", "gen_probability", "gen_probability_dirichlet",
    "group_from_generators", "parse_group", "standard_group",
]
