"""XOR Boolean automata networks under asynchronous updates.

Modules: ``core`` (networks, updates, transforms), ``families`` (double
cycles, flowers, chains, cacti), ``atg`` (transition graphs and their
shape), ``planner`` (update plans), ``equiv`` (isomorphism, sign normal
forms, fixed points) and ``cli``.
"""
from .core import Network, apply_update, format_network, parse_network
from .families import FamilyLabeling, gen_badc, gen_chain, gen_flower, gen_random_cactus
from .atg import build_atg, check_theorem_shape, condense
from .planner import plan_badc, plan_general, verify_plan
from .equiv import find_isomorphism, fixed_points_symbolic, normalize_signs

__version__ = "0.1.0"

__all__ = [
    "Network",
    "apply_update",
    "format_network",
    "parse_network",
    "FamilyLabeling",
    "gen_badc",
    "gen_chain",
    "gen_flower",
    "gen_random_cactus",
    "build_atg",
    "check_theorem_shape",
    "condense",
    "plan_badc",
    "plan_general",
    "verify_plan",
    "find_isomorphism",
    "fixed_points_symbolic",
    "normalize_signs",
]
