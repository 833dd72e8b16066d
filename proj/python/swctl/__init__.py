"""Structural controllability of switched linear systems.

Systems are dicts (or JSON strings) in the same schema the CLI reads.
"""

import json

from . import _core
from ._core import ConsistencyError, InputError, MdgSizeError, DEFAULT_SEED, MERSENNE61

__all__ = [
    "check", "grank", "bounds", "cactus", "mdg", "realize", "controllable_dim", "run_cli",
    "InputError", "MdgSizeError", "ConsistencyError", "DEFAULT_SEED", "MERSENNE61",
]


def _text(system):
    return system if isinstance(system, str) else json.dumps(system)


def check(system, seed=DEFAULT_SEED, trials=3, prime=MERSENNE61):
    return json.loads(_core.check(_text(system), seed, trials, prime))


def grank(system):
    return _core.grank(_text(system))


def bounds(system, seed=DEFAULT_SEED, trials=3):
    return json.loads(_core.bounds(_text(system), seed, trials))


def cactus(system):
    return json.loads(_core.cactus(_text(system)))


def mdg(system, layers=2):
    return json.loads(_core.mdg(_text(system), layers))


def realize(system, seed=DEFAULT_SEED, prime=MERSENNE61):
    return json.loads(_core.realize(_text(system), seed, prime))


def controllable_dim(system, seed=DEFAULT_SEED, trials=3, prime=MERSENNE61):
    return json.loads(_core.controllable_dim(_text(system), seed, trials, prime))


def run_cli(*args):
    return _core.run_cli([str(a) for a in args])
