"""Exact computations with systems of partial isometries of finite trees.

The main entry points are re-exported here; see the submodules for the
rest: :mod:`.trees`, :mod:`.words`, :mod:`.systems`, :mod:`.suspension`,
:mod:`.laminations`, :mod:`.heart`, :mod:`.approx`, :mod:`.io`.
"""

from .catalog import BUNDLED_NAMES, IetSpec, bundled, gen_iet, gen_itm, interval_regime
from .errors import (
    BudgetError,
    DepthError,
    FormatError,
    HeartwoodError,
    InputError,
    InvariantBreach,
    IsometryViolation,
    OutOfBallError,
)
from .scalars import ExactScalar, golden, parse_scalar, sqrt
from .systems import IsometrySystem, PartialIsometry, induced_system, infinite_dom
from .suspension import BallTree, HostPoint, SuspensionTree, build_ball, path_ball
from .trees import ClosedSubtree, FiniteMetricTree, TreePoint, segment
from .words import Alphabet, InfiniteWordGen, fib_gen, periodic

__version__ = "0.1.0"
