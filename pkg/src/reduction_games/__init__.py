"""Reduction games on Baire space.

Ultimately periodic reals, parity-automaton sets, finite-state strategies,
and the composite games that assemble piecewise reductions.
"""

from . import errors
from .errors import *  # noqa: F401,F403
from .moves import BT, ERASE, PASS, Nat, RowMove, Sym, move_from_json, move_to_json
from .machines import (
    DelayTransducer,
    FiniteStrategy,
    HistoryStrategy,
    Machine,
    MealyStrategy,
    MooreStrategyI,
    Strategy,
    StrategyI,
    TableStrategyI,
    const_strategy_I,
    constant_transducer,
    identity_transducer,
    shift_transducer,
)
from .omega import (
    ControlSet,
    ParityAutomaton,
    PrefixVerdict,
    as_buchi,
    canonical_pi1,
    canonical_pi2,
    complement,
    cylinder,
    digit_equals,
    empty_set,
    full_space,
    inf_zeros_set,
    intersection,
    membership_up,
    prefix_verdict,
    prepend,
    union,
    zero_stream_set,
)
from .games import (
    Adjudication,
    GameSpec,
    LassoRun,
    RunResult,
    Winner,
    adjudicate_up,
    delay,
    erase_eval,
    make_base_game,
    p_close,
    run_to_depth,
)
from .streams import *  # noqa: F401,F403
from .strategies import *  # noqa: F401,F403
from .composite import *  # noqa: F401,F403
from .gamma import *  # noqa: F401,F403
from .limits import *  # noqa: F401,F403
from .lipschitz import *  # noqa: F401,F403
from .degrees import *  # noqa: F401,F403
from .serialization import *  # noqa: F401,F403

__version__ = "0.1.0"
