"""Production-inventory cooperative games: coalition costs from closed-form
dual prices, the Owen point, PMAS, game constructions and axiom checks."""

from .allocation import (
    CoreVerdict,
    EssentialReport,
    core_is_owen_singleton,
    essential_players,
    in_core,
    owen_point,
    pmas,
)
from .model import (
    Allocation,
    PISituation,
    Pmas,
    SituationError,
    TUGame,
    coalitions,
    read_game,
    read_situation,
    restrict,
    validate,
    write_game,
    write_situation,
)
from .solver import (
    aggregate,
    build_game,
    char_value,
    dual_solution,
    oracle_cost,
    primal_plan,
)

__version__ = "0.1.0"
