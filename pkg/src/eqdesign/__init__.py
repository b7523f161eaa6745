"""Equilibrium design for mean-payoff concurrent games with GR(1) goals."""

from .errors import (EqDesignError, FormulaSyntaxError, GameSemanticError, GameSyntaxError,
                     InputError, ResourceLimitExceeded, UnknownPropositionError)
from .game import (Arena, Edge, Game, LassoPath, SubsidyScheme, apply_subsidy, count_schemes,
                   enumerate_schemes, mean_payoff, parse_game, scheme_cost, serialize_game)
from .gr1 import GR1Formula, eval_on_lasso, parse_formula, satisfying_states
from .mpg import (PrunedGame, PunishmentTable, TurnBasedMPG, build_punishment_game,
                  is_z_secure, prune, punishment_table, solve_mpg)
from .flow import (Avoid, FlowLP, FlowSolution, NegGR1, NEOnly, VisitAll, add_avoid_constraint,
                   add_visit_constraints, build_base_lp, check_path_exists, feasible)
from .solver import (Designer, Limits, StrongWitness, WeakWitness, budget_upper_bound,
                     exact_strong, exact_weak, opt_strong, opt_weak, strong_implementation,
                     unique_opt_strong, unique_opt_weak, weak_implementation)

__version__ = "0.1.0"
