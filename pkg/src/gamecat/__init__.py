"""A category of finite extensive-form games.

Games, their structure-preserving maps, mono/iso classification with
constructive witnesses, subgames, equilibrium enumeration, and converters
to distinguished-action / sequence / action-set normal forms with
isomorphism certificates.
"""

from .canon import (ConversionResult, GameProperties, properties,
                    to_action_set, to_distinguished,
                    to_distinguished_sequence, to_sequence)
from .clt import CLT, next_node, validate_clt
from .equilibrium import (GrandStrategy, is_nash, nash, outcome, push_strategy,
                          spe, strategies, strategy_space_size)
from .errors import GameError, OperationError, ParseError, ValidationError
from .fileformat import (parse_game_text, parse_morphism_text, print_game,
                         print_morphism)
from .game import (Game, build_game, one_player_zero_game, ordinal_profile,
                   validate_game)
from .morphism import (CltMorphism, GameMorphism, action_at, clt_mono_witness,
                       compose, forget, identity_clt_morphism,
                       identity_morphism, inverse, is_iso, is_mono, iso_search,
                       mono_witness, pushforward, run_at,
                       validate_clt_morphism, validate_game_morphism)
from .subgame import (SeltenResult, is_selten_subgame, selten_subclt,
                      selten_subgame, subgame_roots)
from .terms import (Atom, FinSet, Term, Tup, encode, encode_set, parse_term,
                    term_cmp, term_key)
from .tree import (OutTree, descendants, run_end, runs, strict_predecessors,
                   tree_leq, validate_out_tree)

__all__ = [name for name in dir() if not name.startswith("_")]
