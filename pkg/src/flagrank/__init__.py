"""Schubert calculus, the Belkale-Kumar deformed product and quiver
subrepresentation counts, with exact arithmetic."""

from .errors import (
    FlagrankError,
    IdentityFailure,
    InputError,
    InstabilityError,
    PreconditionError,
    ResourceError,
)
from .roots import RootSystem, WeylElement, build_root_system, parse_type, weyl_element
from .schubert import SchubertClass, cup_constants, multi_point_coefficient, variety_point_coefficient
from .bk import BKReport, bk_multi_constant, is_levi_movable_exact_fullflag, is_levi_movable_randomized, theorem4_check
from .quiver import Decomposition, DimVector, Quiver, QuiverRep, circ, count_filtrations, count_subreps, hom_ext, ringel_form

__version__ = "0.1.0"
