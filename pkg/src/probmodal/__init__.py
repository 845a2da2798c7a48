"""Probabilistic modal logic over Kripke and belief neighbourhood models.

Everything is exact: measures and thresholds are ``fractions.Fraction``.
"""

from .belief import (
    AdditivityReport,
    BeliefNbhdModel,
    additivity,
    core,
    elementary_sets,
    from_mass,
    from_tables,
    interior,
    is_well_defined,
    mobius_transform,
    nested_check,
    neighbourhood,
    satisfies_n,
    truth_set_n,
    vacuous,
    validate_belief,
)
from .documents import DocumentError, dump, load, read, write
from .equiv import (
    EquivVerdict,
    enumerate_formulas,
    gen_belief,
    gen_kripke,
    modally_equivalent,
    threshold_grid,
)
from .formula import (
    BOTTOM,
    TOP,
    Atom,
    BelGeq,
    BelGt,
    FormulaSyntaxError,
    Not,
    Or,
    PrGeq,
    parse,
    render,
)
from .kernels import BACKEND
from .kripke import (
    ProbKripkeModel,
    UnknownAtom,
    UnknownWorld,
    satisfies_k,
    truth_set_k,
    validate_kripke,
)
from .transform import (
    NotAdditive,
    SplitPolicy,
    belief_to_kripke,
    compatible_kripke_sample,
    is_compatible,
    kripke_to_belief,
)

__version__ = "0.1.0"
