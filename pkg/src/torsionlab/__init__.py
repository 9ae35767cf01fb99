"""Exact computation of generalized Nijenhuis torsions and their polarizations."""

from .catalog import FamilySpec, make_diagonal, make_random, powers_of, random_poly
from .checker import ModuleReport, SZReport, check_module, is_gen_nijenhuis, sz_verify
from .geometry import (
    Chart,
    CovectorField,
    OperatorField,
    TwoFormField,
    VectorField,
    form_eval,
    lie_bracket,
    op_add,
    op_apply,
    op_commutator,
    op_compose,
    op_scale,
    pair,
    t_form,
    t_tensor,
)
from .parsing import ParseError, Scene, format_scene, parse_poly, parse_scene
from .polycore import Context, ContextError, MultiPoly, UsageError, coeff_extract
from .torsion import (
    CommutativityError,
    defect,
    defect_recurrence_check,
    fn_bracket,
    fn_bracket_components,
    gen_torsion,
    gen_torsion_closed,
    h1_bracket,
    h2_bracket,
    haantjes,
    higher_haantjes,
    multilinearity_check,
    nijenhuis,
    nijenhuis_functional,
    polarization,
)

__version__ = "0.1.0"
