"""Exact characteristic-2 toolkit: escape-time dynamics of
t -> t^4 + alpha/t^4, colength counts for the quartic family
alpha*z^4 + (x^2+yz)(y^2+xz), and certificate-checked verification that
the associated closure operation fails to commute with inverting t.
"""

__version__ = "0.1.0"

from .binaryfield import (
    FieldCtx,
    FieldElem,
    field_create,
    field_from_spec,
    field_spec,
    format_elem,
    least_irreducible,
    parse_elem,
    preset,
    preset_names,
)
from .dynamics import (
    TABLE1_DEGREES,
    TABLE2_ROWS,
    bridge_check,
    escape_elements,
    escape_time,
    escape_time2,
    gn_hn,
)
from .gflinalg import (
    GFMatrix,
    PolyMatrix,
    SlicedMatrix,
    generic_rank,
    in_image,
    kernel,
    rank,
    solve,
)
from .hilbertkunz import en, en_full_oracle, en_generic, hk_formula, random_generic_points
from .parity import binom_odd, cover_check, region_points, tiling_check
from .tightverify import (
    Witness,
    containment_generic,
    noncontainment,
    nullity_invariance,
    witness,
)
from .trivarring import (
    TriPoly,
    graded_basis,
    h_poly,
    u_basis,
    w0_generators,
    w_generators,
    wprime_generators,
)
from .unipoly import BitPoly, factor, format_poly, is_squarefree, parse_poly

__all__ = [
    "__version__",
    "FieldCtx",
    "FieldElem",
    "field_create",
    "field_from_spec",
    "field_spec",
    "format_elem",
    "least_irreducible",
    "parse_elem",
    "preset",
    "preset_names",
    "TABLE1_DEGREES",
    "TABLE2_ROWS",
    "bridge_check",
    "escape_elements",
    "escape_time",
    "escape_time2",
    "gn_hn",
    "GFMatrix",
    "PolyMatrix",
    "SlicedMatrix",
    "generic_rank",
    "in_image",
    "kernel",
    "rank",
    "solve",
    "en",
    "en_full_oracle",
    "en_generic",
    "hk_formula",
    "random_generic_points",
    "binom_odd",
    "cover_check",
    "region_points",
    "tiling_check",
    "Witness",
    "containment_generic",
    "noncontainment",
    "nullity_invariance",
    "witness",
    "TriPoly",
    "graded_basis",
    "h_poly",
    "u_basis",
    "w0_generators",
    "w_generators",
    "wprime_generators",
    "BitPoly",
    "factor",
    "format_poly",
    "is_squarefree",
    "parse_poly",
]
