"""Decorated simplicial complexes over finite posets, with filling certificates.

The package builds the nerves of finite posets, decorates them with markings
and scalings, and certifies inclusions as anodyne by explicit, replayable
sequences of generator attachments.  A FastAPI service and a CLI expose the
same handler layer.
"""

from .complexes import (
    Chain,
    Complex,
    ComplexError,
    DecoratedComplex,
    Poset,
    Regime,
    boundary,
    close,
    generalized_horn,
    horn,
    join_linear,
    nerve,
    restrict,
    standard_simplex,
)
from .certificates import (
    Certificate,
    CertificateError,
    FillStep,
    ReplayReport,
    match_linear,
    recognize,
    replay,
    search,
)
from .families import (
    SubsetFamily,
    add_face,
    basal_sets,
    equivalent,
    is_inner_dull,
    is_right_dull,
    minimize,
    pivot_hypotheses,
    restrict_family,
    right_pivot_hypotheses,
    s_complex,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
