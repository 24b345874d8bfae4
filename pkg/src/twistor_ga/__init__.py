"""Twistors in the spacetime and conformal geometric algebras.

Dense Clifford algebras up to six dimensions (``ga_core``), the spacetime
algebra and its spinors (``sta``), twistors and their observables
(``twistor``), conformal geometric algebra (``conformal``), the spinor
representation of the conformal group (``conformal_spinor``) and the
geometry of null rays and the Robinson congruence (``congruence``).
"""

from .ga_core import (
    Multivector,
    NotABlade,
    Signature,
    SignatureMismatch,
    geometric_product,
    grade_projection,
    inner_product,
    outer_product,
    reverse,
    rotor_exp,
)
from .twistor import Twistor, example_twistor, helicity, momentum, twistor_new

__version__ = "0.1.0"

__all__ = [
    "Multivector",
    "NotABlade",
    "Signature",
    "SignatureMismatch",
    "Twistor",
    "__version__",
    "example_twistor",
    "geometric_product",
    "grade_projection",
    "helicity",
    "inner_product",
    "momentum",
    "outer_product",
    "reverse",
    "rotor_exp",
    "twistor_new",
]
