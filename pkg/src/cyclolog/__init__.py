"""Exact fixed-precision arithmetic for Z_p[pi] with pi^(p-1) = -p, the
p-adic logarithm and exponential on principal units, constructive log
preimages on the unit annulus, and exhaustive verifiers."""

from .errors import (
    BranchZero,
    CapExceeded,
    ContextMismatch,
    CyclologError,
    DigitStringError,
    NotAUnit,
    NotDivisible,
    NotInMSquared,
    NotPrincipalUnit,
    ValuationTooSmall,
)
from .ring import Context, PiElement, PrincipalUnit, format_digits, normalize, parse_digits
from .series import SeriesBudget, fermat_digit_check, log_digit_formula, pexp, plog
from .preimage import (
    digit2_for_branch,
    preimage,
    preimage_all,
    qr_pair_enumeration,
    roots_of_unity,
)
from .verify import (
    DEFAULT_CAP,
    CheckResult,
    VerificationReport,
    check_annulus_image,
    check_full_image_and_index,
    check_residue_field,
    check_square_iso,
    run_all,
)

__version__ = "0.1.0"

__all__ = [
    "BranchZero",
    "CapExceeded",
    "CheckResult",
    "Context",
    "ContextMismatch",
    "CyclologError",
    "DEFAULT_CAP",
    "DigitStringError",
    "NotAUnit",
    "NotDivisible",
    "NotInMSquared",
    "NotPrincipalUnit",
    "PiElement",
    "PrincipalUnit",
    "SeriesBudget",
    "ValuationTooSmall",
    "VerificationReport",
    "check_annulus_image",
    "check_full_image_and_index",
    "check_residue_field",
    "check_square_iso",
    "digit2_for_branch",
    "fermat_digit_check",
    "format_digits",
    "log_digit_formula",
    "normalize",
    "parse_digits",
    "pexp",
    "plog",
    "preimage",
    "preimage_all",
    "qr_pair_enumeration",
    "roots_of_unity",
    "run_all",
]
