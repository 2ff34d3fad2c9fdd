"""Exact Bernstein-Sato ideals along monoid ideals in the Weyl algebra."""

__version__ = "0.1.0"

from .arith import MultiPoly, IntMatrix, smith_normal_form, hermite_normal_form, rational_roots  # noqa: E402
from .frontend import JobSpec, ParseError, JobError, parse_job, parse_poly  # noqa: E402
from .weyl import (AlgebraProfile, WeylElement, TwistedContext, TwistedElement, act_on_twisted,  # noqa: E402
                   right_transporter, weyl_mul, CONVENTION)
from .groebner import (LeftIdeal, BasisCache, buchberger, groebner_basis, normal_form, eliminate,  # noqa: E402
                       weight_gb, colon_central)
from .monoid import MonoidIdeal, LocalizedIdeal, minimal_generators, membership, power, localize, log_stratum  # noqa: E402
from .bsideal import (AnnResult, BSResult, ann_fs, bs_ideal, b_function, bs_ideal_localized,  # noqa: E402
                      support_tower, certify)
from .support import (LinearForm, AffineFlat, TorsionCoset, LinearLocus, factor_linear, decompose_locus,  # noqa: E402
                      exp_image, coset_equal, structural_check)
