"""q-series toolkit for the reciprocal of the false theta function
Psi(-q^t, q): truncated series arithmetic, theta/eta constructors, an
identity catalog and arithmetic-progression congruence checks."""

from .series import (
    ZZ,
    CoeffRing,
    NonUnitError,
    RingMismatchError,
    TruncatedSeries,
    coeff,
    dissect,
    invert,
    mul,
    power,
    reduce_mod,
    series,
    shift,
    substitute_power,
)
from .qfactory import (
    EtaQuotientSpec,
    QuadSumSpec,
    SignedMonomial,
    c_t_series,
    eta,
    eta_quotient,
    false_theta_psi,
    named_series,
    pochhammer,
    quad_sum,
    theta_f,
)
from .expr import evaluate, parse, serialize
from .report import VerificationReport
from .identities import IdentityEntry, catalog, chain_checks, verify_identity
from .congruence import (
    CongruenceClaim,
    builtin_claims,
    check_claim,
    check_claims,
    density_scan,
    theorem2_family,
)

__version__ = "0.1.0"
