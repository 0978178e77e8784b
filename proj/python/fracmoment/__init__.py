"""Python access to the fracmoment numerical core."""

import json

from ._fracmoment import (
    DomainError,
    IoError,
    character_sum,
    chi,
    dft_all_characters,
    divisor_coeff,
    divisor_series,
    factorize,
    hankel_recip_gamma,
    holder_exponents,
    l_half,
    l_square,
    mollifier_coeffs,
    perron_weight,
    primitive_root,
    run_cli,
    w_weight,
    weighted_poly_coeffs,
    zeta_frac_power,
)
from . import _fracmoment as _core


def moment(q, k="1/2", method="oracle"):
    return json.loads(_core.moment_json(q, k, method))


def holder(q, k="1/2", a=4.0, y=None):
    return json.loads(_core.holder_json(q, k, a, y))


def lemma6(m=1, alpha=3.0, beta="1", y=1e4, numeric=True):
    return json.loads(_core.lemma6_json(m, alpha, beta, y, numeric))


__all__ = [
    "DomainError",
    "IoError",
    "character_sum",
    "chi",
    "dft_all_characters",
    "divisor_coeff",
    "divisor_series",
    "factorize",
    "hankel_recip_gamma",
    "holder",
    "holder_exponents",
    "l_half",
    "l_square",
    "lemma6",
    "moment",
    "mollifier_coeffs",
    "perron_weight",
    "primitive_root",
    "run_cli",
    "w_weight",
    "weighted_poly_coeffs",
    "zeta_frac_power",
]
