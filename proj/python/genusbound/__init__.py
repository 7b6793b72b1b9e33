"""Binary quadratic forms, certified L(1, chi) enclosures and genus cutoff certificates."""

import json

from ._core import (
    GenusboundError,
    analytic_class_number,
    bound_check,
    character_sum,
    ci_exponent,
    class_number,
    compose,
    enumerate_reduced,
    genus_report,
    kronecker,
    l_one,
    ln_enclosure,
    nth_prime,
    pi_enclosure,
    primorial,
    principal_form,
    reduce,
    run_cli,
    search_ocpg,
    sqrt_enclosure,
    validate_discriminant,
)
from . import _core


def find_cutoff(coeff=1, exponent=18, g_max=1000, digits=80):
    """Certificate for the hypothesis L(1, chi) >= coeff * (log d)^-exponent, as a dict."""
    return json.loads(_core.find_cutoff_json(coeff, exponent, g_max, digits))


def verify_certificate(cert, digits=100):
    text = cert if isinstance(cert, str) else json.dumps(cert)
    return _core.verify_certificate_json(text, digits)


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
