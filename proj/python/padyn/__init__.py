"""p-adic dynamics of Henon and triangular plane automorphisms."""

import json as _json

from ._core import (
    AutoWord,
    FieldSpec,
    MapDescription,
    PadicElement,
    PadynError,
    apply,
    check_iterate_locus,
    conjugation_transport,
    detect_period,
    indeterminacy_locus,
    inverse,
    is_regular,
    is_special_henon,
    parse_maps,
    permutation_cycles,
    power,
    rational_reconstruct,
    root_of_unity_order,
    serialize_maps,
    teichmueller,
)
from . import _core


def load_maps(path):
    with open(path) as fh:
        return parse_maps(fh.read())


def enumerate_periodic_points(word, n_max, level=1):
    return _json.loads(_core.enumerate_periodic_points_json(word, n_max, level))


def empirical_period_bound(word, levels):
    return _json.loads(_core.empirical_period_bound_json(word, list(levels)))


def triangular_periods(word, n_max):
    return _json.loads(_core.triangular_periods_json(word, n_max))


def certify_rational(desc, primes, levels=(1, 2, 3)):
    return _json.loads(_core.certify_rational_json(desc, list(primes), list(levels)))


__all__ = [
    "AutoWord",
    "FieldSpec",
    "MapDescription",
    "PadicElement",
    "PadynError",
    "apply",
    "certify_rational",
    "check_iterate_locus",
    "conjugation_transport",
    "detect_period",
    "empirical_period_bound",
    "enumerate_periodic_points",
    "indeterminacy_locus",
    "inverse",
    "is_regular",
    "is_special_henon",
    "load_maps",
    "parse_maps",
    "permutation_cycles",
    "power",
    "rational_reconstruct",
    "root_of_unity_order",
    "serialize_maps",
    "teichmueller",
    "triangular_periods",
]
