"""Concrete S-groups: the integers, continuous piecewise polynomials and finite automorphism models."""

from sgroups.models.integer import int_class_value, make_int_sgroup, make_rational_sgroup
from sgroups.models.pp import ModelDescriptor, ResourceError, make_pp_sgroup, pp_regularity_order, pp_restrict
from sgroups.models.ppfunc import PPFunction, pp_abs, pp_const, pp_poly, pp_saw, pp_x, random_pp
from sgroups.models.trivial import make_trivial_sgroup, make_zero_sgroup
from sgroups.rational import fraction_oracle

__all__ = [
    "ModelDescriptor",
    "ResourceError",
    "PPFunction",
    "fraction_oracle",
    "int_class_value",
    "make_int_sgroup",
    "make_pp_sgroup",
    "make_rational_sgroup",
    "make_trivial_sgroup",
    "make_zero_sgroup",
    "pp_abs",
    "pp_const",
    "pp_poly",
    "pp_regularity_order",
    "pp_restrict",
    "pp_saw",
    "pp_x",
    "random_pp",
]
