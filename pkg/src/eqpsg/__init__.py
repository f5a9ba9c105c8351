"""Invariants of parametric numerical and affine semigroups: per-n direct
computation, exact quasi-polynomial fitting across a window of n, and a
bounded first-order oracle for cross-checking the direct algorithms."""

from ._kernels import BACKEND
from .polyfam import (
    ParametricFamily,
    PolynomialZ,
    eval_poly,
    family_from_polys,
    instantiate,
    instantiate_scalars,
    parse_family,
    parse_family_inline,
    parse_poly,
    render_poly,
)
from .numsg import (
    SemigroupView,
    apery_set,
    build,
    fundamental_gaps,
    genus,
    is_irreducible,
    is_numerical,
    is_pseudo_symmetric,
    is_symmetric,
    ith_apery_element,
    pseudo_frobenius,
    semigroup_type,
)
from .factor import (
    delta_of_element,
    delta_of_semigroup,
    factorizations,
    length_set,
)
from .homology import (
    RATIONALS,
    FieldSpec,
    SimplicialComplex,
    affine_member,
    bresinsky_family,
    bresinsky_generators,
    check_degree_bounds,
    coarse_betti,
    graded_betti,
    graded_betti_table,
    minimal_presentation_size,
    parse_field,
    reduced_homology_dims,
    sq_divisor_complex,
    verify_bresinsky,
)
from .eqp import (
    QuasiPolynomial,
    SampleSeries,
    degree_of,
    eventually_periodic_set,
    fit,
)
from .presburger import builtin_formula, define_set, evaluate, parse_formula, render

__version__ = "0.1.0"
