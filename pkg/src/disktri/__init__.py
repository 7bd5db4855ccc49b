"""Side-length statistics of uniform random triangles in a disk.

Densities, moments, and characteristic functions of the side lengths of a
triangle whose three vertices are drawn i.i.d. uniformly from a disk,
together with reproducible Monte Carlo estimation and a self-verification
suite in which every published constant is reproduced by at least two
independent computational routes.
"""

from .core import (
    ConvergenceError,
    DiskTriangleError,
    DomainError,
    IntegrandError,
    NumericDomainError,
    Point,
    QuadratureResult,
    RegionError,
    RegionTag,
    TriangleSample,
    check_radius,
    classify_region,
    scale_by_homogeneity,
)
from .quadrature import (
    IntegrationSpec,
    KinkLines,
    integrate_1d,
    integrate_2d,
    oscillation_splits,
)
from .specfun import (
    SeriesTruncation,
    bessel_i,
    bessel_j,
    bessel_j_half,
    catalan,
    catalan_egf,
)
from .densities import (
    ClampPolicy,
    conditional_side_density,
    inner_kernel,
    pair_density,
    pair_density_subcase_oracle,
    phi,
    psi,
    side_density,
    side_sq_density,
)
from .montecarlo import (
    Estimate,
    MomentEstimates,
    RngStream,
    estimate_moments,
    pair_histogram,
    point_from_uniforms,
    sample_point,
    sample_triangle,
)
from .moments import (
    MomentReport,
    even_moment_side,
    expected_pair_product,
    expected_side,
    expected_sq_pair_product,
    moment_reports,
    perimeter_stats,
    sq_pair_product_exact,
)
from .charfun import (
    charfun_a2,
    charfun_pair,
    h_closed,
    h_series,
    h_series_coefficient,
    inner_integral_quad,
    inner_integral_series,
    mixed_sq_pair_moment,
)
from .verification import AcceptanceSuite, CheckResult

__version__ = "0.1.0"

__all__ = [
    "AcceptanceSuite",
    "CheckResult",
    "ClampPolicy",
    "ConvergenceError",
    "DiskTriangleError",
    "DomainError",
    "Estimate",
    "IntegrandError",
    "IntegrationSpec",
    "KinkLines",
    "MomentEstimates",
    "MomentReport",
    "NumericDomainError",
    "Point",
    "QuadratureResult",
    "RegionError",
    "RegionTag",
    "RngStream",
    "SeriesTruncation",
    "TriangleSample",
    "bessel_i",
    "bessel_j",
    "bessel_j_half",
    "catalan",
    "catalan_egf",
    "charfun_a2",
    "charfun_pair",
    "check_radius",
    "classify_region",
    "conditional_side_density",
    "estimate_moments",
    "even_moment_side",
    "expected_pair_product",
    "expected_side",
    "expected_sq_pair_product",
    "h_closed",
    "h_series",
    "h_series_coefficient",
    "inner_integral_quad",
    "inner_integral_series",
    "inner_kernel",
    "integrate_1d",
    "integrate_2d",
    "mixed_sq_pair_moment",
    "moment_reports",
    "oscillation_splits",
    "pair_density",
    "pair_density_subcase_oracle",
    "pair_histogram",
    "perimeter_stats",
    "phi",
    "point_from_uniforms",
    "psi",
    "sample_point",
    "sample_triangle",
    "scale_by_homogeneity",
    "side_density",
    "side_sq_density",
    "sq_pair_product_exact",
    "__version__",
]
