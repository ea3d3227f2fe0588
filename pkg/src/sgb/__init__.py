"""Eigenvalue lower bounds for embedded hypersurfaces under ambient curvature
pinching, with desk-scale verification against discrete spectra of analytic
surface families in the unit 3-sphere."""

from .bounds import (
    bound_corollary14,
    bound_corollary15_sphere,
    bound_theorem12,
    bound_theorem13,
    c_closed_form_lower,
    c_constant,
    check_corollary16_i,
    choi_wang,
    compute_report,
    eta_of_delta,
)
from .comparison import (
    OdeSolution,
    f_proof,
    h_first_zero,
    kasue_f,
    kasue_h,
    laplacian_comparison,
    solve_comparison_ode,
)
from .eigen import dense_eig_oracle, smallest_nonzero_eig
from .families import (
    FamilyPoint,
    geodesic_sphere_data,
    product_torus_data,
    vol_unit_sphere,
)
from .mesh import (
    DiagMass,
    SparseSym,
    TriMesh,
    cotan_stiffness,
    estimate_curvature,
    estimate_rolling_radius,
    load_mesh,
    lumped_mass,
    mesh_geodesic_sphere,
    mesh_product_torus,
    save_mesh,
    surface_area,
)
from .params import (
    BoundReport,
    CurvatureBounds,
    HypersurfaceData,
    RollParams,
    R_of_t,
    check_thm13_condition,
    t_of_R,
)

__version__ = "0.1.0"
