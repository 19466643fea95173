"""Intercusp equation systems and cusp shapes for fully augmented links.

Pipeline: a labeled diagram (diagram module) becomes a polynomial system
(equations), is reduced to a one-variable polynomial, solved and checked
(solve), and turned into cusp shapes (cusp). The pretzel module generates
the n-pretzel polynomial family and its rotated-circle variant directly.
"""

import os

from .arith import (ComplexF, GaussianRational, Mat2, MultiPoly, UniPoly,
                    eval_complex, mat2_mul, poly_add, poly_mul, poly_neg,
                    poly_text, substitute)
from .diagram import (CrossingCircle, DiagramError, FALDiagram, Face,
                      FaceEntry, LabelExpr, ProjectionComponent,
                      apply_fal_labeling, parse_diagram, serialize_diagram,
                      validate)
from .equations import (DegenerateFace, ShapeParam, TTSystem, assemble_system,
                        face_equations, region_matrix, shape_params)
from .solve import (AmbiguousGeometric, EliminationResult, EliminationStuck,
                    InconsistentSystem, NoGeometricRoot, NonConvergence,
                    ResidualReport, SolutionReport, eliminate, find_roots,
                    select_geometric, solve_diagram, verify_solution)
from .cusp import (CuspShapeResult, DivisionByZero, FieldMembership,
                   check_field_membership, cusp_shape_circle,
                   cusp_shape_projection, cusp_shapes)
from .pretzel import (DivisibilityScan, PretzelPoly, divisibility_scan,
                      falr_omega1_roots, falr_system, irreducibility_screen,
                      parity_anomalies, reconstruct_gaussian, table_form,
                      ttpoly_falp, ttpoly_falp_direct, verify_table1)

__version__ = "0.1.0"


def data_file(name: str) -> str:
    """Absolute path of a bundled diagram or reference file."""
    return os.path.join(os.path.dirname(__file__), "data", name)
