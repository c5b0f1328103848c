"""Triangle complexes of finite point-line geometries and their correlations."""

from .field import Field, FieldElement, field_make, gf
from .incidence import (Diagram, IncidenceSystem, chambers, connected_components, diagram,
                        firmness, is_connected, is_geometry, is_residually_connected,
                        maximal_flags, rank2_parameters, residue, validate)
from .perm import PermGroup, group_order, normality_check, orbit
from .search import automorphism_group, correlation_group, find_correlation
from .spaces import (PointLineGeometry, affine_space, complete_graph, hermitian_unital,
                     is_linear_space, line_through, noncollinear_triples, projective_space)
from .triangle import (Correlation, TriangleComplex, canonical_triality, chamber_to_triple,
                       kv_beta, lift_automorphism, lift_duality, project_correlation,
                       triangle_complex, triple_to_chamber)

__version__ = "0.1.0"
