"""Cup diagrams, signed domino tableaux and two-row Springer fibers of types C and D."""
from .cups import (CupDiagram, DiagramError, circle_diagram, diagrams_for_shape,
                   enumerate_cup_diagrams, format_diagram, intersection_graph,
                   intersection_type, parse_diagram)
from .exact import GaussianRational, Matrix, ProjLine, Subspace
from .spheres import oracle_cross_check, relations_of, solve, translate_to_p1
from .springer import (Ambient, Flag, build_ambient, jordan_type, make_form, phi, phi_inverse,
                       pi, spaltenstein, verify_component, verify_theorem2)
from .tableaux import (Psi, Psi_inverse, SignedDominoTableau, StandardYoungTableau, clusters,
                       d_to_c, enumerate_adt, enumerate_signed, enumerate_syt, is_admissible, psi,
                       psi_inverse)

__version__ = "0.1.0"
