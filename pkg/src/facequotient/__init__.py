"""Face-pairing schemes on polygonal 2-spheres and their identified 2-complexes."""

__version__ = "0.1.0"

from .complex import (  # noqa: E402
    BoundaryComplex,
    ClassPartition,
    FacePairing,
    FacePairingScheme,
    SchemeError,
    ValidationReport,
    edge_classes,
    validate,
    vertex_classes,
)
from .actions import (  # noqa: E402
    Flag,
    degree_of_scheme,
    edge_class_table,
    edge_order,
    g2_orbits,
    is_collapsible,
    is_flat,
    p0_flags,
    p_alpha_flags,
)
from .quotient import (  # noqa: E402
    QuotientComplex,
    build_quotient,
    classify_surface,
    collapse_subcomplex,
    contract_edge,
    contract_tree,
    euler_characteristic,
    gamma_graph,
    gamma_tree,
    has_circuit,
    nonflat_circles,
    recognize_lens_shell,
    spanning_tree,
    verify_manifold,
)
from .groups import (  # noqa: E402
    AbelianGroup,
    Presentation,
    abelianization,
    fundamental_presentation,
    induced_presentation,
    smith_normal_form,
    tietze_simplify,
    triviality_status,
)
from .gallery import gen_lens, gen_platonic_space, gen_random, gen_trivial_sphere  # noqa: E402
