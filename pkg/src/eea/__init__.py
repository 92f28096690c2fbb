"""Expander evolution algebras: exact Cheeger constants, spectra, support dynamics,
Markov mixing, Cayley and LPS constructions, and a claim-by-claim audit harness."""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    EEAError,
    EnumerationCapError,
    FieldMismatchError,
    InconclusiveError,
    PreconditionError,
    ResourceCapError,
)
from .fields import RATIONAL, REAL, Field, parse_field, prime_field
from .algebra import (
    Element,
    EvolutionAlgebra,
    evolution_operator_apply,
    is_graphicable,
    is_nonsingular,
    is_symmetric,
    multiply,
    permute_basis,
    plenary_power,
    principal_power,
    rank,
    rescale_basis,
    support,
)
from .graphs import (
    Digraph,
    SimpleGraph,
    ball,
    bfs_distances,
    connected_components,
    degrees,
    diameter,
    digraph,
    distance,
    has_directed_cycle,
    is_connected,
    is_regular,
    underlying_graph,
)
from .expansion import (
    CheegerCertificate,
    cheeger,
    cheeger_exact,
    cheeger_spectral_bounds,
    edge_boundary,
    is_eea_family_report,
    is_h_eea,
)
from .spectral import (
    Spectrum,
    alon_boppana_floor,
    is_ramanujan,
    perron_data,
    ramanujan_expansion_lower,
    spectral_gap,
    symmetric_eigenvalues,
)
from .structure import (
    algebraic_distance,
    cover_time,
    decompose,
    hierarchy_report,
    is_connected_algebra,
    is_simple,
    persistency,
    support_trace,
)
from .markov import (
    corrected_mixing_bound,
    is_doubly_stochastic,
    is_irreducible,
    is_markov,
    mixing_simulation,
    paper_mixing_bound,
    tmix_bound,
)
from .groups import (
    FiniteGroup,
    GeneratingSet,
    cyclic_group,
    dihedral_group,
    group_from_generators,
    lps_generating_set,
    pgl2,
    psl2,
    sl2,
    symmetric_group,
)
from .constructions import (
    cayley_evolution_algebra,
    complete_algebra,
    cycle_algebra,
    direct_sum,
    kronecker_product,
    normalize_rows,
    petersen_algebra,
    random_regular_algebra,
)
from .audit import TheoremCheck, run_full_audit
