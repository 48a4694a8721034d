"""Free-fermion solvability of translation-invariant spin models.

Decides whether a spin Hamiltonian's frustration graph is a line graph,
reconstructs the fermion hopping (root) graph, computes orientation-resolved
band structures, densities of states, skew energies and gaps, and extracts the
logical operators of the resulting subsystem codes on finite tori.
"""

__version__ = "0.1.0"

from .laurent import (  # noqa: F401
    CompactMatrix,
    LaurentPoly,
    bloch_evaluate,
    compact_frustration,
    enlarge_cell,
    torus_truncate,
)
from .lattice import (  # noqa: F401
    BaseGraph,
    OrientationConfig,
    abelian_cover,
    builtin,
    builtin_names,
    elementary_orientation,
    enumerate_orientations,
)
from .linegraph import (  # noqa: F401
    KrauszDecomposition,
    NotLineGraph,
    RootGraphResult,
    canonical_isomorphic,
    krausz_finite,
    line_graph,
    recognize,
)
from .fermion import (  # noqa: F401
    band_structure,
    dos,
    gap_scan,
    ground_energy,
    spectrum,
    williamson,
)
from .codes import (  # noqa: F401
    CodeAnalysis,
    CompactHamiltonian,
    analyze_code,
    centralizer,
    fiducial_bosonization,
    honeycomb_bosonization,
    instantiate_torus,
    monogamize,
)
from .pauli import (  # noqa: F401
    EncodingMatrix,
    PauliTerm,
    build_encoding,
    frustration_matrix,
    gf2_solve,
    symmetry_structure,
    symplectic_form,
)
