"""
Hilbert bimodule systems over multimatrix algebras and the partition
functions of their diagonal potentials.
"""

from .algebra import (
    AlgebraElement,
    Endomorphism,
    EndomorphismCheck,
    MultiMatrixAlgebra,
    validate_endomorphism,
)
from .dpotential import (
    DPotential,
    birkhoff_D,
    compress,
    compressed_norm,
    from_classical,
    promote,
    theta_apply,
)
from .pressure import (
    CommutationReport,
    CommutationRow,
    check_commutation,
    log_theorem62_partition,
    theorem62_partition,
    theorem62_pressure,
)
from .system import (
    BimoduleSystem,
    cuntz_krieger_system,
    h_top,
    is_admissible,
    q_word,
    subshift_graph,
    word_count,
)

__all__ = [
    "AlgebraElement",
    "Endomorphism",
    "EndomorphismCheck",
    "MultiMatrixAlgebra",
    "validate_endomorphism",
    "DPotential",
    "birkhoff_D",
    "compress",
    "compressed_norm",
    "from_classical",
    "promote",
    "theta_apply",
    "CommutationReport",
    "CommutationRow",
    "check_commutation",
    "log_theorem62_partition",
    "theorem62_partition",
    "theorem62_pressure",
    "BimoduleSystem",
    "cuntz_krieger_system",
    "h_top",
    "is_admissible",
    "q_word",
    "subshift_graph",
    "word_count",
]
