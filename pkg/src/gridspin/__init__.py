"""Integer combinatorial link Floer chain complexes from grid diagrams.

The sign refinement comes from the spin double cover of the symmetric
group: rectangles act by right multiplication with lifted transpositions
and the central element is identified with -1.
"""

from .clifford import clifford_oracle_bit
from .complexes import (
    ChainElement,
    Flavor,
    check_coboundary_equivalence,
    check_sign_axioms,
    differential_minus,
    differential_signed,
    graded_differential,
    sign_assignment,
    unsigned_differential_mod2,
)
from .grid import (
    ComponentData,
    GridDiagram,
    GridError,
    alexander2,
    count_pairs_I,
    count_pairs_J,
    empty_rectangles,
    is_empty,
    is_horizontally_torn,
    marker_counts,
    maslov,
    parse_grid_text,
    realize_rectangle,
    rectangles_from,
    trace_components,
    validate,
)
from .homology import (
    Bigrading,
    HomologySummary,
    IntegerMatrix,
    Laurent,
    NotDivisible,
    SmithForm,
    alexander_polynomial,
    bigraded_homology,
    hat_reduction,
    smith_normal_form,
)
from .moves import (
    MoveError,
    MoveSpec,
    apply_move,
    apply_script,
    invariance_report,
    parse_move,
    parse_script,
    phi_cyclic_horizontal,
    phi_cyclic_vertical,
)
from .spin import (
    GeneratorWord,
    SpinElement,
    canonical_word,
    cocycle,
    compose,
    conjugate_transposition,
    evaluate_word,
    inverse,
    lift,
    multiply,
    right_mul_transposition,
    section,
    sigma_element,
    signature,
)

__version__ = "0.1.0"
