"""Finite-horizon laboratory for almost additive potential sequences on full shifts."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BudgetExceeded,
    ConvergenceError,
    DecompositionError,
    DegenerateMeasureError,
    FormatError,
    NonadditiveError,
)
from .shift import (  # noqa: E402
    Point,
    bowen_distance,
    cylinder_prefix,
    distance,
    enumerate_periodic_points,
    enumerate_words,
    shadow_periodic,
    transitive_point,
    transitive_prefix,
)
from .measures import Bernoulli, ExplicitTable, HiddenMarkov, Markov  # noqa: E402
from .potentials import (  # noqa: E402
    BirkhoffSequence,
    CombinedSequence,
    ExplicitSequence,
    LocallyConstantPotential,
    MeasureSequence,
    PotentialSequence,
    cylinder_extrema,
    eval_point,
    sup_norm,
)
from .regularity import (  # noqa: E402
    almost_additivity_constant,
    bou_battery,
    perturbation_constant_check,
    physical_equivalence,
    variation,
    walters_check,
)
from .pressure import (  # noqa: E402
    cem_periodic_test,
    gibbs_constants,
    partition_pressure,
    quasi_bernoulli_constant,
    rpf_equilibrium,
    transfer_pressure,
    uba_check,
)
from .cohomology import (  # noqa: E402
    bousch_decompose,
    livsic_certificate,
    mean_cycle,
    rotation_demo,
    solve_coboundary,
    transfer_apply,
    weak_coboundary_check,
)
from .cocycles import (  # noqa: E402
    CocycleSequence,
    MatrixGenerator,
    cocycle_product,
    cocycle_sequence,
    distortion_report,
    fl_inequality_check,
    kln_test,
    matrix_norm,
)
from .families import (  # noqa: E402
    classify_sequence,
    holder_perturbation,
    lemma_ubi_check,
    recentered_type1,
    type1_sequence,
    weights_eval,
)
