from spincorr.closedform import analytic_moments, compare_with_numeric
from spincorr.coherent import (
    BlochAngles,
    SpinStateClass,
    classify_css_sss,
    coherent_state,
)
from spincorr.correlation import (
    CorrelationTriple,
    FrameAngles,
    PrimedFluctuations,
    RamseyParameters,
    correlation_triple,
    frame_angles,
    primed_fluctuations,
    ramsey_parameters,
    rotation_matrix,
    s_from_fluctuations,
    s_from_ramsey,
)
from spincorr.dicke import (
    DickeState,
    SpinMoments,
    all_moments,
    collective_operator,
    expectation,
    make_dicke_state,
)
from spincorr.dynamics import (
    CatDecomposition,
    EvolutionSpec,
    cat_coefficients,
    cat_state,
    evolve,
    evolved_coherent,
)
from spincorr.util.errors import DegenerateFrameError, NegativeVarianceError
