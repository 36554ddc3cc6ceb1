"""Point counts over finite fields, formal-group heights, congruence
checkers, and factored zeta functions of semistable degenerations."""

from .ffield import (
    DEFAULT_MAX_FIELD_SIZE,
    CoeffSpec,
    Field,
    FieldElement,
    GenPow,
    field_make,
    is_prime,
    resolve_coeff,
)
from .counting import (
    DiagonalForm,
    PolySystem,
    StrataCounts,
    count_chain,
    count_diagonal,
    count_from_strata,
    count_ngon,
    count_projective,
    parse_variety,
    projective_space_count,
    variety_to_json,
    xq_condition,
)
from .series import (
    PowerSeries,
    series_compose,
    series_exp,
    series_reverse,
    solve_composition,
)
from .formal_groups import (
    DieudonneSlopeData,
    HeightResult,
    diagonal_height,
    dieudonne_slopes,
    elliptic_height,
    height_from_p_series,
    mult_by_p,
    newton_slopes,
    stienstra_log,
)
from .zeta import (
    ENRIQUES,
    ENRIQUES_TYPE_II,
    ENRIQUES_TYPE_III,
    K3_TYPE_II,
    K3_TYPE_III,
    FrobClass,
    LogZeta,
    RationalZeta,
    SnclSurfaceData,
    build_enriques_zeta,
    build_k3_zeta,
    build_log_zeta,
    class_zeta,
    curve_class,
    expand_rational,
    point_class,
    projective_product_class,
    projective_space_class,
    rational_points_class,
    strata_zeta,
    zeta_series_from_counts,
)
from .congruence import (
    HEIGHT2,
    INFINITE,
    NOT_HEIGHT2,
    CongruenceReport,
    CongruenceRow,
    TraceSet,
    ax_katz_check,
    check_height_congruence,
    classify_curve,
    gauss_bound_check,
    honda_tate_traces,
)
from .survey import (
    EllipticCurveQ,
    EllipticSurveyResult,
    K3SurveyResult,
    SurveyRecord,
    elliptic_survey,
    elliptic_trace,
    k3_survey,
    weierstrass_count,
    write_records_csv,
)

__version__ = "0.1.0"
