"""sharklab: exact periodic-orbit analysis of piecewise-linear interval maps.

The package makes the coexistence of periods in one-dimensional dynamics
executable: Sharkovsky-order arithmetic, exact enumeration of least
periods with witnesses, covering-loop certificates, Štefan-cycle
detection, and synthesis of witness maps (spiral patterns, truncated
tents, four period-doubling operators and their infinite compositions).

All coordinates are exact rationals; no floating point enters any
decision.
"""

from .errors import (
    DomainError,
    PreconditionError,
    ResourceError,
    SharklabError,
    VerificationError,
)
from .order import (
    TWO_INF,
    DyadicDecomposition,
    SharkClass,
    TailMatch,
    decompose,
    recognize_tail,
    shark_cmp,
    shark_tail,
)
from .plmap import (
    DEFAULT_PIECE_BUDGET,
    PIECE_BUDGET_ENV,
    PLMap,
    compose,
    dump_map,
    iterate,
    load_map,
    load_map_document,
    normalize,
    resolve_piece_budget,
)
from .periodic import (
    EvenForcingWitness,
    FixedSet,
    ForcingReport,
    IntervalCycle,
    LoopCertificate,
    PeriodReport,
    check_covering,
    check_forcing_implications,
    find_even_forcing_witness,
    fixed_points,
    has_least_period,
    least_period,
    lift_period,
    period_orbits,
    period_set,
    power_period,
    realize_loop,
    verify_sharkovsky,
)
from .patterns import (
    CoverDigraph,
    OrbitPattern,
    connect_the_dots,
    cover_digraph,
    digraph_to_dot,
    gap_intervals,
    is_stefan,
    loops,
)
from .constructions import (
    DOUBLING_KINDS,
    DoublingSpec,
    PhiSpec,
    PhiTruncation,
    WitnessResult,
    double,
    make_fn,
    make_named,
    make_truncated_tent,
    phi_truncation,
    stefan_pattern,
    witness,
)

__version__ = "0.1.0"
