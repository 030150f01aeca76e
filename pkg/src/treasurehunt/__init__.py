"""Treasure Hunter testbed: a fog-of-war grid game with a logical
assistant, an expected-value recommendation display, the map selection
pipeline behind it, and a within-subjects experiment harness."""

from .world import (
    GameState,
    GameStatus,
    IllegalMoveError,
    MapSpec,
    Percept,
    Position,
    apply_move,
    initial_state,
    legal_moves,
    load_map,
    percept_at,
    replay,
    save_map,
)
from .logic import (
    HazardJudgment,
    Judgment,
    KnowledgeBase,
    Literal,
    LiteralKind,
    brute_force_entails,
    entails,
    judge,
    tell,
)
from .advisor import (
    OptionAssessment,
    OutcomeProbs,
    RationaleRow,
    assess_options,
    build_rationale,
    case_probs,
    classify,
    expected_score,
    recommend,
)
from .pipeline import (
    MapStats,
    SelectionCriteria,
    evaluate_pool,
    generate_map,
    optimal_score,
    select_test_maps,
    self_play,
)
from .harness import (
    Condition,
    MapFixtures,
    SessionPlan,
    SessionRunner,
    StepRecord,
    TrialRecord,
    export_session,
    plan_session,
    record_step,
    submit_questionnaire,
)

__version__ = "0.1.0"
