from enum import Enum


class CheckType(Enum):
    # instrument invariants
    COMPLETENESS = 1
    TRACE_PRESERVATION = 2
    OUTCOME_TRACE = 3
    COMPLETE_POSITIVITY = 4
    # three forms T_a(rho) = T(E rho) = T(rho E) = T(E rho E)
    LEFT_FORM = 5
    RIGHT_FORM = 6
    SANDWICH_FORM = 7
    # Heisenberg picture
    UNITALITY = 8
    EFFECT = 9
    DUAL_LEFT = 10
    DUAL_RIGHT = 11
    DUAL_SANDWICH = 12
    # models
    PROBE_CONSISTENCY = 13
    CROSS_ROUTE = 14
    INSTRUMENT_EXTRACTION = 15

    def __str__(self):
        return _LABELS[self]


_LABELS = {
    CheckType.COMPLETENESS: "completeness",
    CheckType.TRACE_PRESERVATION: "trace_preservation",
    CheckType.OUTCOME_TRACE: "outcome_trace",
    CheckType.COMPLETE_POSITIVITY: "complete_positivity",
    CheckType.LEFT_FORM: "left_form",
    CheckType.RIGHT_FORM: "right_form",
    CheckType.SANDWICH_FORM: "sandwich_form",
    CheckType.UNITALITY: "dual_unitality",
    CheckType.EFFECT: "dual_effect",
    CheckType.DUAL_LEFT: "dual_left_form",
    CheckType.DUAL_RIGHT: "dual_right_form",
    CheckType.DUAL_SANDWICH: "dual_sandwich_form",
    CheckType.PROBE_CONSISTENCY: "probe_consistency",
    CheckType.CROSS_ROUTE: "cross_route",
    CheckType.INSTRUMENT_EXTRACTION: "instrument_extraction",
}
