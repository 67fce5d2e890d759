"""Identity catalog, continuity-extended closed forms and the verification engine."""
from .catalog import CATALOG, IdentitySpec, get_spec, identity_ids, normalize_params
from .closed_forms import (ClosedFormContext, a_right, a_right_regular, b_right, b_right_regular,
                           closed_form_limit)
from .engine import FULL_GRID, PROFILES, QUICK_GRID, eval_side, verify, verify_suite
from .moments import a_left, b_left

__all__ = [
    "CATALOG", "IdentitySpec", "get_spec", "identity_ids", "normalize_params",
    "ClosedFormContext", "a_right", "b_right", "a_right_regular", "b_right_regular",
    "closed_form_limit", "a_left", "b_left", "PROFILES", "QUICK_GRID", "FULL_GRID",
    "eval_side", "verify", "verify_suite",
]
