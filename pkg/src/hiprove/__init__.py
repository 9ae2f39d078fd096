"""hiprove: a miniature LCF-style prover with hierarchical proof recording.

Proofs are recorded twice over: the kernel stores a hiproof inside every
theorem, and the tactic layer records each script step in a goal tree.
The recorded trees drive refactoring between flat interactive scripts and
packaged single-tactic proofs, and export to a browser viewer.
"""

from .errors import (
    HiproveError, IncompleteProofError, InterpretError, MalformedProofError,
    RecordingError, RuleError, ScriptSyntaxError, SessionError, TacticFailure,
)
from .hiproof import (
    Atomic, Box, Hiproof, Sequence, Tensor,
    DuplicateLabel, IdentityLabel, Label, RuleLabel, TacticLabel, UserLabel,
    VariableLabel, from_json, in_count, normalize, out_count, shallow_size,
    to_json, truncate, well_formed,
)
from .kernel import (
    Thm, assume, conj, conjunct1, conjunct2, disch, disj1, disj2, disj_cases,
    equals_thm, hilabel, hiproof_of, mp, truth, turnvars,
)
from .refactor import flatten, gtree_to_hiproof, pack
from .script import (
    FlatScript, FlatStep, PackagedScript, interpret, parse_flat, parse_packaged,
    print_flat, print_packaged,
)
from .session import Session, prove, run_flat, set_goal
from .syntax import (
    Atom, Conj, Disj, Goal, Imp, Term, Truth,
    parse_goal, parse_tactic_expr, parse_term, print_goal, print_tactic_expr,
    print_term,
)

__version__ = "0.1.0"
