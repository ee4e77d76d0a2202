# Numeric oracle settings
FD_STEP = 1e-4               # Central finite-difference step
ORACLE_TOLERANCE = 1e-6      # Max relative deviation accepted by the oracle
ORACLE_MAX_DENOMINATOR = 64  # Random rational points use denominators <= 64
DEFAULT_TRIALS = 100
DEFAULT_SEED = 0

# Invariant-extension conventions
CONVENTIONS = ('right', 'left')
DEFAULT_CONVENTION = 'right'

# Bivector lifts accepted by `check groupoid`
BIVECTOR_LIFTS = ('invariant', 'classical')
DEFAULT_BIVECTOR_LIFT = 'invariant'

# Verdicts, in report order
VERDICTS = ('pass', 'fail', 'error')

VERDICT_GLYPHS = {
    'pass': '✓',
    'fail': '✗',
    'error': '⚠'
}

INFO_GLYPH = 'ℹ'

# Exit codes of the command-line driver
EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# Suites that may appear after `check` in a spec file
SUITES = ('algebroid', 'groupoid', 'correspondence', 'oracle', 'axioms')

# Options each suite accepts, with their allowed values (None = integer)
SUITE_OPTIONS = {
    'algebroid': {},
    'groupoid': {'convention': CONVENTIONS, 'lift': BIVECTOR_LIFTS},
    'correspondence': {'convention': CONVENTIONS},
    'oracle': {'trials': None, 'seed': None},
    'axioms': {}
}

# Positional argument kinds each suite expects
SUITE_ARGUMENTS = {
    'algebroid': ('bivector', 'endo'),
    'groupoid': ('bivector', 'endo'),
    'correspondence': ('bivector', 'endo'),
    'oracle': (),
    'axioms': ('space',)
}

# The four Poisson-Nijenhuis items, shared by the algebroid and groupoid levels
PN_ITEMS = ('schouten_square', 'torsion', 'sharp_compatibility', 'concomitant')

# Operation families exercised by the numeric oracle
ORACLE_FAMILIES = (
    'partial',
    'lie_bracket',
    'schouten_square',
    'jacobiator',
    'sharp',
    'endo_dual',
    'nijenhuis_torsion',
    'deformed_bracket',
    'd_function',
    'lie_derivative_oneform',
    'form_bracket',
    'endo_compose',
    'magri_morosi'
)

# Chart used by `check oracle` when it is not bound to a declared space
ORACLE_CHART = ('x1', 'x2', 'x3')

# Corpus sizes
CORRESPONDENCE_CORPUS_SIZE = 20
