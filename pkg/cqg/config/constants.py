"""
Configuration constants for the CQG Toolbox.

All tolerances, defaults, file-format field names, check identifiers and
magic strings used across the toolbox are centralised here so that a format
or policy change needs only one edit.
"""

# ═══════════════════════════════════════════════════════════════════════════════
# Numerics
# ═══════════════════════════════════════════════════════════════════════════════

DEFAULT_TOLERANCE = 1e-9
DEFAULT_SEED = 42

# Randomized checks draw this many seeded elements / pairs / triples.
RANDOM_SAMPLE_COUNT = 100

# An expected failure counts as detected only when its witness residual
# exceeds this multiple of the tolerance.
EXPECTED_FAILURE_MARGIN = 10.0

# Blocks larger than this get the matrix-unit product relations checked on a
# seeded sample of index quadruples instead of exhaustively.
MATRIX_UNIT_EXHAUSTIVE_MAX_DIM = 24
MATRIX_UNIT_SAMPLE_COUNT = 2000

# Same policy for the Peter–Weyl orthogonality sweep, which is O(n⁴) per block.
ORTHOGONALITY_EXHAUSTIVE_MAX_DIM = 10

# Centrality sweeps are O(n⁴) per element; the mode-agreement check draws fewer
# random elements than the other randomized checks.
CENTER_SAMPLE_COUNT = 10

# Tolerance for reading integer multiplicities out of character inner products.
CHARACTER_ROUNDING_TOLERANCE = 1e-6

# ═══════════════════════════════════════════════════════════════════════════════
# Built-in instance defaults
# ═══════════════════════════════════════════════════════════════════════════════

DEFAULT_Q = 0.5
DEFAULT_LEVEL = 4
DEFAULT_ONPLUS_N = 3
DEFAULT_ONPLUS_LEVEL = 3

BUILTIN_S3 = "s3"
BUILTIN_SUQ2 = "suq2"
BUILTIN_ONPLUS = "onplus"
DUAL_PREFIX = "dual:"
FUNCTION_PREFIX = "fun:"

# Group tokens accepted after ``dual:`` / ``fun:`` (``z<n>`` is cyclic of order n).
GROUP_S3 = "s3"
GROUP_KLEIN = "v4"
CYCLIC_PREFIX = "z"

# Labels of the explicit S₃ irreps: trivial, sign, standard (2-dim).
S3_TRIVIAL = "t"
S3_SIGN = "s"
S3_STANDARD = "v"

# ═══════════════════════════════════════════════════════════════════════════════
# Instance file format (JSON) — field names are fixed
# ═══════════════════════════════════════════════════════════════════════════════

FIELD_NAME = "name"
FIELD_IRREPS = "irreps"
FIELD_LABEL = "label"
FIELD_DIM = "dim"
FIELD_EIGENVALUES = "f_eigenvalues"
FIELD_CONJUGATE = "conjugate"
FIELD_CONJ_INDEX_MAP = "conj_index_map"
FIELD_FUSION = "fusion"
FIELD_A = "a"
FIELD_B = "b"
FIELD_DECOMP = "decomp"
FIELD_COMPLETE = "complete"
FIELD_TOLERANCE = "tolerance"
FIELD_TRIVIAL = "trivial"

# ═══════════════════════════════════════════════════════════════════════════════
# Element file format (JSON)
# ═══════════════════════════════════════════════════════════════════════════════

FIELD_SPACE = "space"
FIELD_TERMS = "terms"
FIELD_INSTANCE = "instance"
FIELD_IRREP = "irrep"
FIELD_ROW = "row"
FIELD_COL = "col"
FIELD_RE = "re"
FIELD_IM = "im"

SPACE_L1 = "L1"
SPACE_L2 = "L2"
SPACE_LINF = "Linf"
SPACE_CHAR = "CHAR"

# λ̂(L¹) ⊂ L∞(𝔾̂) ≅ ⊕ M_{n_α}; never read from or written to files.
SPACE_DUAL = "Linf_hat"

JSON_ENCODING = "utf-8"

# ═══════════════════════════════════════════════════════════════════════════════
# Check statuses and modes
# ═══════════════════════════════════════════════════════════════════════════════

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_SKIPPED = "skipped"

MODE_COMMUTATOR = "commutator"
MODE_SCALAR_BLOCKS = "scalar-blocks"
CENTRALITY_MODES = (MODE_COMMUTATOR, MODE_SCALAR_BLOCKS)

SKIP_NON_KAC = "NonKacInstance"
SKIP_NO_NORM_ORACLE = "NoNormOracle"
SKIP_NO_BRUTE_FORCE = "NoBruteForceOracle"

# ═══════════════════════════════════════════════════════════════════════════════
# Instance validation checks (fusion_data.validate)
# ═══════════════════════════════════════════════════════════════════════════════

# id → human-readable name.  Structural checks make an instance unusable for
# any computation; fusion checks only concern the fusion table.
STRUCTURAL_VALIDATION_CHECKS: dict[str, str] = {
    "validate.tolerance": "tolerance positivity",
    "validate.nonempty": "irrep list non-empty",
    "validate.trivial": "trivial irrep",
    "validate.dim": "dim positivity",
    "validate.eigenvalue_count": "f_eigenvalues count",
    "validate.eigenvalue_positivity": "f_eigenvalues positivity",
    "validate.trace_balance": "trace balance (Σλ = Σ1/λ)",
    "validate.conjugate_label": "conjugate label",
    "validate.conjugate_dim": "conjugate dimension",
    "validate.conj_index_map": "conj_index_map bijection",
    "validate.conjugate_eigenvalues": "conjugate eigenvalues",
    "validate.conjugation_involution": "conjugation involution",
}

FUSION_VALIDATION_CHECKS: dict[str, str] = {
    "validate.fusion_labels": "fusion labels",
    "validate.fusion_multiplicities": "fusion multiplicities",
    "validate.fusion_unit": "fusion unit",
    "validate.dimension_consistency": "dimension consistency",
    "validate.quantum_dimension_consistency": "quantum-dimension consistency",
    "validate.associativity": "associativity",
}

# ═══════════════════════════════════════════════════════════════════════════════
# Verification suite checks (verify.run_suite)
# ═══════════════════════════════════════════════════════════════════════════════

CHECK_FUSION_CONSISTENCY = "fusion.consistency"
CHECK_FUSION_CONJUGATION = "fusion.conjugation"
CHECK_ORTHOGONALITY = "l2.orthogonality"
CHECK_IDEMPOTENT = "l1.idempotent_quantum_characters"
CHECK_QC_ACTION = "l1.quantum_character_action"
CHECK_MATRIX_UNITS = "l1.matrix_units"
CHECK_LAMBDA_HAT = "l1.lambda_hat"
CHECK_L1_ASSOCIATIVITY = "l1.associativity"
CHECK_INVOLUTION = "l1.involution"
CHECK_CENTER = "l1.center"
CHECK_KAC_CHARACTERS = "l1.kac_characters"
CHECK_PLAIN_CHARACTERS = "l1.plain_character_centrality"
CHECK_BETA1 = "l1.beta1"
CHECK_BETA1_CONTRACTIVITY = "l1.beta1_contractivity"
CHECK_ORACLE_CONVOLUTION = "oracle.convolution"
CHECK_ORACLE_BETA1 = "oracle.beta1"
CHECK_TRANSPORT = "l2.transport"
CHECK_BETA2 = "l2.beta2_projection"
CHECK_BETA2_ROUTES = "l2.beta2_route_equality"
CHECK_PQ = "l2.pq_projection"
CHECK_SEPARATION = "l2.projection_separation"
CHECK_EXPANSION = "l2.expansion"
CHECK_STAR = "l2.star"
CHECK_RESTRICTION = "l2.restriction"

# ═══════════════════════════════════════════════════════════════════════════════
# CLI
# ═══════════════════════════════════════════════════════════════════════════════

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2

PROJECTION_KINDS = ("beta2", "beta2-coproduct", "pq", "beta1", "r")
REPORT_FORMATS = ("json", "txt", "csv")
