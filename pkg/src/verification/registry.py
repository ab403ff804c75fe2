"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                            CHECK REGISTRY                                    ║
║                                                                              ║
║  The frozen list of check ids, their anchors and default n-ranges, and the  ║
║  runner that executes them in a worker pool with deterministic ordering.    ║
╚══════════════════════════════════════════════════════════════════════════════╝

ARCHITECTURE
============
    CheckSpec[] ──► expand (id × n × backend) ──► ThreadPoolExecutor
                                                       │
                          CheckDefinition.func(ctx) ◄──┘
                                   │
                                Verdict ──► CheckResult ──► sorted by registry order
"""
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import structlog

from src.algebra.multilinear import primitive_basis, space_dim
from src.algebra.scalars import Ext2Scalar
from src.algebra.spinors import spinor_space
from src.algebra.verdict import Verdict
from src.config import Config
from src.utils.observability import CHECK_DURATION, CHECKS_RUN, bind_context
from src.verification import checks
from src.verification.checks import CheckContext
from src.verification.models import Backend, CheckResult, CheckSpec, CheckStatus, NRange

logger = structlog.get_logger(__name__)


class UnknownCheckError(KeyError):
    """A requested check id is not registered."""

    def __init__(self, check_id: str):
        super().__init__(check_id)
        self.check_id = check_id

    def __str__(self) -> str:
        return f"unknown check id {self.check_id!r}; see `qkv verify --list`"


class CheckSpecValidationError(ValueError):
    """One or more check requests are invalid."""

    def __init__(self, errors: List[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


# ═══════════════════════════════════════════════════════════════════════════════
# ANCHORS
# ═══════════════════════════════════════════════════════════════════════════════

# Statement each check decides, keyed by anchor label.
ANCHORS: Dict[str, str] = {
    "Lemma CTisHE": "ℂ⊗T ≅ H⊗E is the unique equivariant isometry",
    "Lemma TisE": "the complex symplectic form on T",
    "Defining representations": "Φ depends only on a canonical base of H",
    "Primitive forms": "dim Λˢ∘V = C(2m, s) − C(2m, s−2)",
    "Spinor module": "Σ = ⊕ SymʳH ⊗ Λⁿ⁻ʳ∘E and its cone analogue",
    "Canonical bivector": "[σ⌟, L∧] = (m − d) on primitive degree d",
    "Clifford multiplication": "μ = μ+- + μ-+ is equivariant and Clifford",
    "Half spinors": "Clifford multiplication exchanges Σ⁺ and Σ⁻",
    "Lemma decomp": "(h⊗e)⋆ι(φ) = ι((1/√2)A_{h⊗e}φ)",
    "Spin and star": "spin(p⊗f1, q⊗f2) − spin(q⊗f1, p⊗f2) = (f1f2)⋆",
    "Lemma thetastar": "Σ_z spin(Φ(zt), Φ(𝐙)) = √2Φ(t)⋆",
    "Killing spinors": "minimal eigenvalue λ² = (κ/4)(n+3)/(n+2)",
    "Lemma curv": "R^H acts on H as −Σ_z ⟨v1, zv2⟩z",
    "Lemma osp1": "the sp(1) quaternion identity and the so(V) bracket",
    "Cartan decomposition": "sp(n+1) = sp(1) ⊕ sp(n) ⊕ ℍⁿ",
    "Appendix B": "the ℍⁿ bracket equals κ/(8n(n+2))(R^H + R^E)",
    "Curvature of ℍPⁿ": "first Bianchi identity",
}


@dataclass(frozen=True)
class CheckDefinition:
    """
    A registered check.

    Attributes:
        check_id: stable id used on the command line and in reports
        anchor: key into ANCHORS
        description: one-line statement of what is decided
        func: check function taking a CheckContext
        default_range: n-range used when a spec gives none
        reported: True, or a predicate on n, when the status is "reported"
        verdict_texts: (claim holds, claim fails) texts for reported checks
        backends: supported backends, native backend first
    """
    check_id: str
    anchor: str
    description: str
    func: Callable[[CheckContext], Verdict]
    default_range: Tuple[int, int] = (2, 3)
    reported: Any = False
    verdict_texts: Tuple[str, str] = ("", "")
    backends: Tuple[Backend, ...] = (Backend.EXACT,)

    def is_reported(self, n: int) -> bool:
        if callable(self.reported):
            return bool(self.reported(n))
        return bool(self.reported)

    def resolve_backend(self, requested: Backend) -> Backend:
        return requested if requested in self.backends else self.backends[0]


_DIMENSIONAL = (2, 4)
_N_FREE = (2, 2)

CHECKS: Tuple[CheckDefinition, ...] = (
    CheckDefinition(
        "lemma-ctishe-roundtrip", "Lemma CTisHE",
        "Φ⁻¹∘Φ = id, Φ∘Φ⁻¹ = id and σ_H⊗σ_E(Φ·, Φ·) = ⟨·,·⟩ on bases",
        checks.check_phi_roundtrip, default_range=_DIMENSIONAL,
    ),
    CheckDefinition(
        "lemma-tise", "Lemma TisE",
        "σ_T = σ_E∘Ψ is skew, complex bilinear and recovers ⟨·,·⟩",
        checks.check_lemma_tise,
    ),
    CheckDefinition(
        "phi-equivariance", "Lemma CTisHE",
        "Φ commutes with Sp(1)·Sp(n) generators",
        checks.check_phi_equivariance,
    ),
    CheckDefinition(
        "phi-family-base-change", "Defining representations",
        "Φ on (j, −1) and (−j, 1) and rejection of non-canonical bases",
        checks.check_phi_family,
    ),
    CheckDefinition(
        "primitive-dims", "Primitive forms",
        "primitive dimensions of E and F by kernel basis and sympy rank",
        checks.check_primitive_dims, default_range=_DIMENSIONAL,
    ),
    CheckDefinition(
        "dims-2n", "Spinor module",
        "summand dimensions of Σ and Σ̂, totals 2^{2n} and 2^{2n+2}, n+2 parallel spinors",
        checks.check_dims, default_range=_DIMENSIONAL,
    ),
    CheckDefinition(
        "bivector-normalization", "Canonical bivector",
        "σ⌟L = m, [σ⌟, L∧] = (m − d) on primitive degree d, L is J-real",
        checks.check_bivector_normalization,
        reported=True,
        verdict_texts=("normalization confirmed", "normalization differs"),
    ),
    CheckDefinition(
        "mu-grading", "Clifford multiplication",
        "μ = μ+- + μ-+ and μ shifts the Sym degree by ±1",
        checks.check_mu_grading,
    ),
    CheckDefinition(
        "mu-equivariance", "Clifford multiplication",
        "μ commutes with the induced Sp(n) action on Σ̂",
        checks.check_mu_equivariance,
    ),
    CheckDefinition(
        "clifford-anticommutator", "Clifford multiplication",
        "{t_a·, t_b·} = 2c⟨t_a, t_b⟩ with one global constant c",
        checks.check_clifford_anticommutator,
    ),
    CheckDefinition(
        "clifford-link", "Clifford multiplication",
        "Σ̂ is Clifford for F and (f·𝟙·)² = −|f|² for f ⊥ 𝟙",
        checks.check_clifford_link,
    ),
    CheckDefinition(
        "half-spin-exchange", "Half spinors",
        "μ(h⊗f) maps Σ̂⁺ to Σ̂⁻ and back",
        checks.check_half_spin_exchange,
        reported=lambda n: n % 2 == 1,
        verdict_texts=("exchange holds at odd n", "exchange fails at odd n"),
    ),
    CheckDefinition(
        "lemma-decomp-equivariance", "Lemma decomp",
        "ι lands in primitive forms and intertwines ⋆ with A",
        checks.check_lemma_decomp,
    ),
    CheckDefinition(
        "prop-62-wedge-identity", "Spin and star",
        "spin(p⊗f1, q⊗f2) − spin(q⊗f1, p⊗f2) = Id ⊗ (f1f2)⋆ on Σ̂",
        checks.check_spin_star_identity, default_range=(2, 2),
    ),
    CheckDefinition(
        "star-lie-action", "Spin and star",
        "[(f1f2)⋆, (f3f4)⋆] = ([f1f2, f3f4])⋆ on Λ¹⁻³F",
        checks.check_star_lie_action,
    ),
    CheckDefinition(
        "spin-bracket", "Spin and star",
        "[spin(w1), spin(w2)] = spin([w1, w2]) on sampled wedges",
        checks.check_spin_bracket, default_range=(2, 2),
    ),
    CheckDefinition(
        "thetastar-sigma1", "Lemma thetastar",
        "both sides agree on the Σ₁ summand",
        checks.check_thetastar_sigma1, default_range=(2, 2),
    ),
    CheckDefinition(
        "thetastar-all-summands", "Lemma thetastar",
        "both sides compared on all of Σ̂",
        checks.check_thetastar_all, default_range=(2, 2),
        reported=True,
        verdict_texts=("identity extends to all summands", "identity is confined to Σ₁"),
    ),
    CheckDefinition(
        "killing-matrix-pattern", "Lemma decomp",
        "blocks of A_{h⊗e} are μ-+, μ+-, (3/2)μ++, −μ-- and zero elsewhere",
        checks.check_killing_matrix_pattern,
    ),
    CheckDefinition(
        "killing-scaling-equivalence", "Killing spinors",
        "conjugation by D maps the λ-system to the scaled system",
        checks.check_killing_scaling,
        backends=(Backend.FLOAT,),
    ),
    CheckDefinition(
        "appendix-b-sp1-claim", "Appendix B",
        "sp(1) part of [ω(t1), ω(t2)] equals κ/(8n(n+2))R^H",
        checks.check_appendix_b_sp1,
    ),
    CheckDefinition(
        "appendix-b-re-claim", "Appendix B",
        "sp(n) part of [ω(t1), ω(t2)] equals κ/(8n(n+2))R^E",
        checks.check_appendix_b_re,
        reported=True,
        verdict_texts=(
            "confirmed: the sp(n) part equals κ/(8n(n+2))·R^E",
            "refuted: the sp(n) part differs from κ/(8n(n+2))·R^E",
        ),
    ),
    CheckDefinition(
        "appendix-b-rh-claim", "Appendix B",
        "the sp(1) part matches the cyclic 𝟙∧𝐈 − 𝐉∧𝐊 display",
        checks.check_appendix_b_rh,
    ),
    CheckDefinition(
        "appendix-b-re-display", "Appendix B",
        "the sp(n) part matches ½Σ_z (zt1∧zt2 − zt2∧zt1)",
        checks.check_appendix_b_re_display,
    ),
    CheckDefinition(
        "appendix-b-flat-consistency", "Appendix B",
        "with 𝔑 = 0 the curvature equals minus the ℍⁿ bracket",
        checks.check_appendix_b_flat,
    ),
    CheckDefinition(
        "lemma-curv-dictionary", "Lemma curv",
        "R^H on real basis pairs acts as −Σ_z ⟨v1, zv2⟩z",
        checks.check_curv_dictionary,
    ),
    CheckDefinition(
        "sp1-dictionary-consistency", "Lemma curv",
        "the 𝟙𝐈𝐉𝐊 table of i, j, k against the Sym²H isomorphism",
        checks.check_sp1_dictionary, default_range=_N_FREE,
        reported=True,
        verdict_texts=("table consistent", "table inconsistent"),
    ),
    CheckDefinition(
        "sym2h-iso-lie-map", "Lemma curv",
        "Im ℍ → Sym²H preserves brackets",
        checks.check_sym2h_lie_map, default_range=_N_FREE,
    ),
    CheckDefinition(
        "sp1-wedge-identity", "Lemma osp1",
        "the 12-case quaternion identity",
        checks.check_sp1_wedge_identity, default_range=_N_FREE,
    ),
    CheckDefinition(
        "cartan-bracket-oracle", "Lemma osp1",
        "wedge bracket formula against skew-matrix commutators",
        checks.check_cartan_bracket_oracle, default_range=_N_FREE,
    ),
    CheckDefinition(
        "cartan-grading", "Cartan decomposition",
        "[k, k] ⊂ k, [k, m] ⊂ m, [m, m] ⊂ k",
        checks.check_cartan_grading,
    ),
    CheckDefinition(
        "bianchi-hpn", "Curvature of ℍPⁿ",
        "first Bianchi identity of −κ/(8n(n+2))(R^H + R^E)",
        checks.check_bianchi,
        reported=True,
        verdict_texts=("Bianchi identity holds", "Bianchi identity fails"),
    ),
)


def _validate_registry() -> Dict[str, int]:
    order: Dict[str, int] = {}
    for i, definition in enumerate(CHECKS):
        if definition.check_id in order:
            raise RuntimeError(f"duplicate check id {definition.check_id}")
        if definition.anchor not in ANCHORS:
            raise RuntimeError(f"check {definition.check_id} cites unknown anchor {definition.anchor!r}")
        order[definition.check_id] = i
    return order


_ORDER = _validate_registry()


def check_ids() -> List[str]:
    return [d.check_id for d in CHECKS]


def get_check(check_id: str) -> CheckDefinition:
    """
    Raises:
        UnknownCheckError: if the id is not registered
    """
    if check_id not in _ORDER:
        raise UnknownCheckError(check_id)
    return CHECKS[_ORDER[check_id]]


def specs_for(
    check: str,
    n_range: Optional[NRange] = None,
    backend: Backend = Backend.EXACT,
    tolerance: Optional[float] = None,
    lambda_sq_offset: float = 0.0,
) -> List[CheckSpec]:
    """Specs for one id or for every registered check when ``check == "all"``."""
    ids = check_ids() if check == "all" else [get_check(check).check_id]
    extra = {} if tolerance is None else {"tolerance": tolerance}
    return [
        CheckSpec(check_id=i, n_range=n_range, backend=backend, lambda_sq_offset=lambda_sq_offset, **extra)
        for i in ids
    ]


# ═══════════════════════════════════════════════════════════════════════════════
# RUNNER
# ═══════════════════════════════════════════════════════════════════════════════

def _json_safe(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, (Ext2Scalar, Fraction)):
        return str(value)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


def _execute(definition: CheckDefinition, ctx: CheckContext) -> CheckResult:
    bind_context(check_id=definition.check_id, n=ctx.n)
    start = time.perf_counter()
    raised = False
    try:
        verdict = definition.func(ctx)
    except Exception as e:
        raised = True
        verdict = Verdict(False, f"{type(e).__name__}: {e}", {})
        logger.error("check_raised", error=str(e), error_type=type(e).__name__)
    elapsed = time.perf_counter() - start
    elapsed_ms = int(elapsed * 1000)

    witness = verdict.witness
    text = None
    if definition.is_reported(ctx.n) and not raised:
        status = CheckStatus.REPORTED
        text = definition.verdict_texts[0 if verdict.holds else 1]
    elif verdict.holds:
        status = CheckStatus.PASS
    else:
        status = CheckStatus.FAIL
        witness = witness or "claim does not hold"

    CHECKS_RUN.labels(check_id=definition.check_id, status=status.value).inc()
    CHECK_DURATION.labels(check_id=definition.check_id).observe(elapsed)
    logger.info("check_completed", status=status.value, elapsed_ms=elapsed_ms, backend=ctx.backend.value)
    return CheckResult(
        check_id=definition.check_id,
        n=ctx.n,
        status=status,
        witness=witness,
        elapsed_ms=elapsed_ms,
        backend=ctx.backend,
        verdict=text,
        details=_json_safe(verdict.details),
    )


def expand(specs: Sequence[CheckSpec], seed: int, random_tuples: int) -> List[Tuple[CheckDefinition, CheckContext]]:
    """Unroll specs into (definition, context) jobs in registry order."""
    jobs = []
    errors = []
    for spec in specs:
        try:
            definition = get_check(spec.check_id)
        except UnknownCheckError as e:
            errors.append(str(e))
            continue
        n_range = spec.n_range or NRange(lo=definition.default_range[0], hi=definition.default_range[1])
        backend = definition.resolve_backend(spec.backend)
        for n in n_range.values():
            jobs.append((definition, CheckContext(
                n=n,
                backend=backend,
                tolerance=spec.tolerance,
                lambda_sq_offset=spec.lambda_sq_offset,
                seed=seed,
                random_tuples=random_tuples,
            )))
    if errors:
        raise CheckSpecValidationError(errors)
    jobs.sort(key=lambda job: (_ORDER[job[0].check_id], job[1].n, job[1].backend.value))
    return jobs


def run_checks(
    specs: Sequence[CheckSpec],
    jobs: Optional[int] = None,
    seed: Optional[int] = None,
    random_tuples: Optional[int] = None,
) -> List[CheckResult]:
    """
    Run every (check, n) pair of the specs in a thread pool.

    Results come back in registry order, then by n and backend, whatever the
    completion order.

    Raises:
        CheckSpecValidationError: if any spec names an unknown check
    """
    work = expand(
        specs,
        Config.seed() if seed is None else seed,
        Config.random_tuples() if random_tuples is None else random_tuples,
    )
    workers = max(1, jobs or Config.jobs())
    logger.info("run_started", jobs=len(work), workers=workers)
    if workers == 1 or len(work) <= 1:
        return [_execute(d, ctx) for d, ctx in work]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: _execute(*job), work))


# ═══════════════════════════════════════════════════════════════════════════════
# DIMENSION TABLE
# ═══════════════════════════════════════════════════════════════════════════════

def dims(n: int) -> Dict[str, Any]:
    """
    Summand dimensions of Σ and Σ̂, primitive dimensions of E and F, and the
    parallel spinor count n + 2.

    Example:
        >>> dims(2)["base"]["summands"]
        [5, 8, 3]
    """
    if n < 2:
        raise CheckSpecValidationError([f"n must be at least 2, got {n}"])
    record: Dict[str, Any] = {"n": n}
    for variant in ("base", "cone"):
        space = spinor_space(n, variant)
        record[variant] = {
            "summands": space.summand_dims(),
            "labels": [f"Sym^{r}H ⊗ Λ^{s}∘{space.vspace}" for r, s in space.summands],
            "total": space.dim,
        }
    record["primitive"] = {}
    for space_name in ("E", "F"):
        dim = space_dim(space_name, n)
        record["primitive"][space_name] = [
            primitive_basis(space_name, dim, s).dimension
            for s in range(dim // 2 + 1)
        ]
    record["parallel_spinors"] = spinor_space(n, "cone").summand_dims()[-1]
    return record
