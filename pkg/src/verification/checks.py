"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                           CHECK FUNCTIONS                                    ║
║                                                                              ║
║  One function per registered check. Each takes a CheckContext and returns   ║
║  a Verdict; the registry turns verdicts into CheckResults.                  ║
╚══════════════════════════════════════════════════════════════════════════════╝

ARCHITECTURE
============
    CheckContext(n, backend, tolerance, λ² offset, seed, tuples)
         │
         ▼
    check_*(ctx) ──► src.algebra.* builders / verifiers ──► Verdict
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Tuple

import numpy as np
import structlog

from src.algebra.curvature import (
    WedgeSum,
    assemble_curvature,
    cartan_bracket,
    sp1_wedge_identity,
    verify_appendix_B,
    verify_bianchi,
    verify_cartan_bracket_oracle,
    verify_cartan_grading,
    verify_curv_dictionary,
    verify_sp1_dictionary,
    verify_sym2H_brackets,
)
from src.algebra.errors import NonCanonicalBaseError
from src.algebra.killing import (
    BLOCK_PATTERN,
    KillingParams,
    block,
    killing_matrix,
    star,
    sym2_bracket,
    verify_decomp,
    verify_scaling_equivalence,
    verify_spin_star_identity,
    verify_thetastar,
)
from src.algebra.linalg import OperatorMatrix, describe_difference, sympy_rank
from src.algebra.linspaces import (
    CTVector,
    EVector,
    FVector,
    HVector,
    P_H,
    Q_H,
    TensorProduct,
    TVector,
    act_E,
    act_group,
    act_tensor,
    inner_T,
    phi,
    phi_complex,
    phi_family,
    phi_inv,
    phi_inv_tensor,
    qmat_identity,
    sigma_T,
)
from src.algebra.multilinear import (
    MultiVector,
    canonical_bivector,
    contraction_rows,
    expected_primitive_dim,
    primitive_basis,
    sigma_contract,
    space_dim,
    wedge,
)
from src.algebra.scalars import I, I_Q, INV_SQRT2, J_Q, ONE, QUATERNION_UNITS, ZERO, Quaternion
from src.algebra.spinors import (
    CLIFFORD_CONSTANT,
    clifford_constant,
    clifford_cone,
    clifford_real,
    clifford_S,
    exchange_violation,
    f_real_vectors,
    half_spin_split,
    induced_action,
    killing_space,
    mu,
    mu_components,
    spin_action,
    spinor_space,
)
from src.algebra.verdict import Verdict
from src.verification.models import Backend

logger = structlog.get_logger(__name__)

_UNIT_NAMES = ("1", "i", "j", "k")


@dataclass(frozen=True)
class CheckContext:
    """Everything a check function may depend on."""
    n: int
    backend: Backend = Backend.EXACT
    tolerance: float = 1e-12
    lambda_sq_offset: float = 0.0
    seed: int = 20240601
    random_tuples: int = 50


def _fail(witness: str, **details) -> Verdict:
    return Verdict(False, witness, details)


# ═══════════════════════════════════════════════════════════════════════════════
# DEFINING REPRESENTATIONS
# ═══════════════════════════════════════════════════════════════════════════════

def check_phi_roundtrip(ctx: CheckContext) -> Verdict:
    """Φ⁻¹∘Φ = id, Φ∘Φ⁻¹ = id and σ_H⊗σ_E(Φt1, Φt2) = ⟨t1, t2⟩ on bases."""
    n = ctx.n
    basis = TVector.real_basis(n)
    labels = TVector.real_basis_labels(n)
    zero = TVector.zero(n)
    cases = 0

    for x_name, x in (("1", ONE), ("i", I)):
        for t, label in zip(basis, labels):
            cases += 1
            back = phi_inv_tensor(phi(x, t))
            expected = CTVector(t, zero) if x_name == "1" else CTVector(zero, t)
            if back != expected:
                return _fail(f"Φ⁻¹Φ({x_name}⊗{label}) = {back!r}", cases=cases)

    for q_name, q in zip(_UNIT_NAMES, QUATERNION_UNITS):
        h = HVector.from_quaternion(q)
        for b in range(2 * n):
            e = EVector.basis(2 * n, b)
            cases += 1
            got = phi_complex(phi_inv(q, e))
            if got != TensorProduct.pure(h, e):
                return _fail(f"ΦΦ⁻¹({q_name}⊗e{b}) = {got!r}", cases=cases)

    for i, t1 in enumerate(basis):
        for j, t2 in enumerate(basis):
            cases += 1
            value = phi(1, t1).bilinear(phi(1, t2))
            if value != inner_T(t1, t2):
                return _fail(f"σ⊗σ(Φ{labels[i]}, Φ{labels[j]}) = {value}", cases=cases)
    return Verdict(True, None, {"cases": cases})


def check_lemma_tise(ctx: CheckContext) -> Verdict:
    """σ_T = σ_E∘Ψ, skew, ℂ-linear for left i, and ⟨v, w⟩ = Re σ(v, jw)."""
    basis = TVector.real_basis(ctx.n)
    labels = TVector.real_basis_labels(ctx.n)
    cases = 0
    for i, t1 in enumerate(basis):
        e1 = EVector.from_tvector(t1)
        for j, t2 in enumerate(basis):
            cases += 1
            tag = f"({labels[i]}, {labels[j]})"
            s = sigma_T(t1, t2)
            if s != e1.sigma(EVector.from_tvector(t2)):
                return _fail(f"{tag} σ_T = {s} differs from σ_E", cases=cases)
            if s != -sigma_T(t2, t1):
                return _fail(f"{tag} σ_T is not skew", cases=cases)
            if sigma_T(t1.left_mul(I_Q), t2) != I * s:
                return _fail(f"{tag} σ_T(i·t1, t2) != i·σ_T(t1, t2)", cases=cases)
            real = e1.sigma(EVector.from_tvector(t2.left_mul(J_Q))).real_part()
            if inner_T(t1, t2) != real:
                return _fail(f"{tag} ⟨t1, t2⟩ != Re σ(t1, j·t2) = {real}", cases=cases)
    return Verdict(True, None, {"pairs": cases})


def _sp_generators(n: int) -> List[Tuple[str, tuple]]:
    swap = [list(row) for row in qmat_identity(n)]
    swap[0], swap[1] = swap[1], swap[0]
    diag = [list(row) for row in qmat_identity(n)]
    diag[0][0] = J_Q
    return [
        ("Id", qmat_identity(n)),
        ("swap12", tuple(tuple(r) for r in swap)),
        ("diag(j,1,…)", tuple(tuple(r) for r in diag)),
    ]


def check_phi_equivariance(ctx: CheckContext) -> Verdict:
    """Φ∘(z·A) = (z·A)∘Φ on the real basis for generators of Sp(1)·Sp(n)."""
    n = ctx.n
    z_gens = [
        ("1", QUATERNION_UNITS[0]),
        ("(1+i)/√2", Quaternion(INV_SQRT2, INV_SQRT2)),
        ("(1+j)/√2", Quaternion(INV_SQRT2, 0, INV_SQRT2)),
    ]
    labels = TVector.real_basis_labels(n)
    cases = 0
    for z_name, z in z_gens:
        for a_name, a in _sp_generators(n):
            for t, label in zip(TVector.real_basis(n), labels):
                cases += 1
                lhs = phi(1, act_group(z, a, t))
                rhs = act_tensor(z, a, phi(1, t))
                if lhs != rhs:
                    return _fail(f"z={z_name} A={a_name} t={label}: {lhs!r} != {rhs!r}", cases=cases)
    return Verdict(True, None, {"cases": cases})


def check_phi_family(ctx: CheckContext) -> Verdict:
    """(j, −1) reproduces Φ, (−j, 1) gives −Φ, J⊗J-realness, non-canonical bases rejected."""
    n = ctx.n
    minus_p, minus_q = P_H.scale(-1), Q_H.scale(-1)
    for t, label in zip(TVector.real_basis(n), TVector.real_basis_labels(n)):
        base = phi(1, t)
        if phi_family(P_H, Q_H, 1, t) != base:
            return _fail(f"t={label}: base (j, −1) does not reproduce Φ")
        if phi_family(minus_p, minus_q, 1, t) != -base:
            return _fail(f"t={label}: base (−j, 1) does not give −Φ")
        if base.conj_JJ() != base:
            return _fail(f"t={label}: Φ(1⊗t) is not J⊗J-real")
    try:
        phi_family(P_H, P_H, 1, TVector.unit(n, 0))
    except NonCanonicalBaseError:
        return Verdict(True, None, {"tangent_vectors": 4 * n})
    return _fail("base (p, p) was accepted")


# ═══════════════════════════════════════════════════════════════════════════════
# EXTERIOR ALGEBRA AND DIMENSIONS
# ═══════════════════════════════════════════════════════════════════════════════

def _oracle_primitive_dim(space: str, dim: int, s: int) -> int:
    if s < 2:
        return comb(dim, s)
    rows, source = contraction_rows(space, dim, s)
    return len(source) - sympy_rank(dict(enumerate(rows)), (len(rows), len(source)))


def check_primitive_dims(ctx: CheckContext) -> Verdict:
    """dim Λˢ∘V = C(2m, s) − C(2m, s−2) by kernel basis and by the sympy rank oracle."""
    table: Dict[str, List[int]] = {}
    for space in ("E", "F"):
        dim = space_dim(space, ctx.n)
        dims = []
        for s in range(0, dim // 2 + 2):
            got = primitive_basis(space, dim, s).dimension
            oracle = _oracle_primitive_dim(space, dim, s)
            expected = expected_primitive_dim(dim, s)
            if not got == oracle == expected:
                return _fail(f"Λ^{s}∘{space}: basis {got}, oracle {oracle}, formula {expected}", table=table)
            dims.append(got)
        table[space] = dims
    return Verdict(True, None, {"primitive_dims": table})


def check_dims(ctx: CheckContext) -> Verdict:
    """Summand dimensions of Σ and Σ̂ against the rank oracle and 2^{2n}, 2^{2n+2}."""
    n = ctx.n
    details: Dict[str, object] = {}
    for variant, total in (("base", 4 ** n), ("cone", 4 ** (n + 1))):
        space = spinor_space(n, variant)
        dims = space.summand_dims()
        oracle = [(r + 1) * _oracle_primitive_dim(space.vspace, space.vdim, s) for r, s in space.summands]
        details[variant] = dims
        if dims != oracle:
            return _fail(f"{variant}: summands {dims} but oracle {oracle}", **details)
        if sum(dims) != total:
            return _fail(f"{variant}: total {sum(dims)} != {total}", **details)
    cone = spinor_space(n, "cone")
    parallel = cone.summand_dims()[-1]
    details["parallel_spinors"] = parallel
    if parallel != n + 2:
        return _fail(f"r = n+1 summand has dimension {parallel}, expected {n + 2}", **details)
    return Verdict(True, None, details)


def _conj_JJ_multivector(eta: MultiVector) -> MultiVector:
    """(J∧…∧J)η, antilinear in the coefficients."""
    vec_cls = EVector if eta.space == "E" else FVector
    images = [MultiVector.from_vector(vec_cls.basis(eta.dim, i).J()) for i in range(eta.dim)]
    total = MultiVector.zero(eta.space, eta.dim, eta.degree)
    for key, c in eta.items():
        term = MultiVector.scalar(eta.space, eta.dim, c.conjugate())
        for idx in key:
            term = wedge(term, images[idx])
        total = total + term
    return total


def check_bivector_normalization(ctx: CheckContext) -> Verdict:
    """σ⌟L = m, [σ⌟, L∧] = (m − d) on primitive degree d, and L is J-real, for E and F."""
    values = {}
    for space in ("E", "F"):
        dim = space_dim(space, ctx.n)
        m = dim // 2
        bivector = canonical_bivector(space, dim)
        value = sigma_contract(bivector).terms.get((), ZERO)
        values[space] = str(value)
        if value != m:
            return _fail(f"σ⌟L_{space} = {value}, expected {m}", values=values)
        if _conj_JJ_multivector(bivector) != bivector:
            return _fail(f"L_{space} is not J-real", values=values)
        for d in range(0, m):
            for j, phi_d in enumerate(primitive_basis(space, dim, d).vectors):
                lifted = sigma_contract(wedge(bivector, phi_d))
                if lifted != phi_d.scale(m - d):
                    return _fail(f"[σ⌟, L_{space}∧] on Λ^{d}∘ vector {j} is not {m - d}·id", values=values)
    return Verdict(True, None, {"sigma_contract_L": values})


# ═══════════════════════════════════════════════════════════════════════════════
# SPINOR MODULES AND CLIFFORD MULTIPLICATION
# ═══════════════════════════════════════════════════════════════════════════════

def check_mu_grading(ctx: CheckContext) -> Verdict:
    """μ = μ+- + μ-+ and μ maps Σ_r into Σ_{r−1} ⊕ Σ_{r+1}."""
    n = ctx.n
    space = spinor_space(n, "base")
    cases = 0
    for a in range(2):
        h = HVector.basis(2, a)
        for b in range(2 * n):
            e = EVector.basis(2 * n, b)
            cases += 1
            op = mu(h, e, space)
            parts = mu_components(h, e, space)
            witness = describe_difference(op, parts["mu+-"] + parts["mu-+"])
            if witness:
                return _fail(f"h={'pq'[a]} e={b} μ != μ+- + μ-+ at {witness}", cases=cases)
            for i, j, _ in op.entries():
                if abs(space.locate(i)[0] - space.locate(j)[0]) != 1:
                    return _fail(f"h={'pq'[a]} e={b} entry ({space.basis.labels[i]}, {space.basis.labels[j]}) breaks the r-grading", cases=cases)
    return Verdict(True, None, {"cases": cases})


def check_mu_equivariance(ctx: CheckContext) -> Verdict:
    """G·μ(h⊗f) = μ(h⊗Af)·G on Σ̂ for the induced action G of Sp(n) generators."""
    n = ctx.n
    space = spinor_space(n, "cone")
    dim_f = space.vdim
    cases = 0
    for a_name, a in _sp_generators(n)[1:]:
        def act(f, a=a):
            return FVector.from_parts(f.h_part, act_E(a, f.e_part))

        g = induced_action(space, act)
        for ha in range(2):
            h = HVector.basis(2, ha)
            for b in range(dim_f):
                f = FVector.basis(dim_f, b)
                cases += 1
                witness = describe_difference(g @ mu(h, f, space), mu(h, act(f), space) @ g)
                if witness:
                    return _fail(f"A={a_name} h={'pq'[ha]} f={b} {witness}", cases=cases)
    return Verdict(True, None, {"cases": cases})


def check_clifford_anticommutator(ctx: CheckContext) -> Verdict:
    """{t_a·, t_b·} = 2c⟨t_a, t_b⟩ on Σ with one global constant c."""
    basis = TVector.real_basis(ctx.n)
    ops = [clifford_real(t) for t in basis]
    result = clifford_constant(ops, lambda a, b: inner_T(basis[a], basis[b]))
    details = {"constant": None if result.constant is None else str(result.constant), "pairs": result.pairs_checked}
    if result.witness:
        return _fail(result.witness, **details)
    if result.constant != CLIFFORD_CONSTANT:
        return _fail(f"constant {result.constant} differs from the frozen {CLIFFORD_CONSTANT}", **details)
    return Verdict(True, None, details)


def check_clifford_link(ctx: CheckContext) -> Verdict:
    """Σ̂ is a Clifford module for F with constant c, and (f·𝟙·)² = −|f|² for f ⊥ 𝟙."""
    vectors = f_real_vectors(ctx.n)
    cone = clifford_constant(
        [clifford_cone(f) for f in vectors],
        lambda a, b: vectors[a].euclidean(vectors[b]),
    )
    details = {"cone_constant": None if cone.constant is None else str(cone.constant)}
    if cone.witness or cone.constant != CLIFFORD_CONSTANT:
        return _fail(cone.witness or f"cone constant {cone.constant}", **details)
    link = vectors[1:]
    s_const = clifford_constant(
        [clifford_S(f) for f in link],
        lambda a, b: link[a].euclidean(link[b]),
    )
    details["link_constant"] = None if s_const.constant is None else str(s_const.constant)
    if s_const.witness or s_const.constant != -1:
        return _fail(s_const.witness or f"link constant {s_const.constant}", **details)
    return Verdict(True, None, details)


def check_half_spin_exchange(ctx: CheckContext) -> Verdict:
    """Every μ(h⊗f) maps Σ̂⁺ to Σ̂⁻ and back."""
    space = spinor_space(ctx.n, "cone")
    split = half_spin_split(space)
    details = {
        "dim_plus": split.plus.dim,
        "dim_minus": split.minus.dim,
        "parity_supported": split.parity_supported,
    }
    for a in range(2):
        for b in range(space.vdim):
            witness = exchange_violation(mu(HVector.basis(2, a), FVector.basis(space.vdim, b), space), space)
            if witness:
                return _fail(f"h={'pq'[a]} f={b} {witness}", **details)
    if split.plus.dim != split.minus.dim:
        return _fail(f"dim Σ⁺ = {split.plus.dim} != dim Σ⁻ = {split.minus.dim}", **details)
    return Verdict(True, None, details)


def check_spin_bracket(ctx: CheckContext) -> Verdict:
    """[spin(a∧b), spin(c∧d)] = spin([a∧b, c∧d]) on sampled basis tuples of ℂ²⊗F."""
    n = ctx.n
    space = spinor_space(n, "cone")
    dim_f = space.vdim
    vectors = [
        TensorProduct.basis_element(HVector, 2, FVector, dim_f, a, b)
        for a in range(2) for b in range(dim_f)
    ]
    rng = np.random.default_rng(ctx.seed + n)

    def spin(w: WedgeSum) -> OperatorMatrix:
        total = OperatorMatrix.zero(space.basis, space.basis)
        for c, x, y in w.terms:
            total = total + spin_action(x, y, space).scale(c)
        return total

    for case in range(ctx.random_tuples):
        a, b, c, d = (vectors[int(i)] for i in rng.choice(len(vectors), size=4, replace=False))
        w1, w2 = WedgeSum.single(a, b), WedgeSum.single(c, d)
        lhs = spin(w1).commutator(spin(w2))
        rhs = spin(cartan_bracket(w1, w2, inner=lambda x, y: x.bilinear(y)))
        witness = describe_difference(lhs, rhs)
        if witness:
            return _fail(f"tuple {case}: {witness}", tuples=case + 1, seed=ctx.seed + n)
    return Verdict(True, None, {"tuples": ctx.random_tuples, "seed": ctx.seed + n})


def check_star_lie_action(ctx: CheckContext) -> Verdict:
    """[(f1f2)⋆, (f3f4)⋆] = ([f1f2, f3f4])⋆ on ΛˢF, s = 1, 2, 3, sampled basis quadruples."""
    n = ctx.n
    dim = space_dim("F", n)
    fs = [FVector.basis(dim, i) for i in range(dim)]
    rng = np.random.default_rng(ctx.seed + n)
    monomials = {s: list(combinations(range(dim), s)) for s in (1, 2, 3)}
    logger.debug("star_lie_action_sampling", n=n, seed=ctx.seed + n, tuples=ctx.random_tuples)
    for case in range(ctx.random_tuples):
        i1, i2, i3, i4 = (int(v) for v in rng.integers(0, dim, size=4))
        f1, f2, f3, f4 = fs[i1], fs[i2], fs[i3], fs[i4]
        bracket = sym2_bracket(f1, f2, f3, f4)
        for s, monos in monomials.items():
            for mono in monos:
                eta = MultiVector.monomial("F", dim, mono)
                lhs = star(f1, f2, star(f3, f4, eta)) - star(f3, f4, star(f1, f2, eta))
                rhs = MultiVector.zero("F", dim, s)
                for c, x, y in bracket:
                    rhs = rhs + star(x, y, eta).scale(c)
                if lhs != rhs:
                    return _fail(
                        f"f=({i1},{i2},{i3},{i4}) on monomial {list(mono)}",
                        tuples=case + 1, seed=ctx.seed + n,
                    )
    return Verdict(True, None, {"tuples": ctx.random_tuples, "seed": ctx.seed + n})


# ═══════════════════════════════════════════════════════════════════════════════
# KILLING SPINORS
# ═══════════════════════════════════════════════════════════════════════════════

def check_lemma_decomp(ctx: CheckContext) -> Verdict:
    return verify_decomp(ctx.n)


def check_spin_star_identity(ctx: CheckContext) -> Verdict:
    return verify_spin_star_identity(ctx.n)


def check_thetastar_sigma1(ctx: CheckContext) -> Verdict:
    return verify_thetastar(ctx.n)


def check_thetastar_all(ctx: CheckContext) -> Verdict:
    return verify_thetastar(ctx.n, all_summands=True)


def check_killing_scaling(ctx: CheckContext) -> Verdict:
    """Conjugation by D maps the λ-system to the scaled system iff λ² = (κ/4)(n+3)/(n+2)."""
    n = ctx.n
    kappa = Fraction(16 * n * (n + 2))
    lambda_sq = KillingParams.expected_lambda_sq(n, kappa) + Fraction(ctx.lambda_sq_offset)
    params = KillingParams(n, kappa, lambda_sq)
    verdict = verify_scaling_equivalence(params, ctx.tolerance)
    verdict.details["kappa"] = float(kappa)
    verdict.details["lambda_sq_offset"] = ctx.lambda_sq_offset
    return verdict


_A_COEFFICIENTS = {"mu-+": 1, "mu+-": 1, "mu++": Fraction(3, 2), "mu--": -1}


def check_killing_matrix_pattern(ctx: CheckContext) -> Verdict:
    """Blocks of A_{h⊗e} are the μ components with coefficients 1, 1, 3/2, −1, all others zero."""
    n = ctx.n
    space = killing_space(n)
    cases = 0
    for a in range(2):
        h = HVector.basis(2, a)
        for b in range(2 * n):
            e = EVector.basis(2 * n, b)
            op = killing_matrix(h, e)
            parts = mu_components(h, e, space)
            for i in range(3):
                for j in range(3):
                    cases += 1
                    got = block(op, space, i, j)
                    name = BLOCK_PATTERN.get((i, j))
                    if name is None:
                        if not got.is_zero:
                            return _fail(f"h={'pq'[a]} e={b} block ({i},{j}) should vanish", cases=cases)
                        continue
                    expected = block(parts[name].scale(_A_COEFFICIENTS[name]), space, i, j)
                    witness = describe_difference(got, expected)
                    if witness:
                        return _fail(f"h={'pq'[a]} e={b} block ({i},{j}) {witness}", cases=cases)
    return Verdict(True, None, {"cases": cases, "pattern": {f"{i},{j}": v for (i, j), v in BLOCK_PATTERN.items()}})


# ═══════════════════════════════════════════════════════════════════════════════
# CURVATURE AND THE CARTAN DECOMPOSITION
# ═══════════════════════════════════════════════════════════════════════════════

@lru_cache(maxsize=None)
def _appendix_b(n: int):
    return verify_appendix_B(n)


def check_appendix_b_sp1(ctx: CheckContext) -> Verdict:
    return _appendix_b(ctx.n).sp1_claim


def check_appendix_b_re(ctx: CheckContext) -> Verdict:
    return _appendix_b(ctx.n).spn_claim


def check_appendix_b_rh(ctx: CheckContext) -> Verdict:
    return _appendix_b(ctx.n).rh_display


def check_appendix_b_re_display(ctx: CheckContext) -> Verdict:
    return _appendix_b(ctx.n).re_display


def check_appendix_b_flat(ctx: CheckContext) -> Verdict:
    return _appendix_b(ctx.n).flat_consistency


def check_curv_dictionary(ctx: CheckContext) -> Verdict:
    return verify_curv_dictionary(ctx.n)


def check_sp1_dictionary(ctx: CheckContext) -> Verdict:
    return verify_sp1_dictionary()


def check_sym2h_lie_map(ctx: CheckContext) -> Verdict:
    return verify_sym2H_brackets()


def check_sp1_wedge_identity(ctx: CheckContext) -> Verdict:
    return sp1_wedge_identity()


def check_cartan_bracket_oracle(ctx: CheckContext) -> Verdict:
    return verify_cartan_bracket_oracle(ctx.random_tuples, ctx.seed)


def check_cartan_grading(ctx: CheckContext) -> Verdict:
    return verify_cartan_grading(ctx.n)


def check_bianchi(ctx: CheckContext) -> Verdict:
    """First Bianchi identity of −κ/(8n(n+2))(R^H + R^E) with 𝔑 = 0."""
    n = ctx.n
    return verify_bianchi(assemble_curvature(16 * n * (n + 2), None, n))
