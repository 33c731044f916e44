"""Incidence algebra over F_rho and the product-obstruction checkers.

Every checker evaluates a NECESSARY condition for a product of sequence
terms to be a rho-th power.  Verdicts are three-valued:

  holds        - the necessary condition is satisfied (no obstruction),
  fails        - the condition is violated; under verified hypotheses this
                 certifies the product is not a rho-th power,
  inconclusive - hypotheses could not be verified (partial factorization,
                 no verified detecting prime, vacuous case).

No checker ever claims a product IS a rho-th power; positive confirmation
always routes through the exact integer root test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .curve import RatPoint, WeierstrassCurve
from .eds import EdsTable
from .errors import HypothesisViolated, NotSquarefree, PreconditionFailed
from .factor import DEFAULT_EFFORT, Effort, factorize, is_B_smooth, radical
from .intmath import is_prime, valuation
from .valuation import ExceptionalSet, TermRadicalData, term_radical_data

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


@dataclass
class ObstructionVerdict:
    statement: str
    verdict: str
    hypotheses: Dict[str, bool] = field(default_factory=dict)
    witnesses: Dict[str, object] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def certified_exclusion(self) -> bool:
        """True when "fails" stands on fully verified hypotheses."""
        return self.verdict == FAILS and all(self.hypotheses.values())

    def to_json(self) -> dict:
        return {
            "statement": self.statement,
            "verdict": self.verdict,
            "hypotheses": self.hypotheses,
            "witnesses": {k: _jsonable(v) for k, v in self.witnesses.items()},
            "notes": self.notes,
        }


def _jsonable(v):
    if isinstance(v, int):
        return str(v)  # decimal strings, no precision loss
    if isinstance(v, (list, tuple, set)):
        return [_jsonable(x) for x in sorted(v) if True] if isinstance(v, set) else [
            _jsonable(x) for x in v
        ]
    return v


class ObstructionContext:
    """Immutable inputs shared by all checkers, with a radical-data cache."""

    def __init__(
        self,
        curve: WeierstrassCurve,
        point: RatPoint,
        S: ExceptionalSet,
        table: EdsTable,
        sieve_bound: int = 10 ** 4,
        effort: Effort = DEFAULT_EFFORT,
    ):
        self.curve = curve
        self.point = point
        self.S = S
        self.table = table
        self.sieve_bound = sieve_bound
        self.effort = effort
        self._radical_cache: Dict[int, TermRadicalData] = {}

    def radical_data(self, l: int) -> TermRadicalData:
        if l not in self._radical_cache:
            self._radical_cache[l] = term_radical_data(
                self.curve, self.point, self.S, l, self.table, self.sieve_bound, self.effort
            )
        return self._radical_cache[l]

    def has_verified_detecting_prime(self, l: int, rho: int) -> bool:
        """A detecting prime for index l was actually found (not assumed)."""
        return bool(self.radical_data(l).detecting(rho))


# -- index-tuple combinatorics -----------------------------------------


def incidence_set(n: Sequence[int], l: int) -> List[int]:
    """I_l(n): 1-based positions i with l | n_i."""
    return [i for i, ni in enumerate(n, start=1) if ni % l == 0]


def incidence_vector(n: Sequence[int], l: int, rho: int) -> List[int]:
    return [1 if ni % l == 0 else 0 for ni in n]


def valuation_vector(n: Sequence[int], q: int, rho: int) -> List[int]:
    return [valuation(ni, q) % rho for ni in n]


def build_incidence_matrix(
    n: Sequence[int], Lambda: Sequence[int], rho: int
) -> Dict[int, List[int]]:
    return {l: incidence_vector(n, l, rho) for l in Lambda}


def gf_rank(rows: List[List[int]], rho: int) -> int:
    """Rank over F_rho by dense Gaussian elimination."""
    mat = [[x % rho for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] % rho != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], -1, rho)
        mat[rank] = [x * inv % rho for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] % rho != 0:
                c = mat[r][col]
                mat[r] = [(a - c * b) % rho for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


# -- exact threshold arithmetic ----------------------------------------


def _exceeds_sqrtB_plus_1_sq(l: int, B) -> bool:
    """l > (sqrt(B) + 1)^2, exactly, for rational B >= 2."""
    B = Fraction(B)
    t = Fraction(l) - B - 1
    return t > 0 and t * t > 4 * B


def _below_sqrt_l_minus_1_sq(q: int, l: int) -> bool:
    """q < (sqrt(l) - 1)^2, exactly."""
    t = l + 1 - q
    return t > 0 and t * t > 4 * l


def _hasse_compatible(l: int, q: int) -> bool:
    """l <= q + 1 + 2*sqrt(q), exactly."""
    t = l - q - 1
    return t <= 0 or t * t <= 4 * q


def _largest_prime_factor_exact(x: int, effort: Effort) -> int:
    """P^+(x) with a completeness requirement; refuses rather than guesses."""
    if x == 1:
        return 1
    fac = factorize(x, effort)
    if not fac.complete:
        raise HypothesisViolated(f"largest prime divisor of {x} unknown (partial factorization)")
    return max(p for p, _ in fac.factors)


# -- valuation-congruence checkers -------------------------------------


def absorption_congruence(
    ctx: ObstructionContext, n: Sequence[int], l: int, p: int, rho: int
) -> ObstructionVerdict:
    """|I_l(n)| * v_p(D_l) + sum over I_l of v_p(n_i / l), modulo rho.

    Necessary for the product over n to be a rho-th power; evaluated
    exactly, never assumed.
    """
    if p in ctx.S:
        raise PreconditionFailed(f"p={p} lies in the exceptional set")
    D_l = ctx.table.D(l)
    if D_l % p != 0:
        raise PreconditionFailed(f"p={p} does not divide D_{l}")
    I = incidence_set(n, l)
    v_dl = valuation(D_l, p)
    quot_sum = sum(valuation(n[i - 1] // l, p) for i in I)
    lhs = len(I) * v_dl + quot_sum
    v = ObstructionVerdict(
        statement="absorption_congruence",
        verdict=HOLDS if lhs % rho == 0 else FAILS,
        hypotheses={"p_outside_S": True, "p_divides_D_l": True},
        witnesses={
            "l": l,
            "p": p,
            "I_l": I,
            "v_p_D_l": v_dl,
            "quotient_valuation_sum": quot_sum,
            "lhs_mod_rho": lhs % rho,
        },
    )
    return v


def incidence_pairing(
    ctx: ObstructionContext, n: Sequence[int], l: int, q: int, rho: int
) -> ObstructionVerdict:
    """<e_l(n), v_q(n)> against |I_l(n)|*(v_q(l) - v_q(D_l)) over F_rho.

    Algebraic rearrangement of the absorption congruence; kept separate
    so the equivalence can be asserted in tests.
    """
    if q in ctx.S:
        raise PreconditionFailed(f"q={q} lies in the exceptional set")
    D_l = ctx.table.D(l)
    if D_l % q != 0:
        raise PreconditionFailed(f"q={q} does not divide D_{l}")
    e = incidence_vector(n, l, rho)
    vq = [valuation(ni, q) for ni in n]
    lhs = sum(a * b for a, b in zip(e, vq)) % rho
    I = incidence_set(n, l)
    rhs = len(I) * (valuation(l, q) - valuation(D_l, q)) % rho
    return ObstructionVerdict(
        statement="incidence_pairing",
        verdict=HOLDS if lhs == rhs else FAILS,
        hypotheses={"q_outside_S": True, "q_divides_D_l": True},
        witnesses={"l": l, "q": q, "lhs": lhs, "rhs": rhs, "I_l": I},
    )


def squarefree_incidence(
    ctx: ObstructionContext, n: Sequence[int], l: int, q: int, rho: int
) -> ObstructionVerdict:
    """Counting form for squarefree tuples: N_{l,q} = -N_l * v_q(D_l) mod rho."""
    for ni in n:
        fac = factorize(ni, ctx.effort)
        if not fac.complete or any(e > 1 for _, e in fac.factors):
            raise NotSquarefree(f"index {ni} is not (verifiably) squarefree")
    if q == l:
        raise PreconditionFailed("q must differ from l")
    if q in ctx.S:
        raise PreconditionFailed(f"q={q} lies in the exceptional set")
    D_l = ctx.table.D(l)
    if D_l % q != 0:
        raise PreconditionFailed(f"q={q} does not divide D_{l}")
    N_l = len(incidence_set(n, l))
    N_lq = sum(1 for ni in n if ni % (l * q) == 0)
    v_dl = valuation(D_l, q)
    return ObstructionVerdict(
        statement="squarefree_incidence",
        verdict=HOLDS if (N_lq + N_l * v_dl) % rho == 0 else FAILS,
        hypotheses={"squarefree": True, "q_outside_S": True, "q_divides_D_l": True},
        witnesses={"l": l, "q": q, "N_l": N_l, "N_lq": N_lq, "v_q_D_l": v_dl},
    )


# -- support and packing checkers --------------------------------------


def prime_support_check(
    ctx: ObstructionContext,
    n: Sequence[int],
    l: int,
    rho: int,
) -> ObstructionVerdict:
    """Radical divisibility, Hasse scale, and top-prime interval at index l."""
    I = incidence_set(n, l)
    if len(I) % rho == 0:
        return ObstructionVerdict(
            statement="prime_support_check",
            verdict=INCONCLUSIVE,
            hypotheses={"rho_not_dividing_I": False},
            witnesses={"l": l, "I_l": I},
            notes=["vacuous: rho divides |I_l(n)|"],
        )
    data = ctx.radical_data(l)
    rad, certainty = data.power_radical(rho)
    quotient = 1
    for i in I:
        quotient *= n[i - 1] // l
    hyp = {"rho_not_dividing_I": True, "radical_complete": data.complete}
    wit: Dict[str, object] = {"l": l, "I_l": I, "radical": rad, "quotient": quotient}
    notes: List[str] = []
    if rad == 1:
        if data.complete:
            notes.append("radical trivial: no detecting prime at this index")
            return ObstructionVerdict("prime_support_check", HOLDS, hyp, wit, notes)
        return ObstructionVerdict(
            "prime_support_check",
            INCONCLUSIVE,
            hyp,
            wit,
            ["partial factorization and empty certain radical"],
        )
    # Divisibility by the certain part is asserted even when partial.
    if quotient % rad != 0:
        notes.append("certain radical part does not divide the quotient product")
        return ObstructionVerdict("prime_support_check", FAILS, hyp, wit, notes)
    radical_primes = [p for p, v in data.entries if v % rho != 0]
    hasse_ok = all(_hasse_compatible(l, q) for q in radical_primes)
    wit["radical_primes"] = radical_primes
    if not hasse_ok:
        notes.append("Hasse-scale inequality violated by a radical prime")
        return ObstructionVerdict("prime_support_check", FAILS, hyp, wit, notes)
    top_prime = all(
        valuation(n[i - 1], l) == 1
        and _largest_prime_factor_exact(n[i - 1], ctx.effort) == l
        for i in I
    )
    if top_prime:
        interval_ok = all(
            q < l and not _below_sqrt_l_minus_1_sq(q, l) for q in radical_primes
        )
        wit["top_prime_interval_ok"] = interval_ok
        if not interval_ok:
            notes.append("top-prime interval violated by a radical prime")
            return ObstructionVerdict("prime_support_check", FAILS, hyp, wit, notes)
    if not data.complete:
        return ObstructionVerdict(
            "prime_support_check",
            INCONCLUSIVE,
            hyp,
            wit,
            ["certain part divides, but the radical is only a lower bound"],
        )
    return ObstructionVerdict("prime_support_check", HOLDS, hyp, wit, notes)


def multiplicity_obstruction(
    ctx: ObstructionContext, n: Sequence[int], l: int, q: int, rho: int
) -> ObstructionVerdict:
    """v_q of the quotient product against -|I_l(n)| * v_q(D_l) mod rho."""
    if q == l:
        raise PreconditionFailed("q must differ from l")
    if q in ctx.S:
        raise PreconditionFailed(f"q={q} lies in the exceptional set")
    D_l = ctx.table.D(l)
    v_dl = valuation(D_l, q) if D_l % q == 0 else 0
    if v_dl == 0 or v_dl % rho == 0:
        raise PreconditionFailed(f"q={q} does not divide the power radical of D_{l}")
    I = incidence_set(n, l)
    v_quot = sum(valuation(n[i - 1] // l, q) for i in I)
    case = "rho_divides_I" if len(I) % rho == 0 else "rho_not_dividing_I"
    return ObstructionVerdict(
        statement="multiplicity_obstruction",
        verdict=HOLDS if (v_quot + len(I) * v_dl) % rho == 0 else FAILS,
        hypotheses={"q_in_radical": True, "q_ne_l": True},
        witnesses={"l": l, "q": q, "I_l": I, "v_q_quotient": v_quot, "v_q_D_l": v_dl, "case": case},
    )


def _check_top_prime_hypotheses(
    ctx: ObstructionContext, n: Sequence[int], l: int, B, L_rho
) -> List[str]:
    """Reasons the smooth-cofactor hypotheses fail at l (empty = all hold)."""
    reasons = []
    if not is_prime(l):
        reasons.append(f"l={l} is not prime")
    if l <= L_rho:
        reasons.append(f"l={l} does not exceed the detecting threshold L_rho={L_rho}")
    if not _exceeds_sqrtB_plus_1_sq(l, B):
        reasons.append(f"l={l} does not exceed (sqrt(B)+1)^2 for B={B}")
    for i in incidence_set(n, l):
        ni = n[i - 1]
        if valuation(ni, l) != 1:
            reasons.append(f"v_l(n_{i})={valuation(ni, l)} != 1")
            continue
        try:
            top = _largest_prime_factor_exact(ni, ctx.effort)
        except HypothesisViolated as exc:
            reasons.append(str(exc))
            continue
        if top != l:
            reasons.append(f"l is not the largest prime divisor of n_{i}={ni}")
        elif not is_B_smooth(ni // l, B):
            reasons.append(f"cofactor n_{i}/l={ni // l} is not B-smooth")
    return reasons


def smooth_cofactor_balance(
    ctx: ObstructionContext,
    n: Sequence[int],
    l: int,
    rho: int,
    B,
    L_rho: int = 0,
) -> ObstructionVerdict:
    """rho must divide |I_l(n)| when l is a large top prime with smooth cofactors.

    A fails verdict certifies the product is not a rho-th power, provided
    a detecting prime at l was actually exhibited; with only the
    threshold assumption the verdict degrades to inconclusive.
    """
    reasons = _check_top_prime_hypotheses(ctx, n, l, B, L_rho)
    if reasons:
        raise HypothesisViolated("; ".join(reasons))
    I = incidence_set(n, l)
    wit = {"l": l, "I_l": I, "size_mod_rho": len(I) % rho}
    if len(I) % rho == 0:
        return ObstructionVerdict(
            "smooth_cofactor_balance", HOLDS, {"top_prime_hypotheses": True}, wit
        )
    if ctx.has_verified_detecting_prime(l, rho):
        return ObstructionVerdict(
            "smooth_cofactor_balance",
            FAILS,
            {"top_prime_hypotheses": True, "detecting_prime_verified": True},
            wit,
            ["rho does not divide |I_l(n)|: product cannot be a rho-th power"],
        )
    return ObstructionVerdict(
        "smooth_cofactor_balance",
        INCONCLUSIVE,
        {"top_prime_hypotheses": True, "detecting_prime_verified": False},
        wit,
        ["no verified detecting prime at l; the guarantee needs the true L_rho"],
    )


@dataclass
class ClusterPackingReport:
    """The five conclusions of the cluster-packing theorem, checked independently."""

    lambda_used: List[int]
    lambda_star: List[int]
    dropped: Dict[int, str]
    matrix: Dict[int, List[int]]
    rank: int
    k: int
    rho: int
    conclusions: Dict[int, str]
    exclusion: bool
    certified: bool
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "lambda": [str(l) for l in self.lambda_used],
            "lambda_star": [str(l) for l in self.lambda_star],
            "dropped": {str(l): r for l, r in self.dropped.items()},
            "rank": self.rank,
            "conclusions": {str(i): v for i, v in self.conclusions.items()},
            "exclusion": self.exclusion,
            "certified": self.certified,
            "notes": self.notes,
        }


def cluster_packing(
    ctx: ObstructionContext,
    n: Sequence[int],
    Lambda: Sequence[int],
    rho: int,
    B,
    L_rho: int = 0,
) -> ClusterPackingReport:
    """Build M_Lambda(n) over F_rho and check all five packing conclusions.

    Primes failing the per-l hypotheses are dropped with a note rather
    than aborting the whole report.
    """
    k = len(n)
    dropped: Dict[int, str] = {}
    surviving: List[int] = []
    for l in Lambda:
        reasons = _check_top_prime_hypotheses(ctx, n, l, B, L_rho)
        if reasons:
            dropped[l] = "; ".join(reasons)
        else:
            surviving.append(l)
    matrix = build_incidence_matrix(n, surviving, rho)
    lambda_star = [l for l in surviving if any(matrix[l])]
    conclusions: Dict[int, str] = {}
    # (1) each row weight divisible by rho
    conclusions[1] = HOLDS if all(sum(matrix[l]) % rho == 0 for l in surviving) else FAILS
    # (2) pairwise disjoint supports of nonzero rows
    disjoint = all(
        not any(a and b for a, b in zip(matrix[l], matrix[m]))
        for ix, l in enumerate(lambda_star)
        for m in lambda_star[ix + 1 :]
    )
    conclusions[2] = HOLDS if disjoint else FAILS
    # (3) nonzero rows linearly independent: rank equals |Lambda*|
    rank = gf_rank([matrix[l] for l in lambda_star], rho) if lambda_star else 0
    conclusions[3] = HOLDS if rank == len(lambda_star) else FAILS
    # (4) packing bound
    conclusions[4] = HOLDS if len(lambda_star) <= k // rho else FAILS
    # (5) small-tuple emptiness
    conclusions[5] = HOLDS if (k >= rho or not lambda_star) else FAILS
    failing = [i for i, v in conclusions.items() if v == FAILS]
    exclusion = bool(failing)
    certified = exclusion and all(
        ctx.has_verified_detecting_prime(l, rho) for l in lambda_star
    ) if exclusion else False
    notes = []
    if exclusion and not certified:
        notes.append("exclusion rests on the detecting-prime threshold, not a verified witness")
    return ClusterPackingReport(
        lambda_used=surviving,
        lambda_star=lambda_star,
        dropped=dropped,
        matrix=matrix,
        rank=rank,
        k=k,
        rho=rho,
        conclusions=conclusions,
        exclusion=exclusion,
        certified=certified,
        notes=notes,
    )


def repeated_top_prime(
    ctx: ObstructionContext,
    n: Sequence[int],
    rho: int,
    B,
    L_rho: int = 0,
) -> ObstructionVerdict:
    """Indices n_i = l_i * a_i: each top prime must repeat a multiple of rho times."""
    tops: List[int] = []
    for i, ni in enumerate(n, start=1):
        l_i = _largest_prime_factor_exact(ni, ctx.effort)
        if l_i == 1:
            raise HypothesisViolated(f"n_{i}=1 has no top prime")
        reasons = []
        if l_i <= L_rho:
            reasons.append(f"l_{i}={l_i} below L_rho")
        if not _exceeds_sqrtB_plus_1_sq(l_i, B):
            reasons.append(f"l_{i}={l_i} not above (sqrt(B)+1)^2")
        if valuation(ni, l_i) != 1:
            reasons.append(f"v_l(n_{i}) != 1")
        if not is_B_smooth(ni // l_i, B):
            reasons.append(f"cofactor of n_{i} not B-smooth")
        if reasons:
            raise HypothesisViolated("; ".join(reasons))
        tops.append(l_i)
    multiplicities = {l: tops.count(l) for l in set(tops)}
    offending = sorted(l for l, c in multiplicities.items() if c % rho != 0)
    wit = {
        "top_primes": tops,
        "multiplicities_mod_rho": {str(l): c % rho for l, c in sorted(multiplicities.items())},
        "pairwise_distinct": len(set(tops)) == len(tops),
    }
    if not offending:
        return ObstructionVerdict(
            "repeated_top_prime", HOLDS, {"top_prime_hypotheses": True}, wit
        )
    verified = all(ctx.has_verified_detecting_prime(l, rho) for l in offending)
    if verified:
        return ObstructionVerdict(
            "repeated_top_prime",
            FAILS,
            {"top_prime_hypotheses": True, "detecting_primes_verified": True},
            wit,
            ["some top prime occurs with multiplicity not divisible by rho"],
        )
    return ObstructionVerdict(
        "repeated_top_prime",
        INCONCLUSIVE,
        {"top_prime_hypotheses": True, "detecting_primes_verified": False},
        wit,
        ["no verified detecting prime at an offending top prime"],
    )


def large_prime_gap(
    ctx: ObstructionContext,
    m: int,
    n: Optional[int],
    rho: int,
    L_rho: int = 0,
    B=None,
) -> ObstructionVerdict:
    """Coprime two-term exclusion from the prime gap below the top prime of m.

    When P^+(m / l) < (sqrt(l)-1)^2 (or m/l is B-smooth with l above the
    smooth threshold), no product D_m * D_n with gcd(m, n) = 1 can be a
    rho-th power.  The exclusion then applies to ALL coprime n; a concrete
    n is only used for the gcd precondition and oracle cross-validation.
    """
    if m < 2:
        raise HypothesisViolated("m must be at least 2")
    if n is not None and gcd(m, n) != 1:
        raise HypothesisViolated(f"gcd({m},{n}) != 1")
    l = _largest_prime_factor_exact(m, ctx.effort)
    if valuation(m, l) != 1:
        raise HypothesisViolated(f"v_l(m)={valuation(m, l)} != 1")
    if l <= L_rho:
        raise HypothesisViolated(f"l={l} does not exceed L_rho={L_rho}")
    cofactor = m // l
    top_cof = _largest_prime_factor_exact(cofactor, ctx.effort)
    detected = ctx.has_verified_detecting_prime(l, rho)
    hyp = {
        "coprime": True,
        "simple_top_prime": True,
        "detecting_prime_verified": detected,
    }
    wit: Dict[str, object] = {"m": m, "l": l, "cofactor": cofactor, "P_plus_cofactor": top_cof}
    gap = cofactor == 1 or _below_sqrt_l_minus_1_sq(top_cof, l)
    smooth_route = (
        B is not None and is_B_smooth(cofactor, B) and _exceeds_sqrtB_plus_1_sq(l, B)
    )
    if not (gap or smooth_route):
        return ObstructionVerdict(
            "large_prime_gap",
            HOLDS,
            hyp,
            wit,
            ["necessary gap condition satisfied; no exclusion from this test"],
        )
    wit["route"] = "prime_gap" if gap else "smooth_cofactor"
    if not detected:
        return ObstructionVerdict(
            "large_prime_gap",
            INCONCLUSIVE,
            hyp,
            wit,
            ["gap condition violated, but no verified detecting prime at l"],
        )
    notes = ["D_m * D_n cannot be a rho-th power for any n coprime to m"]
    if n is not None and max(m, n) <= ctx.table.max_index:
        from .intmath import is_rho_power

        product = ctx.table.D(m) * ctx.table.D(n)
        oracle = is_rho_power(product, rho) if product >= 1 else False
        wit["oracle_product_is_power"] = oracle
        assert not oracle, "exclusion contradicted by the exact power oracle"
    return ObstructionVerdict("large_prime_gap", FAILS, hyp, wit, notes)


def radical_lower_bound(
    ctx: ObstructionContext,
    n: Sequence[int],
    Lambda: Sequence[int],
    rho: int,
    L_rho: int = 0,
) -> ObstructionVerdict:
    """rad of the quotient product against prod over Lambda of (sqrt(l)-1)^2."""
    import math

    for l in Lambda:
        if not is_prime(l):
            raise HypothesisViolated(f"l={l} is not prime")
        if l <= L_rho:
            raise HypothesisViolated(f"l={l} below L_rho")
        if len(incidence_set(n, l)) % rho == 0:
            raise HypothesisViolated(f"rho divides |I_l(n)| for l={l}")
        for i in incidence_set(n, l):
            ni = n[i - 1]
            if valuation(ni, l) != 1 or _largest_prime_factor_exact(ni, ctx.effort) != l:
                raise HypothesisViolated(f"top-prime condition fails at l={l}, i={i}")
    # Pairwise coprimality of the certain radical parts is unconditional.
    rads = {l: ctx.radical_data(l).power_radical(rho)[0] for l in Lambda}
    pairs = [(a, b) for ix, a in enumerate(Lambda) for b in Lambda[ix + 1 :]]
    for a, b in pairs:
        assert gcd(rads[a], rads[b]) == 1, f"radical coprimality violated at ({a},{b})"
    quotient = 1
    for l in Lambda:
        for i in incidence_set(n, l):
            quotient *= n[i - 1] // l
    hyp = {"top_prime_hypotheses": True}
    if quotient == 1:
        rad_q, certainty = 1, "certain"
    else:
        rad_q, certainty = radical(quotient, ctx.effort)
    bound = math.prod((math.sqrt(l) - 1) ** 2 for l in Lambda) if Lambda else 1.0
    wit = {"quotient": quotient, "radical": rad_q, "bound": f"{bound:.6f}"}
    if certainty != "certain":
        return ObstructionVerdict(
            "radical_lower_bound", INCONCLUSIVE, hyp, wit, ["quotient only partially factored"]
        )
    # Conservative margin against float error in the irrational bound.
    if rad_q >= bound * (1 - 1e-9):
        return ObstructionVerdict("radical_lower_bound", HOLDS, hyp, wit)
    detected = all(ctx.has_verified_detecting_prime(l, rho) for l in Lambda)
    hyp["detecting_primes_verified"] = detected
    if not detected:
        return ObstructionVerdict(
            "radical_lower_bound",
            INCONCLUSIVE,
            hyp,
            wit,
            ["bound violated, but detecting primes not verified for all of Lambda"],
        )
    return ObstructionVerdict(
        "radical_lower_bound",
        FAILS,
        hyp,
        wit,
        ["radical falls below the packing bound: product cannot be a rho-th power"],
    )


# -- whole-tuple evaluation --------------------------------------------


@dataclass
class TupleReport:
    """Every applicable checker's verdict for one index tuple."""

    n: Tuple[int, ...]
    rho: int
    verdicts: List[ObstructionVerdict]
    cluster: Optional[ClusterPackingReport]
    skipped: List[str]

    @property
    def certified_exclusions(self) -> List[str]:
        out = [v.statement for v in self.verdicts if v.verdict == FAILS and v.certified_exclusion]
        if self.cluster is not None and self.cluster.certified:
            out.append("cluster_packing")
        return out

    def to_json(self) -> dict:
        return {
            "n": list(self.n),
            "rho": self.rho,
            "verdicts": [v.to_json() for v in self.verdicts],
            "cluster_packing": self.cluster.to_json() if self.cluster else None,
            "skipped": self.skipped,
            "certified_exclusions": self.certified_exclusions,
        }


def evaluate_tuple(
    ctx: ObstructionContext,
    n: Sequence[int],
    rho: int,
    B=2,
    L_rho: int = 0,
) -> TupleReport:
    """Run every checker that applies to the tuple and collect verdicts.

    Checkers whose preconditions or hypotheses do not hold are recorded
    as skipped, never silently dropped.
    """
    from .intmath import primes_up_to

    n = tuple(n)
    verdicts: List[ObstructionVerdict] = []
    skipped: List[str] = []
    top = max(n) if n else 0
    candidate_primes = [l for l in primes_up_to(top) if l <= ctx.table.max_index]
    squarefree = all(
        all(e == 1 for _, e in factorize(ni, ctx.effort).factors)
        and factorize(ni, ctx.effort).complete
        for ni in n
    )
    for l in candidate_primes:
        data = ctx.radical_data(l)
        for p, v in data.entries:
            a = absorption_congruence(ctx, n, l, p, rho)
            b = incidence_pairing(ctx, n, l, p, rho)
            assert a.verdict == b.verdict, "absorption/pairing equivalence violated"
            verdicts.extend([a, b])
            if p != l and v % rho != 0:
                verdicts.append(multiplicity_obstruction(ctx, n, l, p, rho))
                if squarefree:
                    verdicts.append(squarefree_incidence(ctx, n, l, p, rho))
        verdicts.append(prime_support_check(ctx, n, l, rho))
        try:
            verdicts.append(smooth_cofactor_balance(ctx, n, l, rho, B, L_rho))
        except HypothesisViolated as exc:
            skipped.append(f"smooth_cofactor_balance(l={l}): {exc}")
    cluster = cluster_packing(ctx, n, candidate_primes, rho, B, L_rho) if n else None
    try:
        verdicts.append(repeated_top_prime(ctx, n, rho, B, L_rho))
    except HypothesisViolated as exc:
        skipped.append(f"repeated_top_prime: {exc}")
    if len(n) == 2 and gcd(n[0], n[1]) == 1:
        for m, other in (n, (n[1], n[0])):
            if m >= 2:
                try:
                    verdicts.append(large_prime_gap(ctx, m, other, rho, L_rho, B))
                except HypothesisViolated as exc:
                    skipped.append(f"large_prime_gap(m={m}): {exc}")
    rl_lambda = [
        l
        for l in candidate_primes
        if incidence_set(n, l)
        and len(incidence_set(n, l)) % rho != 0
        and all(
            valuation(n[i - 1], l) == 1
            and _largest_prime_factor_exact(n[i - 1], ctx.effort) == l
            for i in incidence_set(n, l)
        )
    ]
    try:
        verdicts.append(radical_lower_bound(ctx, n, rl_lambda, rho, L_rho))
    except HypothesisViolated as exc:
        skipped.append(f"radical_lower_bound: {exc}")
    return TupleReport(n=n, rho=rho, verdicts=verdicts, cluster=cluster, skipped=skipped)
