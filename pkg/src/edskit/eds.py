"""Generation and persistence of the denominator sequence attached to (E, P).

For each n >= 1 the x-coordinate of [n]P is A_n / D_n^2 in lowest terms
with D_n > 0.  The perfect-squareness of the reduced denominator is
asserted on every term, never assumed.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .curve import RatPoint, WeierstrassCurve
from .errors import BudgetExceeded, NonSquareDenominator, TableMiss, TorsionPoint
from .intmath import int_nth_root

TOOL_VERSION = "0.1.0"

DEFAULT_MAX_DIGITS = 10 ** 5


@dataclass(frozen=True)
class EdsTerm:
    n: int
    A: int
    D: int


def eds_term(curve: WeierstrassCurve, P: RatPoint, n: int) -> EdsTerm:
    """Exact (A_n, D_n) from x([n]P); errors if [n]P is the identity."""
    if n < 1:
        raise ValueError("n must be positive")
    Q = curve.mul(n, P)
    return _term_from_point(Q, n)


def _term_from_point(Q: RatPoint, n: int) -> EdsTerm:
    if Q is None:
        raise TorsionPoint(f"[{n}]P is the identity; P is torsion")
    x = Fraction(Q[0])
    root, exact = int_nth_root(x.denominator, 2)
    if not exact:
        raise NonSquareDenominator(
            f"denominator of x([{n}]P) is not a perfect square: {x.denominator}"
        )
    return EdsTerm(n=n, A=x.numerator, D=root)


def curve_point_key(curve: WeierstrassCurve, P: RatPoint) -> str:
    """Stable hash of (a1..a6, x(P), y(P)) used for caching and file headers."""
    x, y = Fraction(P[0]), Fraction(P[1])
    blob = json.dumps(
        {
            "a": [str(c) for c in curve.coefficients()],
            "x": f"{x.numerator}/{x.denominator}",
            "y": f"{y.numerator}/{y.denominator}",
        },
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class EdsTable:
    """Contiguous terms 1..N of the sequence for one (E, P) pair."""

    def __init__(self, curve: WeierstrassCurve, P: RatPoint, terms: List[EdsTerm]):
        self.curve = curve
        self.point = P
        self.terms = terms
        self.key = curve_point_key(curve, P)

    @property
    def max_index(self) -> int:
        return len(self.terms)

    def term(self, n: int) -> EdsTerm:
        if not 1 <= n <= len(self.terms):
            raise TableMiss(f"index {n} outside table range 1..{len(self.terms)}")
        return self.terms[n - 1]

    def D(self, n: int) -> int:
        return self.term(n).D

    def A(self, n: int) -> int:
        return self.term(n).A

    def d_values(self) -> List[int]:
        return [t.D for t in self.terms]

    def check_divisibility(self) -> List[Tuple[int, int]]:
        """All (m, n) with m | n but D_m not dividing D_n (empty when healthy)."""
        bad = []
        for n in range(1, self.max_index + 1):
            Dn = self.D(n)
            for m in range(1, n):
                if n % m == 0 and Dn % self.D(m) != 0:
                    bad.append((m, n))
        return bad

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(self.key.encode())
        for t in self.terms:
            h.update(f"{t.n}:{t.A}:{t.D};".encode())
        return h.hexdigest()[:16]

    # -- JSON-lines persistence ----------------------------------------

    def dump(self, path: str) -> None:
        with open(path, "w") as fh:
            header = {
                "curve_hash": self.key,
                "tool_version": TOOL_VERSION,
                "n_max": self.max_index,
                "content_hash": self.content_hash(),
            }
            fh.write(json.dumps(header, sort_keys=True) + "\n")
            for t in self.terms:
                fh.write(json.dumps({"n": t.n, "A": str(t.A), "D": str(t.D)}) + "\n")

    @staticmethod
    def load(path: str, curve: WeierstrassCurve, P: RatPoint) -> "EdsTable":
        with open(path) as fh:
            header = json.loads(fh.readline())
            expected = curve_point_key(curve, P)
            if header.get("curve_hash") != expected:
                raise ValueError("table file does not match the given curve/point")
            terms = []
            for line in fh:
                rec = json.loads(line)
                terms.append(EdsTerm(n=rec["n"], A=int(rec["A"]), D=int(rec["D"])))
        terms.sort(key=lambda t: t.n)
        if [t.n for t in terms] != list(range(1, len(terms) + 1)):
            raise ValueError("table file is not contiguous from 1")
        return EdsTable(curve, P, terms)


def _projected_digits(terms: List[EdsTerm], N: int) -> float:
    """Projected digit count of D_N from the observed quadratic growth."""
    best = 0.0
    for t in terms:
        if t.D > 1:
            best = max(best, math.log10(t.D) / (t.n * t.n))
    return best * N * N


def eds_range(
    curve: WeierstrassCurve,
    P: RatPoint,
    N: int,
    max_digits: int = DEFAULT_MAX_DIGITS,
    cache_dir: Optional[str] = None,
) -> EdsTable:
    """Terms 1..N by the incremental chain [n]P = [n-1]P + P.

    Cross-checked against double-and-add at n = N//2 and n = N, and the
    divisibility property D_m | D_n for m | n is verified on the full
    table before it is returned.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if cache_dir:
        cached = _load_cached(curve, P, N, cache_dir)
        if cached is not None:
            return cached
    terms: List[EdsTerm] = []
    Q: RatPoint = None
    probe = min(N, 16)
    for n in range(1, N + 1):
        Q = curve.add(Q, P)
        terms.append(_term_from_point(Q, n))
        if n == probe and N > probe:
            projected = _projected_digits(terms, N)
            if projected > max_digits:
                raise BudgetExceeded(
                    f"projected D_{N} size ~{projected:.0f} digits exceeds limit {max_digits}"
                )
    for n in {max(1, N // 2), N}:
        direct = eds_term(curve, P, n)
        if (direct.A, direct.D) != (terms[n - 1].A, terms[n - 1].D):
            raise AssertionError(f"incremental chain disagrees with double-and-add at n={n}")
    table = EdsTable(curve, P, terms)
    bad = table.check_divisibility()
    if bad:
        raise AssertionError(f"divisibility property violated at pairs {bad[:5]}")
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        table.dump(os.path.join(cache_dir, f"{table.key}.jsonl"))
    return table


def _load_cached(
    curve: WeierstrassCurve, P: RatPoint, N: int, cache_dir: str
) -> Optional[EdsTable]:
    path = os.path.join(cache_dir, f"{curve_point_key(curve, P)}.jsonl")
    if not os.path.exists(path):
        return None
    try:
        table = EdsTable.load(path, curve, P)
    except (ValueError, json.JSONDecodeError):
        return None
    if table.max_index < N:
        return None
    if table.max_index > N:
        table = EdsTable(curve, P, table.terms[:N])
    return table
