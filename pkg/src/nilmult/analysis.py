"""Covering-pair existence and the order/rank/exponent relations over triples."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import AbelianStructure, FgAbelianGroup, PairSpec, d, exp, format_exp, order
from .multiplier import MultiplierRequest, pair_multiplier

EXISTS = "exists"
NOT_EXISTS = "not_exists"
UNKNOWN = "unknown_out_of_scope"


@dataclass(frozen=True)
class CoveringDecision:
    verdict: str
    justification: str
    multiplier: AbelianStructure

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "justification": self.justification,
            "multiplier": self.multiplier.to_json(),
        }


def pair_class(pair: PairSpec) -> int:
    """Nilpotency class of an abelian pair: 0 for trivial N, else 1."""
    return 0 if pair.N.is_trivial else 1


def covering_pair_decision(pair: PairSpec, c: int, verify: bool = False, **limits) -> CoveringDecision:
    """Decide whether ``(G, N)`` admits a c-covering pair.

    A trivial multiplier makes the inclusion ``N -> G`` a covering pair.  For
    ``c = 1`` and finite ``G`` a covering pair always exists.  Otherwise
    the pair has class ``k <= 1 < c`` and a nontrivial multiplier, which rules
    one out.
    """
    mult, _ = pair_multiplier(MultiplierRequest(pair, c, **limits), verify)
    if mult.is_trivial:
        why = "cor34_trivial_N" if pair.N.is_trivial and c > 1 else "trivial_multiplier_inclusion"
        return CoveringDecision(EXISTS, why, mult)
    if c == 1:
        if pair.G.is_finite:
            return CoveringDecision(EXISTS, "c1_ellis", mult)
        return CoveringDecision(UNKNOWN, "c1_infinite_group", mult)
    assert pair_class(pair) < c
    return CoveringDecision(NOT_EXISTS, "thm33_nontrivial", mult)


@dataclass(frozen=True)
class TripleSpec:
    """``G = N + K'`` with ``N = K + L``; ``K`` is the subgroup being factored out."""

    K: FgAbelianGroup
    L: FgAbelianGroup
    K_complement: FgAbelianGroup = field(default_factory=FgAbelianGroup)

    @classmethod
    def split(cls, N: FgAbelianGroup, i: int, K_complement: FgAbelianGroup) -> "TripleSpec":
        """Take ``K`` to be the first ``i`` cyclic summands of ``N`` (free ones first)."""
        summands = N.summands()
        if not 0 <= i <= len(summands):
            raise ValueError(f"split index {i} out of range for {len(summands)} summands of {N}")

        def build(parts):
            return FgAbelianGroup.from_json(
                {"free_rank": parts.count(0), "torsion": [p for p in parts if p]}
            )

        return cls(build(summands[:i]), build(summands[i:]), K_complement)

    @property
    def N(self) -> FgAbelianGroup:
        return self.K + self.L

    @property
    def G(self) -> FgAbelianGroup:
        return self.N + self.K_complement

    def pairs(self) -> dict[str, PairSpec]:
        return {
            "G,N": PairSpec(self.N, self.K_complement),
            "G/K,N/K": PairSpec(self.L, self.K_complement),
            "G,K": PairSpec(self.K, self.L + self.K_complement),
        }


def _clause(name, holds, lhs, rhs, relation, skipped=None):
    return {"clause": name, "relation": relation, "lhs": lhs, "rhs": rhs,
            "holds": holds, "skipped": skipped}


def check_lemma41(triple: TripleSpec, c: int, verify: bool = False, **limits) -> dict:
    """Evaluate the five relations between ``M(G,N)``, ``M(G/K,N/K)`` and ``M(G,K)``.

    For abelian ``G`` the correction group ``(K ^ [N,_cG]) / [K,_cG]`` is trivial,
    so its order is 1, it needs 0 generators and has exponent 1.  Clauses whose
    operands are infinite are reported as skipped.
    """
    mults = {
        name: pair_multiplier(MultiplierRequest(p, c, **limits), verify)[0].canonical
        for name, p in triple.pairs().items()
    }
    whole, quot, sub = mults["G,N"], mults["G/K,N/K"], mults["G,K"]
    clauses = []

    if all(g.is_finite for g in mults.values()):
        lhs, rhs = order(whole), order(quot) * order(sub)
        clauses.append(_clause("i", lhs == rhs, lhs, rhs, "=="))
    else:
        clauses.append(_clause("i", None, None, None, "==", "infinite multiplier"))

    lhs, rhs = d(whole), d(quot) + d(sub)
    clauses.append(_clause("ii", lhs <= rhs, lhs, rhs, "<="))

    e_whole, e_quot, e_sub = exp(whole), exp(quot), exp(sub)
    if e_whole and e_quot and e_sub:
        clauses.append(_clause("iii", e_whole <= e_quot * e_sub, e_whole, e_quot * e_sub, "<="))
    else:
        clauses.append(_clause("iii", None, format_exp(e_whole), None, "<=", "infinite exponent"))

    lhs, rhs = d(quot), d(whole) + 0
    clauses.append(_clause("iv", lhs <= rhs, lhs, rhs, "<="))

    if e_whole and e_quot:
        clauses.append(_clause("v", (e_whole * 1) % e_quot == 0, e_quot, e_whole * 1, "divides"))
    else:
        clauses.append(_clause("v", None, format_exp(e_quot), format_exp(e_whole), "divides", "infinite exponent"))

    return {
        "c": c,
        "G": str(triple.G),
        "N": str(triple.N),
        "K": str(triple.K),
        "multipliers": {k: str(v) for k, v in mults.items()},
        "clauses": clauses,
        "passed": all(cl["holds"] is not False for cl in clauses),
    }
