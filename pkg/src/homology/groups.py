import sys
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional, Tuple

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.coefficients import Ring, RingKind
from src.brauer.errors import ComplexError
from src.complexes.chain_complex import ChainComplex
from src.homology.snf import SNFResult, divisibility_chain, matrix_rank, snf
from utils.logger import setup_logger
from utils.paths import get_log_path

logger = setup_logger(get_log_path("homology"), "homology")


@dataclass(frozen=True)
class HomologyGroup:
    """
    Over Z (and Z/m, read as an abelian group): Z^free_rank plus cyclic
    torsion in invariant-factor form. Over a field: free_rank is the dimension.
    """

    free_rank: int
    torsion: Tuple[int, ...] = ()
    over_field: bool = False

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ComplexError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_cyclic_orders(cls, free_rank: int, orders, over_field: bool = False) -> "HomologyGroup":
        chain = [d for d in divisibility_chain(list(orders)) if d > 1]
        return cls(free_rank, tuple(chain), over_field)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_row(self, degree: int) -> dict:
        return {"degree": degree, "free_rank": self.free_rank, "torsion": [str(t) for t in self.torsion]}

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        if self.free_rank:
            base = "k" if self.over_field else "Z"
            parts.append(base if self.free_rank == 1 else f"{base}^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts)


def _integral(C: ChainComplex, top: int, progress: bool) -> Dict[int, HomologyGroup]:
    factors: Dict[int, SNFResult] = {}
    for p in range(C.lo + 1, min(top + 1, C.hi) + 1):
        factors[p] = snf(C.boundary(p), progress=progress)
        logger.debug(f"{C.name}: d_{p} rank {factors[p].rank}")
    out = {}
    for p in range(C.lo, top + 1):
        r_in = factors[p].rank if p in factors else 0
        out_f = factors.get(p + 1)
        r_out = out_f.rank if out_f else 0
        torsion = out_f.torsion if out_f else ()
        out[p] = HomologyGroup(C.rank(p) - r_in - r_out, torsion)
    return out


def _over_field(C: ChainComplex, top: int, progress: bool) -> Dict[int, HomologyGroup]:
    ranks = {p: matrix_rank(C.boundary(p), C.ring, progress) for p in range(C.lo + 1, min(top + 1, C.hi) + 1)}
    return {
        p: HomologyGroup(C.rank(p) - ranks.get(p, 0) - ranks.get(p + 1, 0), (), True)
        for p in range(C.lo, top + 1)
    }


def _universal_coefficients(integral: Dict[int, HomologyGroup], m: int) -> Dict[int, HomologyGroup]:
    """H_p(C (x) Z/m) = H_p (x) Z/m  +  Tor(H_{p-1}, Z/m)."""
    out = {}
    for p, H in integral.items():
        orders = [m] * H.free_rank + [gcd(t, m) for t in H.torsion]
        below = integral.get(p - 1)
        if below is not None:
            orders += [gcd(t, m) for t in below.torsion]
        out[p] = HomologyGroup.from_cyclic_orders(0, [o for o in orders if o > 1])
    return out


def complex_homology(C: ChainComplex, upto: Optional[int] = None, progress: bool = False) -> Dict[int, HomologyGroup]:
    """
    Homology in degrees lo..min(upto, exact_through). Over Z from invariant
    factors, over fields by rank-nullity, over Z/m from the integral lift.
    """
    top = C.exact_through if upto is None else min(upto, C.exact_through)
    C.check_square_zero()
    kind = C.ring.kind
    if kind is RingKind.INTEGERS:
        result = _integral(C, top, progress)
    elif C.ring.is_field:
        result = _over_field(C, top, progress)
    else:
        result = _universal_coefficients(_integral(C, top, progress), C.ring.modulus)
    nonzero = [p for p, H in result.items() if not H.is_zero]
    logger.info(f"✅ {C.name} over {C.ring}: homology computed through degree {top}; nonzero in {nonzero or 'none'}")
    return result


def vanishing_failures(groups: Dict[int, HomologyGroup], through: int) -> List[int]:
    """Degrees <= through whose homology is nonzero."""
    return [p for p, H in sorted(groups.items()) if p <= through and not H.is_zero]
