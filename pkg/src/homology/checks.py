"""
Numerical instances of the isomorphism, surjectivity and vanishing
statements about Tor over Brauer algebras, each returned as a Report.
Statements hold for all degrees; every check here covers degrees < D only.
"""
import sys
from math import gcd
from pathlib import Path
from typing import Dict, Iterable, Optional

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.coefficients import Ring, RingElem, RingKind
from src.brauer.errors import SemanticError
from src.brauer.reports import Report
from src.complexes.chain_complex import ChainComplex
from src.homology.bar import BarAlgebra, ModuleFactory, bar_tor, build_bar_complex
from src.homology.groups import HomologyGroup, complex_homology
from src.homology.induced import (
    TorMap,
    embed_map,
    iota_map,
    label_module_map,
    pi_map,
    unit_module_map,
)
from utils.logger import setup_logger
from utils.paths import get_log_path

logger = setup_logger(get_log_path("checks"), "checks")


def maps_supported(ring: Ring) -> bool:
    return ring.kind is RingKind.INTEGERS or ring.is_field


def quotient_group(ring: Ring, r: RingElem) -> HomologyGroup:
    """R / rR as a HomologyGroup."""
    r = ring.canon(r)
    if ring.kind is RingKind.INTEGERS:
        r = abs(int(r))
        return HomologyGroup(1) if r == 0 else HomologyGroup.from_cyclic_orders(0, [r])
    if ring.is_field:
        return HomologyGroup(1 if ring.is_zero(r) else 0, (), True)
    return HomologyGroup.from_cyclic_orders(0, [gcd(int(r), ring.modulus)])


def direct_sum(*groups: HomologyGroup) -> HomologyGroup:
    over_field = any(g.over_field for g in groups)
    return HomologyGroup.from_cyclic_orders(
        sum(g.free_rank for g in groups), [t for g in groups for t in g.torsion], over_field
    )


def _compare_groups(report: Report, check: str, instance: str, expected: Dict[int, HomologyGroup],
                    computed: Dict[int, HomologyGroup], degrees: Iterable[int]) -> None:
    for i in degrees:
        e, c = expected[i], computed[i]
        if e != c:
            logger.warning(f"⚠️ {check} at {instance}, i={i}: expected {e}, computed {c}")
        report.add(check, f"{instance}, i={i}", str(e), str(c), e == c)


def _add_map_row(report: Report, check: str, instance: str, expected: Optional[bool], computed: bool) -> None:
    """expected None: outside the predicted range, the value is recorded but not judged."""
    shown = "not predicted" if expected is None else expected
    report.add(check, instance, shown, computed, expected is None or expected == computed)


def _truncation_note(report: Report, D: int) -> None:
    report.notes.append(f"degrees checked: 0..{D - 1} (bar complex truncated at {D})")


def _tor(kind: str, n: int, ring: Ring, D: int, module: str, *args):
    algebra = BarAlgebra(kind, n, ring)
    return bar_tor(algebra, ModuleFactory.get_module(module, algebra, *args), D)


# --- Tor_1 of Br_2 and the non-flat witness ---
def br2_check(ring: Ring) -> Report:
    """Tor_1^{Br_2}(t, t) = R/2R + R/delta R and Tor_0 = R."""
    report = Report(f"br2({ring})")
    res = _tor("brauer", 2, ring, 2, "trivial")
    expected = {0: quotient_group(ring, 0), 1: direct_sum(quotient_group(ring, 2), quotient_group(ring, ring.delta))}
    _compare_groups(report, "Tor^Br_2(t,t)", f"{ring}", expected, res.groups, (0, 1))
    return report


def nonflat_check(ring: Ring) -> Report:
    """Tor^{Br_2}(Br_3, t): Tor_0 is free on the 6 box diagrams, Tor_1 = (R/delta R)^3."""
    report = Report(f"nonflat({ring})")
    res = _tor("brauer", 2, ring, 2, "restricted", 3)
    rank0 = quotient_group(ring, 0)
    q = quotient_group(ring, ring.delta)
    expected = {0: direct_sum(*[rank0] * 6), 1: direct_sum(q, q, q)}
    _compare_groups(report, "Tor^Br_2(Br_3, t)", f"{ring}", expected, res.groups, (0, 1))
    return report


# --- induced coefficients ---
def shapiro_check(n: int, m: int, D: int, ring: Ring) -> Report:
    """Tor^{RS_n}(t, RS_n (x)_{RS_m} t) against H_*(S_m), plus the comparison map."""
    if not 0 <= m <= n <= 4 or not 1 <= D <= 3:
        raise SemanticError(f"shapiro_check supports m <= n <= 4 and 1 <= D <= 3, got n={n}, m={m}, D={D}")
    report = Report(f"shapiro(n={n}, m={m}, {ring})")
    small = BarAlgebra("symmetric", m, ring)
    big = BarAlgebra("symmetric", n, ring)
    t_small = ModuleFactory.get_module("trivial", small)
    induced = ModuleFactory.get_module("induced", big, m)
    left = bar_tor(small, t_small, D)
    right = bar_tor(big, induced, D)
    _compare_groups(report, "H(S_m) = Tor^RS_n(t, induced)", f"n={n}, m={m}", left.groups, right.groups, range(D))
    if maps_supported(ring):
        sigma = TorMap(embed_map(small, big), unit_module_map(t_small, induced), D,
                       source_complex=left.complex, target_complex=right.complex)
        for i in range(D):
            _add_map_row(report, "unit map is an isomorphism", f"n={n}, m={m}, i={i}", True, sigma.is_isomorphism(i))
    else:
        report.notes.append(f"maps not checked over {ring.name}")
    _truncation_note(report, D)
    return report


def _ring_group(ring: Ring) -> HomologyGroup:
    return quotient_group(ring, 0)


def _inverse_pair(report: Report, n: int, D: int, ring: Ring, m: Optional[int], label: str) -> None:
    """iota_* and pi_* between RS_n and Br_n with trivial (m None) or induced coefficients."""
    sym = BarAlgebra("symmetric", n, ring)
    br = BarAlgebra("brauer", n, ring)
    if m is None:
        M_sym, M_br = ModuleFactory.get_module("trivial", sym), ModuleFactory.get_module("trivial", br)
    else:
        M_sym, M_br = ModuleFactory.get_module("induced", sym, m), ModuleFactory.get_module("induced", br, m)
    C_sym = build_bar_complex(sym, M_sym, D)
    C_br = build_bar_complex(br, M_br, D)
    iota_star = TorMap(iota_map(sym, br), label_module_map(M_sym, M_br), D,
                       source_complex=C_sym, target_complex=C_br)
    pi_star = TorMap(pi_map(br, sym), label_module_map(M_br, M_sym), D,
                     source_complex=C_br, target_complex=C_sym)
    pi_iota = iota_star.compose(pi_star)
    iota_pi = pi_star.compose(iota_star)
    _compare_groups(report, f"Tor^RS_n = Tor^Br_n ({label})", f"n={n}, {ring}",
                    iota_star.source_groups, iota_star.target_groups, range(D))
    for i in range(D):
        _add_map_row(report, "pi_* iota_* = id", f"n={n}, {ring}, i={i}", True, pi_iota.induces_identity(i))
        _add_map_row(report, "iota_* pi_* = id", f"n={n}, {ring}, i={i}", True, iota_pi.induces_identity(i))


def induced_tor_check(n: int, m: int, D: int, ring: Ring) -> Report:
    """Tor^{Br_n}(t, Br_n (x)_{Br_m} t) = H_*(S_m), with iota_* and pi_* mutually inverse."""
    if not 0 <= m <= n:
        raise SemanticError(f"need 0 <= m <= n, got m={m}, n={n}")
    if m == n and not ring.is_unit(ring.delta):
        raise SemanticError(f"m = n needs delta invertible; delta={ring.delta} in {ring.name}")
    report = Report(f"induced(n={n}, m={m}, {ring})")
    br = BarAlgebra("brauer", n, ring)
    lhs = bar_tor(br, ModuleFactory.get_module("induced", br, m), D)
    sym_m = BarAlgebra("symmetric", m, ring)
    rhs = bar_tor(sym_m, ModuleFactory.get_module("trivial", sym_m), D)
    _compare_groups(report, "Tor^Br_n(t, induced) = H(S_m)", f"n={n}, m={m}", rhs.groups, lhs.groups, range(D))
    report.add("Tor_0 = R", f"n={n}, m={m}", str(_ring_group(ring)), str(lhs.groups[0]), lhs.groups[0] == _ring_group(ring))
    if maps_supported(ring):
        _inverse_pair(report, n, D, ring, m, f"induced from {m}")
    else:
        report.notes.append(f"maps not checked over {ring.name}")
    _truncation_note(report, D)
    return report


def inverse_iso_check(n: int, D: int, ring: Ring) -> Report:
    """iota_* and pi_* are inverse isomorphisms Tor^{RS_n}(t,t) <-> Tor^{Br_n}(t,t) for delta a unit."""
    if not ring.is_unit(ring.delta):
        raise SemanticError(f"delta must be invertible; delta={ring.delta} in {ring.name}")
    report = Report(f"inverse_iso(n={n}, {ring})")
    if maps_supported(ring):
        _inverse_pair(report, n, D, ring, None, "trivial")
    else:
        br = _tor("brauer", n, ring, D, "trivial")
        sym = _tor("symmetric", n, ring, D, "trivial")
        _compare_groups(report, "Tor^RS_n = Tor^Br_n (trivial)", f"n={n}, {ring}", sym.groups, br.groups, range(D))
        report.notes.append(f"maps not checked over {ring.name}")
    _truncation_note(report, D)
    return report


def _trivial_map(source: BarAlgebra, target: BarAlgebra, f_factory, D: int) -> TorMap:
    t_s = ModuleFactory.get_module("trivial", source)
    t_t = ModuleFactory.get_module("trivial", target)
    return TorMap(f_factory(source, target), label_module_map(t_s, t_t), D)


def _need_maps(ring: Ring, what: str) -> None:
    if not maps_supported(ring):
        raise SemanticError(f"{what} needs induced maps; not supported over {ring.name}")


def range_iso_check(n: int, i: int, ring: Ring, expect: Optional[bool] = None) -> Report:
    """iota_*: H_i(S_n) -> Tor_i^{Br_n}(t,t); an isomorphism for n >= 2i+1."""
    _need_maps(ring, "range_iso_check")
    report = Report(f"range_iso(n={n}, i={i}, {ring})")
    if expect is None and n >= 2 * i + 1:
        expect = True
    tm = _trivial_map(BarAlgebra("symmetric", n, ring), BarAlgebra("brauer", n, ring), iota_map, i + 1)
    report.add("groups", f"n={n}, i={i}", str(tm.source_groups[i]), str(tm.target_groups[i]),
               expect is not True or tm.source_groups[i] == tm.target_groups[i])
    _add_map_row(report, "iota_* surjective", f"n={n}, i={i}", expect, tm.is_surjective(i))
    _add_map_row(report, "iota_* isomorphism", f"n={n}, i={i}", expect, tm.is_isomorphism(i))
    return report


def surjection_check(n: int, i: int, ring: Ring) -> Report:
    """RS_{n-1} -> Br_n induces a surjection H_i(S_{n-1}) -> Tor_i^{Br_n}(t,t) for i <= (n-1)/2."""
    _need_maps(ring, "surjection_check")
    if n < 1:
        raise SemanticError(f"need n >= 1, got {n}")
    report = Report(f"surjection(n={n}, i={i}, {ring})")
    expect = True if 2 * i <= n - 1 else None
    tm = _trivial_map(BarAlgebra("symmetric", n - 1, ring), BarAlgebra("brauer", n, ring), embed_map, i + 1)
    report.add("groups", f"n={n}, i={i}", "recorded", f"{tm.source_groups[i]} -> {tm.target_groups[i]}", True)
    _add_map_row(report, "H_i(S_{n-1}) -> Tor_i^Br_n surjective", f"n={n}, i={i}", expect, tm.is_surjective(i))
    return report


def stability_check(n: int, i: int, ring: Ring) -> Report:
    """
    Br_{n-1} -> Br_n on Tor_i(t,t): onto for n >= 2i+1, bijective for
    n >= 2i+2. S_{n-1} -> S_n on H_i: bijective for n >= 2i+1.
    """
    _need_maps(ring, "stability_check")
    if n < 1:
        raise SemanticError(f"need n >= 1, got {n}")
    report = Report(f"stability(n={n}, i={i}, {ring})")
    br = _trivial_map(BarAlgebra("brauer", n - 1, ring), BarAlgebra("brauer", n, ring), embed_map, i + 1)
    onto = True if n >= 2 * i + 1 else None
    iso = True if n >= 2 * i + 2 else None
    _add_map_row(report, "Br_{n-1} -> Br_n surjective", f"n={n}, i={i}", onto, br.is_surjective(i))
    _add_map_row(report, "Br_{n-1} -> Br_n isomorphism", f"n={n}, i={i}", iso, br.is_isomorphism(i))
    sym = _trivial_map(BarAlgebra("symmetric", n - 1, ring), BarAlgebra("symmetric", n, ring), embed_map, i + 1)
    sym_iso = True if n >= 2 * i + 1 else None
    _add_map_row(report, "S_{n-1} -> S_n isomorphism", f"n={n}, i={i}", sym_iso, sym.is_isomorphism(i))
    return report


# --- vanishing statements ---
def quotient_vanishing_check(n: int, X: Iterable[int], D: int, ring: Ring) -> Report:
    """Tor_i^{Br_n}(t, Br_n / J_X) = 0 for 0 < i < D when |X| < n or delta is a unit."""
    X = sorted(set(X))
    if len(X) >= n and not ring.is_unit(ring.delta):
        raise SemanticError(f"|X| = n needs delta invertible; delta={ring.delta} in {ring.name}")
    report = Report(f"quotient_vanishing(n={n}, X={X}, {ring})")
    res = _tor("brauer", n, ring, D, "quotient", X)
    for i in range(1, D):
        H = res.groups[i]
        report.add("Tor_i(t, Br_n/J_X) = 0", f"n={n}, X={set(X) or '{}'}, {ring}, i={i}", "0", str(H), H.is_zero)
    _truncation_note(report, D)
    return report


def complex_vanishing_check(C: ChainComplex, through: int, instance: str, report: Optional[Report] = None) -> Report:
    """H_p(C) = 0 for lo <= p <= through."""
    report = report or Report(f"vanishing({C.name})")
    top = min(through, C.exact_through)
    if top < through:
        report.notes.append(f"{C.name}: truncated; checked through {top} instead of {through}")
    groups = complex_homology(C, upto=top) if top >= C.lo else {}
    for p in range(C.lo, top + 1):
        H = groups[p]
        report.add(f"H_p({C.name}) = 0", f"{instance}, p={p}", "0", str(H), H.is_zero)
    return report
