"""The built-in instance suite and the runners that aggregate its verdicts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .amalgam import (
    AmalgamRing,
    check_lemma23,
    check_prop21,
    make_amalgamation,
    make_duplication,
    max_spectrum_pattern,
    prop21_hypotheses,
    quotient_iso_check,
)
from .classify import classify
from .gaussian import (
    ORACLE_SEED,
    check_hierarchy,
    check_lemma24,
    gaussian_content_oracle,
    is_arithmetical,
    is_gaussian,
    is_pruefer_finite,
)
from .ideals import all_ideals, ideal_closure, principal, zero_ideal
from .plocal import (
    INFINITE,
    check_thm22_instance,
    example28_structural,
    iter_grid,
    sampled_prop21_exact,
)
from .rings import (
    FiniteRing,
    canonical_hom,
    make_hom,
    make_product,
    make_trivial_extension,
    make_zmod,
    module_via_hom,
)
from .verdict import FAIL, INFO, PASS, Verdict, verdict_of

HIERARCHY_MAX_ORDER = 256
ORACLE_MAX_ORDER = 64
LEMMA24_SAMPLES = 20


@dataclass(frozen=True)
class Instance:
    name: str
    amalgam: AmalgamRing


def _dup(n: int, gen: int) -> AmalgamRing:
    R = make_zmod(n)
    return make_duplication(R, principal(R, gen))


def _can(n: int, target: FiniteRing, J_gens) -> AmalgamRing:
    A = make_zmod(n)
    return make_amalgamation(A, target, canonical_hom(A, target), ideal_closure(target, J_gens))


def _z4_into_idealization() -> AmalgamRing:
    """Z/4 → Z/4 ⋉ Z/2, a ↦ (a, 0), J = 0 × Z/2."""
    A = make_zmod(4)
    E = make_zmod(2)
    B = make_trivial_extension(A, module_via_hom(canonical_hom(A, E)))
    f = make_hom(A, B, [a * 2 for a in range(4)], name="ι")
    return make_amalgamation(A, B, f, ideal_closure(B, [1]))


def _z4_diagonal() -> AmalgamRing:
    """Z/4 → Z/4 × Z/4 diagonally, J = 0 × Z/4 (none of the three hypotheses)."""
    A = make_zmod(4)
    B = make_product(A, A)
    f = make_hom(A, B, [a * 4 + a for a in range(4)], name="Δ")
    return make_amalgamation(A, B, f, ideal_closure(B, [1]))


def _z8_to_z4_times_z2(J_gens) -> AmalgamRing:
    return _can(8, make_product(make_zmod(4), make_zmod(2)), J_gens)


def example29_rings() -> tuple[AmalgamRing, dict[str, AmalgamRing]]:
    """B = Z/8, I = (2), A = B ⋈ I and A ⋈^f I for both projections f."""
    B = make_zmod(8)
    I = principal(B, 2)
    first = make_duplication(B, I)
    second = {
        name: make_amalgamation(first.ring, B, hom, I)
        for name, hom in (("p1", first.first_projection), ("p2", first.second_projection))
    }
    return first, second


def prop21_instances() -> list[Instance]:
    """Amalgamations with |A|·|J| ≤ 256.

    Grouped as: only (a); (c) holds; J = 0 (so (b) holds); none of the
    hypotheses (reported as info).
    """
    first, second = example29_rings()
    out = [
        Instance("Z/8 ⋈ (2)", first),
        Instance("Z/16 ⋈ (2)", _dup(16, 2)),
        Instance("Z/27 ⋈ (3)", _dup(27, 3)),
        Instance("Z/12 ⋈ (2)", _dup(12, 2)),
        Instance("(Z/8 ⋈ (2)) ⋈^p1 (2)", second["p1"]),
        Instance("Z/4 ⋈ (2)", _dup(4, 2)),
        Instance("Z/9 ⋈ (3)", _dup(9, 3)),
        Instance("Z/16 ⋈ (4)", _dup(16, 4)),
        Instance("Z/8 ⋈^can (2) in Z/4", _can(8, make_zmod(4), [2])),
        Instance("Z/4 ⋈^ι (0 × Z/2)", _z4_into_idealization()),
        Instance("Z/4 ⋈ (0)", _dup(4, 0)),
        Instance("Z/6 ⋈ (0)", _dup(6, 0)),
        Instance("Z/12 ⋈ (0)", _dup(12, 0)),
        Instance("Z/8 ⋈^can (0) in Z/4", _can(8, make_zmod(4), [0])),
        Instance("Z/4 ⋈^Δ (0 × Z/4)", _z4_diagonal()),
        Instance("Z/8 ⋈^can (0 × Z/2)", _z8_to_z4_times_z2([1])),
    ]
    return out


def lemma23_instances() -> list[Instance]:
    A = make_zmod(6)
    prod = make_product(make_zmod(2), make_zmod(2))
    return [
        Instance("Z/8 ⋈ (2)", _dup(8, 2)),
        Instance("Z/8 ⋈ (4)", _dup(8, 4)),
        Instance("Z/9 ⋈ (3)", _dup(9, 3)),
        Instance("Z/16 ⋈ (2)", _dup(16, 2)),
        Instance("Z/8 ⋈^can (0) in Z/4", _can(8, make_zmod(4), [0])),
        Instance("Z/4 ⋈^ι (0 × Z/2)", _z4_into_idealization()),
        Instance("Z/8 ⋈^can (0 × Z/2)", _z8_to_z4_times_z2([1])),
        Instance("Z/12 ⋈ (6)", _dup(12, 6)),
        Instance("Z/6 ⋈ (0)", make_duplication(A, zero_ideal(A))),
        Instance("(Z/2 × Z/2) ⋈ (0 × Z/2)", make_duplication(prod, ideal_closure(prod, [1]))),
        Instance("Z/4 ⋈^Δ (0 × Z/4)", _z4_diagonal()),
    ]


def amalgamation_corpus() -> list[Instance]:
    """Union of the two instance lists, first occurrence kept."""
    seen, out = set(), []
    for inst in prop21_instances() + lemma23_instances():
        if inst.amalgam.ring.digest in seen:
            continue
        seen.add(inst.amalgam.ring.digest)
        out.append(inst)
    return out


def _primes(limit: int) -> list[int]:
    return [p for p in range(2, limit + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]


def hierarchy_rings(max_order: int = HIERARCHY_MAX_ORDER) -> list[FiniteRing]:
    """Z/n (n ≤ 64), their duplications of order ≤ 256, products of two
    prime fields and trivial extensions Z/n ⋉ Z/m (m | n) of order ≤ 64."""
    out: list[FiniteRing] = []
    for n in range(2, 65):
        if n <= max_order:
            out.append(make_zmod(n))
    for n in range(2, 65):
        R = make_zmod(n)
        for I in all_ideals(R):
            if not I.is_unit_ideal() and n * len(I) <= max_order:
                out.append(make_duplication(R, I).ring)
    ps = _primes(16)
    for i, p in enumerate(ps):
        for q in ps[i:]:
            if p * q <= max_order:
                out.append(make_product(make_zmod(p), make_zmod(q)))
    for n in range(2, 33):
        for m in range(2, n + 1):
            if n % m == 0 and n * m <= min(64, max_order):
                A = make_zmod(n)
                out.append(make_trivial_extension(A, module_via_hom(canonical_hom(A, make_zmod(m)))))
    return out


def lemma24_coefficients(am: AmalgamRing, count: int = LEMMA24_SAMPLES, seed: int = ORACLE_SEED) -> list[list[int]]:
    rng = np.random.default_rng([seed, am.base.order, am.ring.order])
    return rng.integers(0, am.base.order, (count, 3)).tolist()


# ---------------------------------------------------------------------------
# per-criterion runners; each returns one aggregated verdict


def _aggregate(check_id: str, results: list[tuple[str, Verdict]], extra: dict | None = None) -> Verdict:
    failed = [(name, v) for name, v in results if v.verdict == FAIL]
    witnesses = []
    for name, v in failed:
        witnesses += [f"{name}: {w}" for w in (v.witnesses or ["failed"])][:3]
    details = {
        "instances": len(results),
        "passed": sum(v.verdict == PASS for _, v in results),
        "info": sum(v.verdict == INFO for _, v in results),
        "failed": len(failed),
    }
    details.update(extra or {})
    return Verdict(check_id, verdict_of(not failed), details, witnesses)


def run_prop21(seed: int = 0, cache=None) -> Verdict:
    results, groups = [], {"only_a": 0, "c": 0, "J_zero": 0, "none": 0}
    for inst in prop21_instances():
        h = prop21_hypotheses(inst.amalgam)
        groups["only_a"] += h["a"] and not h["b"] and not h["c"]
        groups["c"] += h["c"]
        groups["J_zero"] += inst.amalgam.J.is_zero()
        groups["none"] += not any(h.values())
        results.append((inst.name, check_prop21(inst.amalgam)))
    return _aggregate("prop21", results, {"groups": groups})


def run_prop21_exact(seed: int = 0, cache=None) -> Verdict:
    results = []
    for n in (4, 8, 12):
        for g in sorted({d for d in range(1, n + 1) if n % d == 0}):
            if g == n:
                continue  # J = (0): excluded, see sampled_prop21_exact
            results.append((f"Z ⋈ ({g}) over Z/{n}", sampled_prop21_exact(n, g, 50)))
    return _aggregate("prop21-exact", results)


def run_lemma23(seed: int = 0, cache=None) -> Verdict:
    results, local = [], 0
    for inst in lemma23_instances():
        v = check_lemma23(inst.amalgam, cache=cache)
        m = max_spectrum_pattern(inst.amalgam, cache=cache)
        local += bool(v.details["amalgam_local"])
        merged = Verdict("lemma23", verdict_of(v.ok and m.ok), v.details | {"maxspec": m.details}, v.witnesses + m.witnesses)
        results.append((inst.name, merged))
    return _aggregate("lemma23", results, {"local": local, "non_local": len(results) - local})


def run_example29(seed: int = 0, cache=None) -> Verdict:
    first, second = example29_rings()
    A = first.ring
    ga = is_gaussian(A, cache=cache)
    pair = {A.fmt(x) for x in ga.witness} if ga.witness else set()
    claims = {
        "A_order": A.order == 32,
        "A_local": classify(A, cache=cache).is_local,
        "A_pruefer": is_pruefer_finite(A, cache=cache).is_pruefer,
        "A_not_gaussian": not ga.is_gaussian,
        "A_witness_pair": pair == {"(2,0)", "(0,2)"},
        "A_not_arithmetical": not is_arithmetical(A, cache=cache).is_arithmetical,
    }
    verdicts = {}
    for name, am in second.items():
        R = am.ring
        verdicts[name] = (R.order, is_pruefer_finite(R, cache=cache).is_pruefer, is_gaussian(R, cache=cache).is_gaussian)
        claims[f"{name}_order_128"] = R.order == 128
        claims[f"{name}_pruefer"] = verdicts[name][1]
        claims[f"{name}_not_gaussian"] = not verdicts[name][2]
    claims["projections_agree"] = verdicts["p1"] == verdicts["p2"]
    witnesses = [f"gaussian witness {A.trace(x)}" for x in (ga.witness or ())]
    witnesses += [f"claim {k} failed" for k, ok in claims.items() if not ok]
    return Verdict("example29", verdict_of(all(claims.values())), {"claims": claims}, witnesses)


def run_thm22(seed: int = 0, cache=None) -> Verdict:
    results = [(f"p={p},k={k}", check_thm22_instance(p, k, 20)) for p, k in iter_grid()]
    ok_direction = all(not v.details["condition"] and v.details["witness_found"] for _, v in results)
    sentinel = check_thm22_instance(2, INFINITE, 20)
    results.append(("p=2,k=inf", sentinel))
    ok_sentinel = sentinel.details["condition"] and not sentinel.details["witness_found"]
    agg = _aggregate("thm22", results, {"grid_negative": ok_direction, "sentinel": ok_sentinel})
    if not (ok_direction and ok_sentinel):
        agg.verdict = FAIL
        agg.witnesses.append("grid or sentinel outcome differs from the expected direction")
    return agg


def run_hierarchy(seed: int = 0, cache=None) -> Verdict:
    results = []
    for R in hierarchy_rings():
        rep = check_hierarchy(R, cache=cache)
        pr = is_pruefer_finite(R, cache=cache)
        ok = rep.is_pruefer and pr.all_regular_equal_ring
        w = [] if ok else [f"{R.label}: Prüfer {rep.is_pruefer}, regular ideals all R {pr.all_regular_equal_ring}"]
        results.append((R.label, Verdict("hierarchy", verdict_of(ok), {"triple": rep.triple()}, w)))
    return _aggregate("hierarchy", results)


def run_oracle(seed: int = 0, cache=None) -> Verdict:
    results = []
    for R in hierarchy_rings(ORACLE_MAX_ORDER):
        decided = is_gaussian(R, cache=cache).is_gaussian
        hit = gaussian_content_oracle(R, 2, budget=R.order**6, seed=seed, cache=cache)
        ok = hit is None or not decided
        w = [] if ok else [f"{R.label}: content violation f={hit.f} g={hit.g} but decider says Gaussian"]
        results.append((R.label, Verdict("oracle", verdict_of(ok), {"gaussian": decided, "violation": hit is not None}, w)))
    first, _ = example29_rings()
    z8 = is_gaussian(first.ring, cache=cache).is_gaussian
    extra = {
        "non_gaussian": sum(not v.details["gaussian"] for _, v in results),
        "violations_found": sum(v.details["violation"] for _, v in results),
        "Z/8 ⋈ (2) gaussian": z8,
    }
    agg = _aggregate("oracle", results, extra)
    if z8:
        agg.verdict = FAIL
        agg.witnesses.append("decider reports Z/8 ⋈ (2) Gaussian")
    return agg


def run_lemma24(seed: int = 0, cache=None) -> Verdict:
    results = []
    for inst in amalgamation_corpus():
        for coeffs in lemma24_coefficients(inst.amalgam, seed=seed):
            results.append((f"{inst.name} {coeffs}", check_lemma24(inst.amalgam, coeffs, seed=seed, cache=cache)))
    return _aggregate("lemma24", results)


def run_quotient_iso(seed: int = 0, cache=None) -> Verdict:
    results = [
        (inst.name, quotient_iso_check(inst.amalgam))
        for inst in amalgamation_corpus()
        if inst.amalgam.ring.order <= 256
    ]
    return _aggregate("quotient-iso", results)


def run_example28(seed: int = 0, cache=None) -> Verdict:
    return _aggregate("example28", [(f"p={p}", example28_structural(p)) for p in (2, 3)])


SUITE: dict[str, Callable[..., Verdict]] = {
    "prop21": run_prop21,
    "prop21-exact": run_prop21_exact,
    "lemma23": run_lemma23,
    "example29": run_example29,
    "thm22": run_thm22,
    "hierarchy": run_hierarchy,
    "oracle": run_oracle,
    "lemma24": run_lemma24,
    "quotient-iso": run_quotient_iso,
    "example28": run_example28,
}


def run_corpus(seed: int = 0, cache=None, only: list[str] | None = None) -> list[Verdict]:
    names = list(SUITE) if not only else [n for n in SUITE if n in only]
    return [SUITE[n](seed=seed, cache=cache) for n in names]
