"""Sampled property suites behind the ``verify`` command.

Each suite draws seeded samples from an algebra (or a tower) and counts
violations of one family of laws.  A failing sample is recorded as a witness
string; suites are deterministic functions of (seed, samples).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .chains import Algebra, adjoin_bounds, z_chain, q_chain
from .elements import Elem, format_elem
from .errors import NotDense, UndefinedCover
from .plp import build_plp
from .sampling import sample_distinct_pair, sample_elem, sample_group_elem
from .towers import (
    MODE_I_II,
    MODE_III_IV,
    RepresentationSpec,
    StandardTarget,
    between,
    build_representation,
    build_standard_target,
    fuse_type2_iso,
    make_zj,
    zjk_iso,
    zjk_iso_inverse,
)


@dataclass
class PropertyCheck:
    name: str
    samples: int
    failures: int
    witnesses: list[str] = field(default_factory=list)
    info: str = ""

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        extra = f" [{self.info}]" if self.info else ""
        return f"{status}  {self.name}: {self.failures}/{self.samples} violations{extra}"


@dataclass
class SuiteReport:
    suite: str
    subject: str
    checks: list[PropertyCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _rng(seed: int, *parts) -> random.Random:
    return random.Random(f"{seed}:" + ":".join(str(p) for p in parts))


class _Recorder:
    def __init__(self, name: str):
        self.check = PropertyCheck(name, 0, 0)

    def tally(self, ok: bool, witness: str = "") -> None:
        self.check.samples += 1
        if not ok:
            self.check.failures += 1
            if len(self.check.witnesses) < 5:
                self.check.witnesses.append(witness)


def adjointness_suite(algebra: Algebra, rng: random.Random, samples: int) -> list[PropertyCheck]:
    rec = _Recorder("adjointness: a*v <= b iff v <= a->b")
    unit = algebra.unit()
    for _ in range(samples):
        a, b, v = (sample_elem(algebra, rng) for _ in range(3))
        lhs = algebra._compare(algebra._mult(a, v), b) <= 0
        rhs = algebra._compare(v, algebra._neg(algebra._mult(a, algebra._neg(b)))) <= 0
        rec.tally(lhs == rhs, f"a={format_elem(a)} b={format_elem(b)} v={format_elem(v)}")
    res = _Recorder("residuum is the maximum: a*(a->b) <= b and t <= a->a")
    for _ in range(samples // 10 + 1):
        a, b = sample_elem(algebra, rng), sample_elem(algebra, rng)
        r = algebra._neg(algebra._mult(a, algebra._neg(b)))
        ok = algebra._compare(algebra._mult(a, r), b) <= 0
        ok = ok and algebra._compare(unit, algebra._neg(algebra._mult(a, algebra._neg(a)))) <= 0
        res.tally(ok, f"a={format_elem(a)} b={format_elem(b)}")
    return [rec.check, res.check]


def involution_suite(algebra: Algebra, rng: random.Random, samples: int) -> list[PropertyCheck]:
    dneg = _Recorder("involution: neg(neg a) = a")
    rev = _Recorder("negation reverses the order")
    for _ in range(samples):
        a, b = sample_elem(algebra, rng), sample_elem(algebra, rng)
        dneg.tally(algebra._neg(algebra._neg(a)) == a, format_elem(a))
        rev.tally((algebra._compare(a, b) <= 0)
                  == (algebra._compare(algebra._neg(b), algebra._neg(a)) <= 0),
                  f"a={format_elem(a)} b={format_elem(b)}")
    odd = _Recorder("oddness: neg t = t")
    t = algebra.unit()
    odd.tally(algebra._neg(t) == t, format_elem(t))
    return [dneg.check, rev.check, odd.check]


def monoid_suite(algebra: Algebra, rng: random.Random, samples: int) -> list[PropertyCheck]:
    laws = _Recorder("commutative monoid laws")
    mono = _Recorder("multiplication is monotone")
    unit = algebra.unit()
    for _ in range(samples):
        a, b, c = (sample_elem(algebra, rng) for _ in range(3))
        ok = algebra._mult(a, b) == algebra._mult(b, a)
        ok = ok and algebra._mult(a, algebra._mult(b, c)) == algebra._mult(algebra._mult(a, b), c)
        ok = ok and algebra._mult(a, unit) == a
        laws.tally(ok, f"a={format_elem(a)} b={format_elem(b)} c={format_elem(c)}")
        if algebra._compare(a, b) <= 0:
            mono.tally(algebra._compare(algebra._mult(a, c), algebra._mult(b, c)) <= 0,
                       f"a={format_elem(a)} b={format_elem(b)} c={format_elem(c)}")
    return [laws.check, mono.check]


def random_term(algebra: Algebra, rng: random.Random, leaves: list[Elem], depth: int):
    """Value of a random term over *, -> and neg; returns (value, leaves used)."""
    if depth == 0 or rng.random() < 0.3:
        leaf = rng.choice(leaves)
        return leaf, [leaf]
    op = rng.randrange(3)
    if op == 0:
        v, used = random_term(algebra, rng, leaves, depth - 1)
        return algebra._neg(v), used
    l, lu = random_term(algebra, rng, leaves, depth - 1)
    r, ru = random_term(algebra, rng, leaves, depth - 1)
    if op == 1:
        return algebra._mult(l, r), lu + ru
    return algebra._neg(algebra._mult(l, algebra._neg(r))), lu + ru


def tau_suite(algebra: Algebra, rng: random.Random, samples: int) -> list[PropertyCheck]:
    unit = algebra.unit()
    idem = _Recorder("tau values are positive idempotents and tau-fixed")
    seen = set()
    for _ in range(samples):
        a = sample_elem(algebra, rng)
        ta = algebra._neg(algebra._mult(a, algebra._neg(a)))
        seen.add(ta)
        ok = algebra._mult(ta, ta) == ta
        ok = ok and algebra._compare(unit, ta) <= 0
        ok = ok and algebra._neg(algebra._mult(ta, algebra._neg(ta))) == ta
        idem.tally(ok, format_elem(a))
    count = PropertyCheck("distinct tau values match the structural count",
                          samples, 0 if len(seen) == algebra.idempotent_count else 1,
                          [], f"observed {len(seen)}, expected {algebra.idempotent_count}")
    terms = _Recorder("tau of a term equals the largest leaf tau")
    pool = [sample_elem(algebra, rng) for _ in range(8)]
    for _ in range(max(samples // 10, 1)):
        value, used = random_term(algebra, rng, pool, depth=4)
        tv = algebra._neg(algebra._mult(value, algebra._neg(value)))
        taus = [algebra._neg(algebra._mult(u, algebra._neg(u))) for u in used]
        biggest = taus[0]
        for t in taus[1:]:
            if algebra._compare(biggest, t) < 0:
                biggest = t
        terms.tally(tv == biggest, format_elem(value))
    return [idem.check, count, terms.check]


def covers_suite(algebra: Algebra, rng: random.Random, samples: int) -> list[PropertyCheck]:
    gdesc = algebra.group_part_descriptor
    if not algebra.grpart_discretely_embedded:
        rec = _Recorder("covers are refused without a discrete embedding")
        for _ in range(min(samples, 50)):
            a = sample_group_elem(algebra, gdesc, rng)
            try:
                algebra.cover_up(a)
                rec.tally(False, format_elem(a))
            except UndefinedCover:
                rec.tally(True)
        return [rec.check]
    rec = _Recorder("covers: up/down inverse, inside the group part, adjacent")
    for _ in range(samples):
        a = sample_group_elem(algebra, gdesc, rng)
        up = algebra.cover_up(a)
        ok = algebra.cover_down(up) == a
        ok = ok and algebra._compare(a, up) < 0
        ok = ok and algebra._is_group_elem(up)
        probe = sample_elem(algebra, rng)
        ok = ok and not (algebra._compare(a, probe) < 0 and algebra._compare(probe, up) < 0)
        rec.tally(ok, format_elem(a))
    return [rec.check]


def group_part_suite(algebra: Algebra, rng: random.Random, samples: int) -> list[PropertyCheck]:
    gdesc = algebra.group_part_descriptor
    closure = _Recorder("group part closed under * and neg")
    agree = _Recorder("x * neg x = t agrees with the structural group part")
    for _ in range(samples):
        g = sample_group_elem(algebra, gdesc, rng)
        h = sample_group_elem(algebra, gdesc, rng)
        ok = algebra._is_group_elem(algebra._mult(g, h))
        ok = ok and algebra._is_group_elem(algebra._neg(g))
        closure.tally(ok, f"g={format_elem(g)} h={format_elem(h)}")
        a = sample_elem(algebra, rng)
        eq = algebra._mult(a, algebra._neg(a)) == algebra.unit()
        agree.tally(eq == algebra._is_group_elem(a), format_elem(a))
    return [closure.check, agree.check]


def density_suite(algebra: Algebra, rng: random.Random, samples: int) -> list[PropertyCheck]:
    if not algebra.is_dense:
        rec = _Recorder("between is refused on a non-dense order")
        pair = sample_distinct_pair(algebra, rng)
        if pair is None:
            rec.tally(True)
        else:
            try:
                between(algebra, *pair)
                rec.tally(False, f"{format_elem(pair[0])} .. {format_elem(pair[1])}")
            except NotDense:
                rec.tally(True)
        return [rec.check]
    rec = _Recorder("between returns a strict intermediate")
    for _ in range(samples):
        pair = sample_distinct_pair(algebra, rng)
        if pair is None:
            continue
        x, y = pair
        z = between(algebra, x, y)
        rec.tally(algebra._compare(x, z) < 0 and algebra._compare(z, y) < 0,
                  f"{format_elem(x)} .. {format_elem(y)} -> {format_elem(z)}")
    return [rec.check]


# ---------------------------------------------------------------------------
# Tower-level suites


def inclusion_suite(spec: RepresentationSpec, rng: random.Random,
                    samples: int) -> list[PropertyCheck]:
    """Stage-wise: the III-IV tower sits inside the I-II tower, operations agree."""
    narrow = build_representation(spec, MODE_III_IV)
    wide = build_representation(spec, MODE_I_II)
    checks = []
    for idx, (sub, sup) in enumerate(zip(narrow.stages, wide.stages), start=1):
        rec = _Recorder(f"stage {idx}: carrier inclusion and operation agreement")
        for _ in range(samples):
            a = sample_elem(sub, rng)
            b = sample_elem(sub, rng)
            ok = sup.contains(a) and sup.contains(b)
            ok = ok and sub._mult(a, b) == sup._mult(a, b)
            ok = ok and sub._neg(a) == sup._neg(a)
            ok = ok and sub._compare(a, b) == sup._compare(a, b)
            rec.tally(ok, f"a={format_elem(a)} b={format_elem(b)}")
        checks.append(rec.check)
    return checks


def embedding_suite(target: StandardTarget, rng: random.Random,
                    samples: int) -> list[PropertyCheck]:
    """The stage maps into the dense companion tower are order embeddings
    preserving *, neg and the unit."""
    checks = []
    for idx, (src, dst) in enumerate(zip(target.source.stages, target.stages), start=1):
        rec = _Recorder(f"stage {idx}: embedding preserves *, neg, order, unit")
        rec.tally(target.embed(idx, src.unit()) == dst.unit(), "unit")
        for _ in range(samples):
            a = sample_elem(src, rng)
            b = sample_elem(src, rng)
            fa, fb = target.embed(idx, a), target.embed(idx, b)
            ok = target.embed(idx, src._mult(a, b)) == dst._mult(fa, fb)
            ok = ok and target.embed(idx, src._neg(a)) == dst._neg(fa)
            ok = ok and src._compare(a, b) == dst._compare(fa, fb)
            rec.tally(ok, f"a={format_elem(a)} b={format_elem(b)}")
        checks.append(rec.check)
    return checks


def iso_suite(rng: random.Random, samples: int,
              zjk_pairs=((1, 1), (1, 2), (2, 1))) -> list[PropertyCheck]:
    """Sampled isomorphism checks: tower flattening and type II re-association."""
    checks = []
    for j, k in zjk_pairs:
        rec = _Recorder(f"PLPII(Z_{j}, Z_{k}) = Z_{j + k}: order, *, neg, bijection")
        product = build_plp("II", make_zj(j), second=make_zj(k))
        flat = make_zj(j + k)
        for _ in range(samples):
            a = sample_elem(product, rng)
            b = sample_elem(product, rng)
            fa, fb = zjk_iso(j, k, a), zjk_iso(j, k, b)
            ok = flat.contains(fa) and zjk_iso_inverse(j, k, fa) == a
            ok = ok and product._compare(a, b) == flat._compare(fa, fb)
            ok = ok and zjk_iso(j, k, product._mult(a, b)) == flat._mult(fa, fb)
            ok = ok and zjk_iso(j, k, product._neg(a)) == flat._neg(fa)
            ok = ok and (a == b) == (fa == fb)
            rec.tally(ok, f"a={format_elem(a)} b={format_elem(b)}")
        checks.append(rec.check)
    for triple in ((z_chain(), z_chain(), z_chain()),
                   (z_chain(), z_chain(), q_chain())):
        names = ", ".join(str(x) for x in triple)
        rec = _Recorder(f"type II re-association over ({names})")
        fusion = fuse_type2_iso(*triple)
        rec.tally(fusion.to_right(fusion.left.unit()) == fusion.right.unit(), "unit")
        for _ in range(samples):
            a = sample_elem(fusion.left, rng)
            b = sample_elem(fusion.left, rng)
            fa, fb = fusion.to_right(a), fusion.to_right(b)
            ok = fusion.to_left(fa) == a
            ok = ok and fusion.left._compare(a, b) == fusion.right._compare(fa, fb)
            ok = ok and fusion.to_right(fusion.left._mult(a, b)) == fusion.right._mult(fa, fb)
            ok = ok and fusion.to_right(fusion.left._neg(a)) == fusion.right._neg(fa)
            rec.tally(ok, f"a={format_elem(a)} b={format_elem(b)}")
        checks.append(rec.check)
    return checks


# ---------------------------------------------------------------------------
# Suite registry

PER_ALGEBRA_SUITES = {
    "adjoint": adjointness_suite,
    "involution": involution_suite,
    "tau": tau_suite,
    "density": density_suite,
}

STRUCTURE_SUITES = {
    "structure": monoid_suite,
    "covers": covers_suite,
    "group-part": group_part_suite,
}

SUITE_NAMES = ("all", "adjoint", "involution", "tau", "iso", "density")


def run_verification(spec: RepresentationSpec, suite: str, samples: int,
                     seed: int, standard: bool = False) -> list[SuiteReport]:
    """Run one suite (or all of them) over the algebras a spec gives rise to."""
    if suite not in SUITE_NAMES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    if standard:
        target = build_standard_target(spec)
        stages = list(target.stages)
    else:
        target = None
        stages = list(build_representation(spec, MODE_I_II).stages)
    subjects: list[tuple[str, Algebra]] = [
        (f"stage {i}: {alg}", alg) for i, alg in enumerate(stages, start=1)]
    subjects.append((f"bounded top: {adjoin_bounds(stages[-1])}", adjoin_bounds(stages[-1])))

    reports: list[SuiteReport] = []
    wanted = PER_ALGEBRA_SUITES if suite == "all" else {
        k: v for k, v in PER_ALGEBRA_SUITES.items() if k == suite}
    for name, fn in wanted.items():
        for subject, algebra in subjects:
            checks = fn(algebra, _rng(seed, name, subject), samples)
            reports.append(SuiteReport(name, subject, checks))
    if suite == "all":
        for name, fn in STRUCTURE_SUITES.items():
            for subject, algebra in subjects:
                checks = fn(algebra, _rng(seed, name, subject), max(samples // 4, 1))
                reports.append(SuiteReport(name, subject, checks))
        if any(d is not None for d in spec.vdescs):
            checks = inclusion_suite(spec, _rng(seed, "inclusion"), max(samples // 4, 1))
            reports.append(SuiteReport("inclusion", "III-IV stages inside I-II stages", checks))
    if suite in ("all", "iso"):
        reports.append(SuiteReport("iso", "canonical tower isomorphisms",
                                   iso_suite(_rng(seed, "iso"), max(samples // 4, 1))))
        if target is None:
            target = build_standard_target(spec)
        checks = embedding_suite(target, _rng(seed, "embedding"), max(samples // 4, 1))
        reports.append(SuiteReport("iso", "embedding into the dense companion", checks))
    return reports
