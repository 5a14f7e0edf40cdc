"""Randomized generators and brute-force law checkers.

Every law stated for the value semiring and for the integral is checked
here against independent computations: the integral laws run on atom
spaces small enough (at most 6 atoms) that subsets, disjoint families
and full partitions can be enumerated exhaustively, so the checkers
never trust the code paths they are checking.  All comparisons are
exact; a nonzero tolerance anywhere is a bug.

The ``*_fn`` keyword arguments exist solely to inject broken
implementations (mutants) in tests; production callers leave them
unset.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .errors import UndefinedSumError
from .hvalue import (
    INF,
    ZERO,
    ExtRat,
    HValue,
    SeqDescriptor,
    add,
    mul,
    scalar_mul,
    sum_described,
    sum_finite,
)
from .space import AtomSet, AtomSpace, scaled_embedding
from .integral import (
    SimpleFn,
    integrate,
    integrate_ordinary,
    integrate_simple,
    isimple_sup_gap,
    pointwise_add_fn,
)

# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class LawReport:
    law: str
    trials: int
    seed_lo: int
    seed_hi: int
    violations: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, law: str, trial_seed: int, **inputs):
        self.violations.append(
            {"law": law, "seed": trial_seed, **{k: str(v) for k, v in inputs.items()}}
        )

    def to_json(self):
        return {
            "law": self.law,
            "trials": self.trials,
            "seed_range": [self.seed_lo, self.seed_hi],
            "violations": self.violations,
        }


def _trial_seed(seed: int, i: int) -> int:
    return (seed << 24) + i


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def _random_rat(rng: random.Random, signed: bool) -> Fraction:
    num = rng.randint(0, 100)
    if signed and rng.random() < 0.5:
        num = -num
    return Fraction(num, rng.randint(1, 100))


def random_hvalue(seed, profile: str = "nonneg") -> HValue:
    """Deterministic random value; numerators and denominators stay
    below 100, infinities appear with probability 1/8 when allowed."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    d = abs(_random_rat(rng, signed=False))
    if profile == "nonneg":
        return HValue(d, ExtRat(_random_rat(rng, signed=False)))
    if profile == "signed":
        if rng.random() < Fraction(1, 8):
            return HValue(d, INF if rng.random() < 0.5 else -INF)
        return HValue(d, ExtRat(_random_rat(rng, signed=True)))
    if profile == "with-infinities":
        if rng.random() < Fraction(1, 8):
            return HValue(d, INF)
        return HValue(d, ExtRat(_random_rat(rng, signed=False)))
    raise ValueError(f"unknown profile {profile!r}")


ATOM_NAMES = ("a", "b", "c", "d", "e", "f")


def random_atom_space(seed, n: int = 4) -> AtomSpace:
    """n atoms (n <= 6) with nonnegative weights, infinite mass allowed."""
    if not 1 <= n <= 6:
        raise ValueError("atom spaces are capped at 6 atoms")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    weights = {}
    for name in ATOM_NAMES[:n]:
        if rng.random() < 0.15:
            weights[name] = ZERO
        else:
            weights[name] = random_hvalue(rng, "with-infinities")
    return AtomSpace.of(weights)


def random_simple_fn(rng: random.Random, space: AtomSpace, i_simple: bool = False) -> SimpleFn:
    pieces = []
    for a in space.atoms:
        roll = rng.random()
        if roll < 0.25:
            continue
        profile = "with-infinities" if i_simple else "nonneg"
        v = random_hvalue(rng, profile)
        if not v.is_zero:
            pieces.append((v, AtomSet.of(a)))
    return SimpleFn.of(pieces, i_simple=i_simple)


# ---------------------------------------------------------------------------
# algebra laws
# ---------------------------------------------------------------------------

_UNDEF = object()


def _try(fn, *args):
    try:
        return fn(*args)
    except UndefinedSumError:
        return _UNDEF


def check_algebra_laws(
    trials: int,
    seed: int = 0,
    add_fn: Callable[[HValue, HValue], HValue] = add,
    mul_fn: Callable[[HValue, HValue], HValue] = mul,
) -> LawReport:
    """Commutativity, associativity, zero product, distributivity on
    nonnegative values, series distributivity, order compatibility,
    the real-number embedding, and the fixed distributivity
    counterexample."""
    report = LawReport(
        "algebra", trials, _trial_seed(seed, 0), _trial_seed(seed, max(trials - 1, 0))
    )
    for i in range(trials):
        ts = _trial_seed(seed, i)
        rng = random.Random(ts)
        a = random_hvalue(rng, "signed")
        b = random_hvalue(rng, "signed")
        c = random_hvalue(rng, "signed")

        if _try(add_fn, a, b) != _try(add_fn, b, a):
            report.record("add-commutative", ts, a=a, b=b)
        if mul_fn(a, b) != mul_fn(b, a):
            report.record("mul-commutative", ts, a=a, b=b)

        lhs = _assoc(add_fn, a, b, c, left=True)
        rhs = _assoc(add_fn, a, b, c, left=False)
        # partial addition: a grouping that hits (d,+inf)+(d,-inf) is
        # undefined while the other may collapse by dominance first, so
        # only compare when both groupings are defined
        if lhs is not _UNDEF and rhs is not _UNDEF and lhs != rhs:
            report.record("add-associative", ts, a=a, b=b, c=c)
        if mul_fn(mul_fn(a, b), c) != mul_fn(a, mul_fn(b, c)):
            report.record("mul-associative", ts, a=a, b=b, c=c)

        if mul_fn(a, ZERO) != ZERO or mul_fn(ZERO, a) != ZERO:
            report.record("zero-product", ts, a=a)

        an = random_hvalue(rng, "with-infinities")
        bn = random_hvalue(rng, "with-infinities")
        cn = random_hvalue(rng, "with-infinities")
        if mul_fn(an, add_fn(bn, cn)) != add_fn(mul_fn(an, bn), mul_fn(an, cn)):
            report.record("distributivity", ts, a=an, b=bn, c=cn)

        prefix = [random_hvalue(rng, "nonneg") for _ in range(rng.randint(0, 4))]
        tail = random_hvalue(rng, "nonneg") if rng.random() < 0.5 else ZERO
        s = SeqDescriptor.of(prefix, tail)
        if mul_fn(an, sum_described(s)) != sum_described(s.map(lambda t: mul_fn(an, t))):
            report.record("series-distributivity", ts, a=an, series=s)

        folded = ZERO
        for t in prefix:
            folded = add_fn(folded, t)
        if folded != sum_described(SeqDescriptor.of(prefix)):
            report.record("series-finite-consistency", ts, series=s)

        lo, hi = sorted([an, bn])
        if not mul_fn(lo, cn) <= mul_fn(hi, cn):
            report.record("order-compatibility", ts, lo=lo, hi=hi, c=cn)

        x = _random_rat(rng, signed=False)
        y = _random_rat(rng, signed=False)
        ex, ey = HValue.of(0, x), HValue.of(0, y)
        if add_fn(ex, ey) != HValue.of(0, x + y) or mul_fn(ex, ey) != HValue.of(0, x * y):
            report.record("embedding", ts, x=x, y=y)
        if x > 0 and not an.is_zero and scalar_mul(x, an) != mul_fn(ex, an):
            report.record("embedding-scalar", ts, x=x, a=an)

    if trials > 0:
        one = HValue.of(1, 1)
        pos = HValue.of(0, 5)
        neg = HValue.of(0, -5)
        lhs = mul_fn(one, add_fn(pos, neg))
        rhs = add_fn(mul_fn(one, pos), mul_fn(one, neg))
        if lhs != ZERO or rhs != HValue.of(1, 0):
            report.record("counterexample-instance", _trial_seed(seed, 0), lhs=lhs, rhs=rhs)
    return report


def _assoc(add_fn, a, b, c, left: bool):
    try:
        if left:
            return add_fn(add_fn(a, b), c)
        return add_fn(a, add_fn(b, c))
    except UndefinedSumError:
        return _UNDEF


# ---------------------------------------------------------------------------
# exhaustive set machinery
# ---------------------------------------------------------------------------


def all_partitions(items: Tuple[str, ...]):
    """Every set partition (Bell(n) many) of the items."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [part[k] + [first]] + part[k + 1 :]
        yield part + [[first]]


def brute_force_integral(space: AtomSpace, f: SimpleFn) -> HValue:
    """Independent evaluation of the integral from its supremum
    characterization: dimension from single positive sets, mass from
    exhaustive enumeration of disjoint qualifying families."""
    atoms = space.atoms
    qualifying = []  # (frozenset, inf_f, measure)
    for mask in range(1, 1 << len(atoms)):
        sub = frozenset(a for k, a in enumerate(atoms) if mask >> k & 1)
        mv = space.measure(AtomSet(sub))
        if not mv > ZERO:
            continue
        inf_f = min(f.value_at_atom(a) for a in sub)
        if not inf_f > ZERO:
            continue
        qualifying.append((sub, inf_f, mv))
    if not qualifying:
        return ZERO
    d = max(inf_f.d + mv.d for _, inf_f, mv in qualifying)
    top = [(sub, inf_f, mv) for sub, inf_f, mv in qualifying if inf_f.d + mv.d == d]

    best = ExtRat(0)
    seen = set()

    def extend(used: frozenset, total: ExtRat):
        nonlocal best
        if total > best:
            best = total
        key = (used, total)
        if key in seen:
            return
        seen.add(key)
        for sub, inf_f, mv in top:
            if sub & used:
                continue
            extend(used | sub, total + inf_f.m * mv.m)

    extend(frozenset(), ExtRat(0))
    return HValue(d, best)


# ---------------------------------------------------------------------------
# integral laws
# ---------------------------------------------------------------------------


def check_integral_laws(
    trials: int,
    seed: int = 0,
    measure_fn: Optional[Callable] = None,
    integrate_fn: Optional[Callable] = None,
) -> LawReport:
    """Integral laws on random atom spaces with exhaustive partition
    coverage; see the module docstring for the independence principle."""
    measure_fn = measure_fn or (lambda sp, s: sp.measure(s))
    integrate_fn = integrate_fn or (lambda sp, fn: integrate(sp, fn)[0])
    report = LawReport(
        "integral", trials, _trial_seed(seed, 0), _trial_seed(seed, max(trials - 1, 0))
    )
    for i in range(trials):
        ts = _trial_seed(seed, i)
        rng = random.Random(ts)
        n = rng.randint(1, 6)
        space = random_atom_space(rng, n)
        f = random_simple_fn(rng, space)
        g = random_simple_fn(rng, space)
        F = integrate_fn(space, f)
        G = integrate_fn(space, g)

        if integrate_fn(space, pointwise_add_fn(f, g)) != add(F, G):
            report.record("additivity", ts, f=F, g=G)

        c = _random_rat(rng, signed=False)
        cf = SimpleFn.of([(scalar_mul(c, v), s) for v, s in f.pieces if not scalar_mul(c, v).is_zero])
        if integrate_fn(space, cf) != scalar_mul(c, F):
            report.record("homogeneity", ts, c=c, f=F)

        minor = SimpleFn.of(
            [
                (v, s)
                for v, s in f.pieces
                if rng.random() < 0.7
            ]
        )
        if not integrate_fn(space, minor) <= F:
            report.record("monotonicity", ts, f=F)

        pointwise_zero = all(
            mul(f.value_at_atom(a), space.weights[a]) == ZERO for a in space.atoms
        )
        if (F == ZERO) != pointwise_zero:
            report.record("zero-law", ts, f=F)

        whole = space.full_set()
        for part in all_partitions(space.atoms):
            parts = [AtomSet(frozenset(p)) for p in part]
            if measure_fn(space, whole) != sum_finite(measure_fn(space, p) for p in parts):
                report.record("measure-sigma-additivity", ts, partition=part)
                break
        for part in all_partitions(space.atoms):
            parts = [AtomSet(frozenset(p)) for p in part]
            total = sum_finite(
                integrate_fn(space, _restrict(f, p.atoms)) for p in parts
            )
            if integrate_fn(space, f) != total:
                report.record("indefinite-sigma-additivity", ts, partition=part)
                break

        if brute_force_integral(space, f) != F:
            report.record("sup-characterization-agreement", ts, f=F, brute=brute_force_integral(space, f))

        masses = {a: abs(_random_rat(rng, signed=False)) for a in space.atoms}
        space0 = scaled_embedding(0, masses)
        f0 = random_simple_fn(rng, space0)
        if integrate_ordinary(space0, f0) != integrate_fn(space0, f0):
            report.record("ordinary-agreement", ts, f=integrate_ordinary(space0, f0))

        gap = isimple_sup_gap(space, f, samples=5, seed=ts, integrate_fn=integrate_fn)
        if not gap.ok:
            report.record("isimple-minorant", ts, detail=gap.violations[0])
    return report


def _restrict(f: SimpleFn, atoms) -> SimpleFn:
    keep = set(atoms)
    pieces = []
    for v, s in f.pieces:
        sub = s.atoms & keep
        if sub:
            pieces.append((v, AtomSet(frozenset(sub))))
    return SimpleFn.of(pieces, f.i_simple)


def minorant_sample_check(
    space: AtomSpace,
    f: SimpleFn,
    samples: int,
    seed: int = 0,
    integrate_fn: Optional[Callable] = None,
    mutate_g=None,
) -> LawReport:
    """Random i-simple minorants integrate below the integral, and the
    function itself attains the supremum."""
    gap = isimple_sup_gap(
        space, f, samples, seed, integrate_fn=integrate_fn, mutate_g=mutate_g
    )
    report = LawReport("minorant", samples, seed, seed)
    for v in gap.violations:
        report.violations.append({"law": "isimple-minorant", **v})
    return report


# ---------------------------------------------------------------------------
# documented mutants (test fixtures for detection checks)
# ---------------------------------------------------------------------------


def mutant_add_drops_dominance(a: HValue, b: HValue) -> HValue:
    """Broken add: always sums masses, ignoring dimension dominance."""
    return HValue(max(a.d, b.d), a.m + b.m)


def mutant_measure_non_additive(space: AtomSpace, s: AtomSet) -> HValue:
    """Broken measure: inflates every set of 2 or more atoms at its own
    top dimension (so the inflation is never swallowed by dominance)."""
    v = space.measure(s)
    if len(s.atoms) >= 2:
        return HValue(v.d, v.m + ExtRat(1))
    return v


def mutant_integrate_drops_atom(space: AtomSpace, f: SimpleFn) -> HValue:
    """Broken integral: silently ignores the first atom of the space."""
    rest = _restrict(f, space.atoms[1:])
    return integrate_simple(space, rest)
