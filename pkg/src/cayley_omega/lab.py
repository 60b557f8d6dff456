"""Checkable cases for Cayley's identity and the identities used to prove it.

Every ``verify_*`` function builds both sides of one identity as exact
polynomials (integer identities become constant polynomials) and returns a
:class:`VerificationReport`.  The ``*_sides`` helpers expose the raw sides so
that different code paths can be compared against each other.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import perms
from .matrices import (
    MAX_SYMBOLIC_N,
    MinorSpec,
    SymbolicMatrix,
    apply_omega_det,
    determinant,
    generic_cominor_det,
    generic_minor_det,
    int_determinant,
    int_submatrix,
    minor,
)
from .perms import IndexSet, PartitionScheme, Permutation, eps, rising_factorial
from .poly import Monomial, Polynomial, first_difference, format_monomial, make_monomial, mono_divide

DEFAULT_TERM_BUDGET = 10**7
DEFAULT_SEED = 42


class TermBudgetExceeded(RuntimeError):
    pass


def term_budget() -> int:
    return int(os.environ.get("CAYLEY_TERM_BUDGET", DEFAULT_TERM_BUDGET))


def _guard(size: int, what: str) -> None:
    budget = term_budget()
    if size > budget:
        raise TermBudgetExceeded(f"{what}: {size} exceeds term budget {budget}")


def _checked(p: Polynomial, what: str) -> Polynomial:
    _guard(len(p), what)
    return p


def _fmt_set(xs: Iterable[int]) -> str:
    return "{" + ",".join(map(str, xs)) + "}"


@dataclass(frozen=True)
class CayleyCase:
    n: int
    s: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        rows = IndexSet.of(self.rows, self.n).elements
        cols = IndexSet.of(self.cols, self.n).elements
        if len(rows) != len(self.rows) or len(cols) != len(self.cols):
            raise ValueError("repeated row or column index")
        if len(rows) != len(cols):
            raise ValueError(f"|I| = {len(rows)} but |J| = {len(cols)}")
        if self.s < 0:
            raise ValueError(f"power s must be >= 0, got {self.s}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def spec(self) -> MinorSpec:
        return MinorSpec(self.rows, self.cols)

    def __str__(self) -> str:
        return f"n={self.n} s={self.s} I={_fmt_set(self.rows)} J={_fmt_set(self.cols)}"


@dataclass(frozen=True)
class TupleOfDiagrams:
    perms: tuple[Permutation, ...]

    def __post_init__(self):
        if len({p.n for p in self.perms}) > 1:
            raise ValueError("diagrams of different sizes")

    def weight(self) -> Polynomial:
        out = Polynomial.const(1)
        for p in self.perms:
            out = out * perms.weight(p)
        return out


@dataclass
class VerificationReport:
    case: str
    lhs_terms: int
    rhs_terms: int
    equal: bool
    witness: dict | None = None
    ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "lhs_terms": self.lhs_terms,
            "rhs_terms": self.rhs_terms,
            "equal": self.equal,
            "witness": self.witness,
            "ms": self.ms,
        }


def compare(case: str, lhs: Polynomial, rhs: Polynomial, started: float) -> VerificationReport:
    diff = first_difference(lhs, rhs)
    witness = None
    if diff is not None:
        mono, a, b = diff
        witness = {"monomial": format_monomial(mono) or "1", "lhs": a, "rhs": b}
    return VerificationReport(
        case=case,
        lhs_terms=len(lhs),
        rhs_terms=len(rhs),
        equal=diff is None,
        witness=witness,
        ms=round((time.perf_counter() - started) * 1000, 3),
    )


# -- Cayley and Vivanti --


def det_power(n: int, s: int) -> Polynomial:
    return _checked(generic_minor_det(tuple(range(1, n + 1)), tuple(range(1, n + 1))) ** s, f"(det X_{n})^{s}")


def _rhs_core(n: int, s: int, k: int, cominor: Polynomial) -> Polynomial:
    """``s(s+1)...(s+k-1) * (det X)^(s-1) * cominor`` with the s = 0 corner handled."""
    if s == 0:
        # rising factorial vanishes for k >= 1; for k = 0 both sides are (det X)^0
        return Polynomial.const(1) if k == 0 else Polynomial()
    return _checked(det_power(n, s - 1) * cominor * rising_factorial(s, k), "rhs")


def cayley_sides(case: CayleyCase, drop_eps_j: bool = False) -> tuple[Polynomial, Polynomial]:
    """Both sides of ``det(d[I|J]) (det X)^s = rf(s,k) (det X)^(s-1) eps(I) eps(J) det X(I|J)``.

    ``drop_eps_j`` omits the column sign on the right; a mutation hook for
    checking that the comparison can fail.
    """
    n = case.n
    lhs = _checked(apply_omega_det(case.spec, det_power(n, case.s)), "lhs")
    full = range(1, n + 1)
    sign = eps(case.rows, full) * (1 if drop_eps_j else eps(case.cols, full))
    rhs = _rhs_core(n, case.s, case.k, generic_cominor_det(n, case.rows, case.cols)) * sign
    return lhs, rhs


def verify_cayley(case: CayleyCase, drop_eps_j: bool = False) -> VerificationReport:
    started = time.perf_counter()
    lhs, rhs = cayley_sides(case, drop_eps_j)
    return compare(f"cayley {case}", lhs, rhs, started)


def omega_det_by_rows(rows: Sequence[int], cols: Sequence[int], p: Polynomial) -> Polynomial:
    """``det(d[rows|cols]) p`` by expanding the operator along its first row."""
    if not rows:
        return p
    out = Polynomial()
    first, rest = rows[0], rows[1:]
    for idx, c in enumerate(cols):
        q = p.partial_derivative((first, c))
        if q.is_zero():
            continue
        q = omega_det_by_rows(rest, cols[:idx] + cols[idx + 1 :], q)
        out = out + (-q if idx % 2 else q)
    return out


def vivanti_sides(n: int, k: int, s: int) -> tuple[Polynomial, Polynomial]:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if s < 0:
        raise ValueError(f"power s must be >= 0, got {s}")
    lead = tuple(range(1, k + 1))
    lhs = _checked(omega_det_by_rows(lead, lead, det_power(n, s)), "lhs")
    rhs = _rhs_core(n, s, k, generic_cominor_det(n, lead, lead))
    return lhs, rhs


def verify_vivanti(n: int, k: int, s: int) -> VerificationReport:
    started = time.perf_counter()
    lhs, rhs = vivanti_sides(n, k, s)
    return compare(f"vivanti n={n} k={k} s={s}", lhs, rhs, started)


# -- action of det(d) on tuples of diagrams --


def c_tau_m(tau: Permutation, m: TupleOfDiagrams | Sequence[Permutation]) -> int:
    """Ways to pick the edges ``i -> tau(i)`` out of the diagrams in ``m``.

    Each edge may come from any copy that contains it, so the count is the
    product over ``i`` of the number of copies holding ``i -> tau(i)``.
    """
    diagrams = m.perms if isinstance(m, TupleOfDiagrams) else tuple(m)
    out = 1
    for i, t in tau.edges():
        out *= sum(1 for p in diagrams if i <= p.n and p(i) == t)
        if not out:
            break
    return out


def expand_partial_action(case: CayleyCase) -> Polynomial:
    """Apply ``det(d[k|k])`` to ``(det X)^s`` one diagram tuple at a time.

    Sums ``omega(m) * c_{tau,m} * sgn(tau) / prod x[i,tau(i)]`` over all
    ``m`` in ``S_n^s`` and ``tau`` in ``S_k``.
    """
    lead = tuple(range(1, case.k + 1))
    if case.rows != lead or case.cols != lead:
        raise ValueError("the diagram expansion is only defined for I = J = [k]")
    n, s, k = case.n, case.s, case.k
    _guard(len(Permutation.all(n)) ** s, "diagram tuples")
    taus = [(t, perms.sign(t), make_monomial([(e, 1) for e in t.edges()])) for t in Permutation.all(k)]
    terms: dict[Monomial, int] = {}
    for combo in itertools.product(Permutation.all(n), repeat=s):
        m = TupleOfDiagrams(combo)
        ((mono, coeff),) = m.weight().terms()
        for tau, sgn, erased in taus:
            c = c_tau_m(tau, m)
            if not c:
                continue
            rest = mono_divide(mono, erased)
            if rest is None:
                raise ArithmeticError(f"edges of {tau} missing from {combo} although c = {c}")
            terms[rest] = terms.get(rest, 0) + coeff * c * sgn
    return Polynomial(terms)


def verify_partial_action(case: CayleyCase) -> VerificationReport:
    started = time.perf_counter()
    lhs = expand_partial_action(case)
    rhs = apply_omega_det(case.spec, det_power(case.n, case.s))
    return compare(f"partial-action n={case.n} k={case.k} s={case.s}", lhs, rhs, started)


# -- partition schemes and class generating functions --


def compatible_partitions(sizes: Sequence[int], k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Ordered partitions ``(I_1, ..., I_m)`` of ``[k]`` with ``|I_l| = sizes[l]``."""
    if sum(sizes) != k:
        raise ValueError(f"block sizes {tuple(sizes)} do not add up to {k}")

    def rec(pool: tuple[int, ...], rest: Sequence[int]):
        if not rest:
            yield ()
            return
        for block in itertools.combinations(pool, rest[0]):
            left = tuple(a for a in pool if a not in block)
            for tail in rec(left, rest[1:]):
                yield (block,) + tail

    yield from rec(tuple(range(1, k + 1)), list(sizes))


def _class_sum(words: Sequence[Sequence[int]], n: int, with_eps: bool) -> Polynomial:
    k = sum(len(w) for w in words)
    if k > n:
        raise ValueError(f"scheme over [{k}] does not fit in dimension {n}")
    scheme = PartitionScheme(tuple(words))
    full = range(1, n + 1)
    word_signs = [perms.word_sign(w) for w in words]
    images = [tuple(sorted(w)) for w in words]
    total = Polynomial()
    for domains in compatible_partitions([len(w) for w in words], k):
        sigma = perms.build_sigma(scheme, domains)
        term = Polynomial.const(perms.sign(sigma))
        for dom, img, ws in zip(domains, images, word_signs):
            factor = ws * (eps(dom, full) * eps(img, full) if with_eps else 1)
            term = term * generic_cominor_det(n, dom, img) * factor
        total = total + term
    return _checked(total, "class sum")


def class_generating_function(scheme: PartitionScheme, n: int, s: int) -> Polynomial:
    """Generating function of the partitioned permutations complying to ``scheme``.

    Should equal ``(det X)^(s-1) * det X([k]|[k])`` whatever the scheme.
    """
    if scheme.s != s:
        raise ValueError(f"scheme has {scheme.s} words but s = {s}")
    words = scheme.nonempty()
    return det_power(n, s - len(words)) * _class_sum(words, n, with_eps=True)


def class_target(n: int, k: int, s: int) -> Polynomial:
    lead = tuple(range(1, k + 1))
    return det_power(n, s - 1) * generic_cominor_det(n, lead, lead)


def showthis_sides(words: Sequence[Sequence[int]], n: int) -> tuple[Polynomial, Polynomial]:
    words = tuple(tuple(w) for w in words)
    if not words or any(not w for w in words):
        raise ValueError("scheme words must all be nonempty")
    k = sum(len(w) for w in words)
    lhs = _class_sum(words, n, with_eps=False)
    lead = tuple(range(1, k + 1))
    rhs = det_power(n, len(words) - 1) * generic_cominor_det(n, lead, lead)
    return lhs, rhs


def verify_showthis(scheme: PartitionScheme | Sequence[Sequence[int]], n: int) -> VerificationReport:
    started = time.perf_counter()
    words = scheme.words if isinstance(scheme, PartitionScheme) else scheme
    lhs, rhs = showthis_sides(words, n)
    label = "*".join("(" + ",".join(map(str, w)) + ")" for w in words)
    return compare(f"showthis n={n} scheme={label}", lhs, rhs, started)


# -- generalized Laplace expansion --


def laplace_sides(
    a: SymbolicMatrix | Sequence[Sequence[int]],
    rows: Iterable[int],
    cols: Iterable[int],
    subset: Iterable[int],
) -> tuple[Polynomial, Polynomial]:
    """``det(a) det(a(R|C))`` against its expansion over ``J`` in ``C`` with ``|J| = |I|``."""
    if isinstance(a, SymbolicMatrix):
        size, nc = a.shape

        def det(rs, cs):
            return determinant(minor(a, MinorSpec(tuple(rs), tuple(cs))))

    else:
        size, nc = len(a), (len(a[0]) if a else 0)

        def det(rs, cs):
            return Polynomial.const(int_determinant(int_submatrix(a, rs, cs)))

    if size != nc:
        raise ValueError(f"matrix must be square, got {size}x{nc}")
    full = tuple(range(1, size + 1))
    R = IndexSet(tuple(rows), full)
    C = IndexSet(tuple(cols), full)
    I = IndexSet(tuple(subset), R.elements)
    if len(R) != len(C):
        raise ValueError(f"|R| = {len(R)} but |C| = {len(C)}")

    def outside(xs):
        xs = set(xs)
        return tuple(x for x in full if x not in xs)

    lhs = det(full, full) * det(R.complement(), C.complement())
    r_rest = [r for r in R.elements if r not in I.elements]
    rhs = Polynomial()
    for J in itertools.combinations(C.elements, len(I)):
        c_rest = [c for c in C.elements if c not in J]
        sign = perms.signsumset(I) * eps(J, C.elements)
        rhs = rhs + det(outside(r_rest), outside(c_rest)) * det(outside(I.elements), outside(J)) * sign
    return lhs, rhs


def verify_laplace(
    a: SymbolicMatrix | Sequence[Sequence[int]],
    rows: Iterable[int],
    cols: Iterable[int],
    subset: Iterable[int],
    label: str | None = None,
) -> VerificationReport:
    started = time.perf_counter()
    rows, cols, subset = tuple(rows), tuple(cols), tuple(subset)
    lhs, rhs = laplace_sides(a, rows, cols, subset)
    kind = "laplace-symbolic" if isinstance(a, SymbolicMatrix) else "laplace"
    desc = label or f"size={len(a.entries) if isinstance(a, SymbolicMatrix) else len(a)}"
    case = f"{kind} {desc} R={_fmt_set(rows)} C={_fmt_set(cols)} I={_fmt_set(subset)}"
    return compare(case, lhs, rhs, started)


def laplace_shapes(size: int) -> list[tuple[int, int]]:
    """Every ``(|R|, |I|)`` pair with ``0 <= |I| <= |R| <= size``."""
    return [(r, i) for r in range(size + 1) for i in range(r + 1)]


def random_laplace_reports(
    size: int, trials: int, seed: int = DEFAULT_SEED, all_shapes: bool = False, entry_bound: int = 9
) -> list[VerificationReport]:
    """Laplace checks on seeded random integer matrices.

    Each trial draws one matrix; with ``all_shapes`` it is tested under a random
    ``(R, C, I)`` of every shape, otherwise under a single random shape.
    """
    rng = random.Random(f"{seed}:{size}")
    full = range(1, size + 1)
    shapes = laplace_shapes(size)
    out = []
    for trial in range(trials):
        a = [[rng.randint(-entry_bound, entry_bound) for _ in full] for _ in full]
        todo = shapes if all_shapes else [rng.choice(shapes)]
        for r, i in todo:
            R = sorted(rng.sample(full, r))
            C = sorted(rng.sample(full, r))
            I = sorted(rng.sample(R, i))
            out.append(verify_laplace(a, R, C, I, label=f"size={size} trial={trial:02d}"))
    return out


def symbolic_laplace_reports(n: int, max_r: int = 2) -> list[VerificationReport]:
    """Every ``(R, C, I)`` with ``|R| = |C| <= max_r`` on the generic ``X_n``."""
    x = SymbolicMatrix.generic(n)
    out = []
    full = range(1, n + 1)
    for r in range(min(max_r, n) + 1):
        for R in itertools.combinations(full, r):
            for C in itertools.combinations(full, r):
                for i in range(r + 1):
                    for I in itertools.combinations(R, i):
                        out.append(verify_laplace(x, R, C, I, label=f"n={n}"))
    return out


# -- suite --

FAMILIES = (
    "cayley",
    "vivanti",
    "partial-action",
    "schemes",
    "distributions",
    "class-gf",
    "showthis",
    "laplace",
    "laplace-symbolic",
)


@dataclass
class SuiteConfig:
    max_n: int = 3
    max_s: int = 3
    families: tuple[str, ...] = FAMILIES
    partial_action_max_s: int = 2
    scheme_max_k: int = 5
    scheme_max_s: int = 5
    distribution_max_k: int = 4
    distribution_max_s: int = 4
    class_gf_max_k: int = 2
    laplace_sizes: tuple[int, ...] = (2, 3, 4, 5)
    laplace_trials: int = 50
    laplace_symbolic_max_n: int = 4
    laplace_symbolic_max_r: int = 2
    seed: int = DEFAULT_SEED
    drop_eps_j: bool = False
    extra_cayley: tuple[CayleyCase, ...] = field(default_factory=tuple)

    def __post_init__(self):
        unknown = set(self.families) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown families {sorted(unknown)}")
        if self.max_n > MAX_SYMBOLIC_N or self.laplace_symbolic_max_n > MAX_SYMBOLIC_N:
            raise ValueError(f"symbolic dimension limited to {MAX_SYMBOLIC_N}")
        if self.max_n < 0 or self.max_s < 0:
            raise ValueError("bounds must be nonnegative")


def cayley_cases(n: int, max_s: int, max_k: int | None = None) -> list[CayleyCase]:
    full = range(1, n + 1)
    top = n if max_k is None else min(n, max_k)
    return [
        CayleyCase(n, s, I, J)
        for k in range(top + 1)
        for I in itertools.combinations(full, k)
        for J in itertools.combinations(full, k)
        for s in range(max_s + 1)
    ]


def nonempty_schemes(k: int) -> list[PartitionScheme]:
    """Schemes over ``[k]`` with no empty words, any number of parts."""
    return [
        sc
        for m in range(1, k + 1)
        for sc in perms.enumerate_schemes(k, m)
        if all(sc.words)
    ]


def _count_report(case: str, got: int, want: int) -> VerificationReport:
    started = time.perf_counter()
    return compare(case, Polynomial.const(got), Polynomial.const(want), started)


def run_suite(config: SuiteConfig | None = None) -> list[VerificationReport]:
    cfg = config or SuiteConfig()
    fams = set(cfg.families)
    reports: list[VerificationReport] = []
    dims = range(1, cfg.max_n + 1)

    if "cayley" in fams:
        for n in dims:
            for case in cayley_cases(n, cfg.max_s):
                reports.append(verify_cayley(case, cfg.drop_eps_j))
        for case in cfg.extra_cayley:
            reports.append(verify_cayley(case, cfg.drop_eps_j))

    if "vivanti" in fams:
        for n in dims:
            for k in range(n + 1):
                for s in range(cfg.max_s + 1):
                    reports.append(verify_vivanti(n, k, s))

    if "partial-action" in fams:
        for n in dims:
            for k in range(n + 1):
                for s in range(min(cfg.max_s, cfg.partial_action_max_s) + 1):
                    lead = tuple(range(1, k + 1))
                    reports.append(verify_partial_action(CayleyCase(n, s, lead, lead)))

    if "schemes" in fams:
        for k in range(cfg.scheme_max_k + 1):
            for s in range(1, cfg.scheme_max_s + 1):
                got = len(perms.enumerate_schemes(k, s))
                reports.append(_count_report(f"schemes k={k} s={s}", got, rising_factorial(s, k)))

    if "distributions" in fams:
        for k in range(cfg.distribution_max_k + 1):
            schemes_by_ks = {}
            for s in range(1, cfg.distribution_max_s + 1):
                schemes_by_ks[s] = set(perms.enumerate_schemes(k, s))
                for tau in Permutation.all(k):
                    dists = perms.enumerate_distributions(tau, s)
                    grouped = {perms.scheme_of(t) for t in dists}
                    stray = len(grouped - schemes_by_ks[s])
                    reports.append(
                        _count_report(f"distributions k={k} s={s} tau={tau}", len(dists) + stray, s**k)
                    )

    if "class-gf" in fams:
        for n in dims:
            for k in range(min(n, cfg.class_gf_max_k) + 1):
                for s in range(1, cfg.max_s + 1):
                    target = class_target(n, k, s)
                    total = Polynomial()
                    for sc in perms.enumerate_schemes(k, s):
                        started = time.perf_counter()
                        g = class_generating_function(sc, n, s)
                        total = total + g
                        reports.append(compare(f"class-gf n={n} k={k} s={s} scheme={sc}", g, target, started))
                    started = time.perf_counter()
                    lead = tuple(range(1, k + 1))
                    operator_side = apply_omega_det(MinorSpec(lead, lead), det_power(n, s))
                    reports.append(compare(f"class-gf-sum n={n} k={k} s={s}", total, operator_side, started))

    if "showthis" in fams:
        for n in dims:
            for k in range(1, n + 1):
                for sc in nonempty_schemes(k):
                    reports.append(verify_showthis(sc, n))

    if "laplace" in fams:
        for size in cfg.laplace_sizes:
            reports.extend(random_laplace_reports(size, cfg.laplace_trials, cfg.seed, all_shapes=True))

    if "laplace-symbolic" in fams:
        for n in range(1, cfg.laplace_symbolic_max_n + 1):
            reports.extend(symbolic_laplace_reports(n, cfg.laplace_symbolic_max_r))

    reports.sort(key=lambda r: r.case)
    return reports
