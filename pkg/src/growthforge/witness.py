"""Free-semigroup witnesses for split extensions ``Z^r x|_A Z``.

If ``t`` acts on ``v`` with an eigenvalue of modulus at least 2 on the cyclic
submodule generated by ``v``, then ``t`` and ``t v`` generate a free
semigroup, so the growth rate with respect to any generating set in which
both have length at most ``L`` is at least ``2^(1/L)``.  This module builds
such pairs, both for the standard generators and for arbitrary generating
sets, and checks them by brute force.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (
    BudgetExceeded,
    DegenerateGeneratingSet,
    KindMismatch,
    NoCyclicSupport,
    NotExponential,
    RecursionExhausted,
    WitnessRejected,
)
from .exact import IntMatrix, hnf_saturate, right_inverse
from .groups import (
    GeneratingSet,
    GroupSpec,
    SplitExtension,
    Word,
    as_word,
    canonical_encode,
    commutator,
    element_compose,
    element_power,
    finite_index_generators,
)
from .spectra import (
    annihilator_poly,
    char_poly,
    has_modulus_ge,
    kronecker_all_roots_of_unity,
    power_for_threshold,
)

log = logging.getLogger(__name__)

DEFAULT_VERIFY_DEPTH = 8
MAX_VERIFY_DEPTH = 20
THRESHOLD = 2


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    distinct_count: int
    counterexample: tuple | None = None


@dataclass(frozen=True)
class FreeSemigroupWitness:
    word_a: Word
    word_b: Word
    construction: str
    trace: dict = field(compare=False)
    verified_depth: int = 0
    generators: GeneratingSet | None = field(default=None, compare=False, repr=False)

    @property
    def max_length(self) -> int:
        return max(len(self.word_a), len(self.word_b))

    @property
    def rate_lower_bound(self) -> float:
        return 2.0 ** (1.0 / self.max_length)

    def expanded(self):
        """Both words rewritten over the parent generating set, if there is one."""
        if self.generators is None:
            return self.word_a, self.word_b
        return self.generators.expand(self.word_a), self.generators.expand(self.word_b)

    def to_dict(self) -> dict:
        return {
            "word_a": str(self.word_a),
            "word_b": str(self.word_b),
            "max_length": self.max_length,
            "rate_lower_bound": round(self.rate_lower_bound, 6),
            "construction": self.construction,
            "verified_depth": self.verified_depth,
            "trace": self.trace,
        }


@dataclass(frozen=True)
class Classification:
    verdict: str
    witness: FreeSemigroupWitness | None = None

    @property
    def evidence(self) -> str:
        return "kronecker_true" if self.witness is None else "witness"


def verify_free_semigroup(spec, word_a, word_b, depth: int) -> VerifyResult:
    """Check that all nonempty products of ``a, b`` up to ``depth`` letters differ.

    Products are enumerated in shortlex order; the first collision is reported
    as ``(earlier, later)`` over the letters ``a`` and ``b``.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if depth > MAX_VERIFY_DEPTH:
        raise BudgetExceeded(f"depth {depth} exceeds the cap of {MAX_VERIFY_DEPTH}")
    gens = spec.generators if isinstance(spec, GroupSpec) else spec
    a = gens.evaluate(as_word(word_a))
    b = gens.evaluate(as_word(word_b))
    seen = {}
    layer = [("a", a), ("b", b)]
    for n in range(1, depth + 1):
        if n > 1:
            layer = [
                (w + c, element_compose(g, x))
                for w, g in layer
                for c, x in (("a", a), ("b", b))
            ]
        for w, g in layer:
            key = canonical_encode(g)
            if key in seen:
                return VerifyResult(False, len(seen), (seen[key], w))
            seen[key] = w
    return VerifyResult(True, len(seen))


def _check(gens, word_a, word_b, depth):
    if depth <= 0:
        return 0
    res = verify_free_semigroup(gens, word_a, word_b, depth)
    if not res.ok:
        raise WitnessRejected(
            f"pair ({word_a}) / ({word_b}) collides: {res.counterexample[0]} = {res.counterexample[1]}"
        )
    return depth


def free_pair_standard(matrix, verify_depth: int = DEFAULT_VERIFY_DEPTH) -> FreeSemigroupWitness:
    """The pair ``(t^n, t^n v)`` over the standard generators ``t, e1..er``.

    ``n`` is the least power giving an eigenvalue of modulus at least 2, and
    ``v`` is the first basis vector (then pairwise sum) whose cyclic
    submodule under ``A^n`` carries such an eigenvalue.
    """
    spec = matrix if isinstance(matrix, GroupSpec) else GroupSpec.split_extension(matrix)
    a = spec.matrix
    r = a.nrows
    n = power_for_threshold(a, THRESHOLD)
    an = a ** n
    candidates = [((i,), f"e{i + 1}") for i in range(r)]
    candidates += [((i, j), f"e{i + 1} e{j + 1}") for i in range(r) for j in range(i + 1, r)]
    for idx, word in candidates:
        v = [0] * r
        for i in idx:
            v[i] = 1
        if has_modulus_ge(annihilator_poly(an, v), THRESHOLD):
            break
    else:
        raise NoCyclicSupport("no basis vector or pairwise sum has a large enough cyclic submodule")
    t_n = Word.of("t") * n
    word_a, word_b = t_n, t_n + Word.parse(word)
    trace = {"branch": "standard", "power": n, "vector": word}
    if n > 1:
        # passing to <V, t^n> has index n
        trace["subgroup_index"] = n
    depth = _check(spec.generators, word_a, word_b, verify_depth)
    return FreeSemigroupWitness(word_a, word_b, "standard_pair", trace, depth, spec.generators)


def restricted_action(b: IntMatrix, basis) -> IntMatrix:
    """Matrix of ``b`` on an invariant lattice, in coordinates of ``basis`` rows.

    Column ``j`` holds the coordinates of ``b @ basis[j]``.
    """
    k = len(basis)
    r = b.nrows
    cols = []
    for vec in basis:
        target = b.apply(vec)
        # least squares normal equations are exact here: target lies in the span
        gram = [[Fraction(sum(x * y for x, y in zip(bi, bj))) for bj in basis] for bi in basis]
        rhs = [Fraction(sum(x * y for x, y in zip(bi, target))) for bi in basis]
        cols.append(_solve(gram, rhs))
    out = [[cols[j][i] for j in range(k)] for i in range(k)]
    assert all(x.denominator == 1 for row in out for x in row)
    for j, vec in enumerate(basis):
        image = tuple(sum(int(out[i][j]) * basis[i][c] for i in range(k)) for c in range(r))
        assert image == b.apply(vec)
    return IntMatrix([[int(x) for x in row] for row in out])


def _solve(m, rhs):
    n = len(m)
    aug = [row[:] + [v] for row, v in zip(m, rhs)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * c for a, c in zip(aug[i], aug[col])]
    return [row[n] for row in aug]


@dataclass
class QuotientProblem:
    """``<V, t_hat> / V1`` presented as a split extension with its own generators."""

    group: SplitExtension
    generators: GeneratingSet
    subgroup: GeneratingSet
    functionals: IntMatrix
    index: int

    def project(self, g, t_elem, t_exp):
        j, rem = divmod(g.k, t_exp)
        if rem:
            raise ValueError("element lies outside <V, t_hat>")
        x = tuple(a - p for a, p in zip(g.w, element_power(t_elem, j).w))
        return self.group.element(self.functionals.apply(x), j)


def quotient_problem(gens: GeneratingSet, t_elem, t_exp: int, v1) -> QuotientProblem:
    """Pass to ``<V, t_hat>``, make ``t_hat`` the stable letter, and divide by ``V1``.

    ``V1`` must be saturated and invariant under the action of ``t_hat``.
    """
    grp = t_elem.group
    r = grp.rank
    exps = [g.k for g in gens.elements]
    g_all = 0
    for k in exps:
        g_all = gcd(g_all, k)
    d = abs(t_exp) // g_all
    if d == 1:
        sub = gens
    else:
        table = {label: [(i + g.k // g_all) % d for i in range(d)] for label, g in gens.items()}
        sub = finite_index_generators(gens, table)
    k_rows = v1.complement_functionals()
    kmat = IntMatrix(k_rows)
    c = IntMatrix(right_inverse(k_rows, r)).transpose()
    qgrp = SplitExtension(kmat @ grp.action(t_exp) @ c)
    problem = QuotientProblem(qgrp, None, sub, kmat, d)
    problem.generators = GeneratingSet(
        sub.labels, [problem.project(g, t_elem, t_exp) for g in sub.elements]
    )
    return problem


def _search(grp: SplitExtension, gens: GeneratingSet, level: int):
    """Return ``(word_a, word_b, trace)`` over the labels of ``gens``."""
    r = grp.rank
    if level > r:
        raise RecursionExhausted("quotient recursion deeper than the rank")
    if kronecker_all_roots_of_unity(char_poly(grp.matrix)):
        raise NotExponential("every eigenvalue of the action is a root of unity")

    parts = [(label, g.w, g.k) for label, g in gens.items()]
    movers = [(abs(k), i, -e, label, e * k) for i, (label, _, k) in enumerate(parts)
              if k != 0 for e in (1, -1)]
    if not movers:
        raise DegenerateGeneratingSet("no generator has a nonzero t-exponent")
    _, _, neg_e, t_label, t_exp = min(movers)
    t_letter = Word([(t_label, -neg_e)])
    t_elem = gens.evaluate(t_letter)
    b = grp.action(t_exp)
    n = power_for_threshold(b, THRESHOLD)

    s0 = [(Word([(label, 1)]), w) for label, w, k in parts if k == 0 and any(w)]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            li, lj = parts[i][0], parts[j][0]
            c = commutator(gens.element(li), gens.element(lj))
            if any(c.w):
                s0.append((Word([(li, 1), (lj, 1), (li, -1), (lj, -1)]), c.w))
    s1 = []
    for q in range(r):
        bq = b ** q
        conj = t_letter.power(q)
        for word, vec in s0:
            s1.append((conj + word + conj.inverse(), bq.apply(vec)))
    v1 = hnf_saturate([vec for _, vec in s1], r)
    if v1.rank == 0:
        raise NotExponential("all commutators of generators are trivial; the group is abelian")

    base = {
        "level": level,
        "t_hat": str(t_letter),
        "t_exponent": t_exp,
        "rank": r,
        "sublattice_rank": v1.rank,
    }

    def supported(power):
        bn = b ** power
        for word, vec in s1:
            if has_modulus_ge(annihilator_poly(bn, vec), THRESHOLD):
                t_n = t_letter * power
                return t_n, t_n + word, str(word)
        return None

    found = supported(n)
    if found is not None:
        branch = "full_rank" if v1.rank == r else "invariant_sublattice"
        return found[0], found[1], dict(base, branch=branch, power=n, v=found[2])
    if v1.rank == r:
        raise RecursionExhausted("full-rank sublattice without a supporting generator")

    # The large eigenvalue of t_hat^n lives on V / V1.
    problem = quotient_problem(gens, t_elem, t_exp, v1)
    attempted = None
    if not kronecker_all_roots_of_unity(char_poly(problem.group.matrix)):
        try:
            wa, wb, subtrace = _search(problem.group, problem.generators, level + 1)
        except NotExponential as exc:
            # the images of S do not reach the large eigenvalue
            attempted = str(exc)
        else:
            if problem.subgroup is not gens:
                wa, wb = problem.subgroup.expand(wa), problem.subgroup.expand(wb)
            trace = dict(base, branch="quotient", subgroup_index=problem.index, quotient=subtrace)
            return wa, wb, trace

    # <S> need not reach the largest eigenvalue when S fails to generate;
    # fall back to a power adapted to the action on V1 itself.
    on_v1 = restricted_action(b, v1.basis)
    if kronecker_all_roots_of_unity(char_poly(on_v1)):
        raise NotExponential("the subgroup generated by S acts with roots of unity only")
    n1 = power_for_threshold(on_v1, THRESHOLD)
    found = supported(n1)
    if found is None:
        raise RecursionExhausted("no generator of V1 supports the raised power")
    trace = dict(base, branch="raised_power", power=n1, v=found[2])
    if attempted is not None:
        trace["quotient_attempt"] = attempted
    return found[0], found[1], trace


def witness_search(spec: GroupSpec, generators: GeneratingSet | None = None,
                   verify_depth: int = DEFAULT_VERIFY_DEPTH) -> FreeSemigroupWitness:
    """Free-semigroup pair written in an arbitrary generating set.

    The stable letter is a generator (or inverse) with nonzero t-exponent;
    commutators of generators and their conjugates span an invariant
    sublattice, and either one of them supports a large eigenvalue or the
    search recurses into the quotient lattice.
    """
    if spec.kind != "split_extension":
        raise KindMismatch("witness search needs a split extension")
    gens = generators if generators is not None else spec.generators
    wa, wb, trace = _search(spec.group, gens, 0)
    if trace["branch"] in ("full_rank", "invariant_sublattice") and trace["power"] == 1:
        bound = 3 + 2 * spec.rank
        assert max(len(wa), len(wb)) <= bound, (wa, wb, bound)
    depth = _check(gens, wa, wb, verify_depth)
    log.debug("witness %s / %s via %s", wa, wb, trace["branch"])
    return FreeSemigroupWitness(wa, wb, "generating_set_search", trace, depth, gens)


def classify_split_extension(spec, verify_depth: int = DEFAULT_VERIFY_DEPTH) -> Classification:
    """Polynomial growth when every eigenvalue is a root of unity; otherwise
    uniform exponential growth with a standard witness attached."""
    spec = spec if isinstance(spec, GroupSpec) else GroupSpec.split_extension(spec)
    if spec.kind != "split_extension":
        raise KindMismatch("classification needs a split extension")
    if kronecker_all_roots_of_unity(char_poly(spec.matrix)):
        return Classification("polynomial_growth")
    std = GroupSpec.split_extension(spec.matrix)
    return Classification("uniform_exponential_growth", free_pair_standard(std, verify_depth))
