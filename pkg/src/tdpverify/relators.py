"""Relators and rank certificates.

A relator is u * a^k * v (or u * a*^k * v) where the powers expand over the
idempotent basis, so every relator is a short explicit combination of words
of one type.  The span of the relators of a type, measured by exact rank,
is compared against the count of non-zigzag words: equality is the
directness certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CtxMismatch, DimensionMismatch, UnsupportedDiameter
from .exactfield import FieldCtx, FieldElement
from .linalg import SparseMatrix, in_span
from .params import ParameterSequence, require_feasible
from .words import (
    Generator,
    TElement,
    Word,
    WordType,
    enumerate_words,
    enumerate_zigzag,
    is_zigzag,
    type_of,
)

FAMILY_C = "C"  # end(u), begin(v) nonstarred; inserts a*^k
FAMILY_CSTAR = "Cstar"  # end(u), begin(v) starred; inserts a^k


@dataclass(frozen=True)
class APowerVector:
    """Coefficients of a^k (or a*^k) over the matching idempotent family."""

    starred: bool
    k: int
    coeffs: tuple[FieldElement, ...]


def a_power(p: ParameterSequence, k: int, starred: bool) -> APowerVector:
    """a^k = sum theta_l^k e_l; a*^k likewise; k = 0 gives the all-ones vector."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    seq = p.theta_star if starred else p.theta
    one = p.ctx.one()
    coeffs = tuple(one if k == 0 else x**k for x in seq)
    return APowerVector(starred, k, coeffs)


@dataclass(frozen=True)
class RelatorSpec:
    """A triple (u, v, k) with its family tag; the relator is u a^k v or
    u a*^k v depending on the family."""

    family: str
    u: Word
    v: Word
    k: int

    def __post_init__(self):
        if self.family not in (FAMILY_C, FAMILY_CSTAR):
            raise ValueError(f"unknown family {self.family!r}")
        if self.u.is_trivial or self.v.is_trivial:
            raise ValueError("u and v must be nontrivial")
        eu, bv = self.u.end(), self.v.begin()
        want_starred = self.family == FAMILY_CSTAR
        if eu.starred != want_starred or bv.starred != want_starred:
            raise ValueError(f"family {self.family} contradicts end(u)/begin(v) families")
        gap = abs(eu.index - bv.index)
        if not 0 <= self.k < gap:
            raise ValueError(f"k={self.k} outside 0..{gap - 1}")

    @property
    def inserted_starred(self) -> bool:
        # the inserted generator alternates with end(u)
        return self.family == FAMILY_C

    def relator_type(self) -> WordType:
        return WordType(
            self.u.length + self.v.length + 1, self.u.begin(), self.v.end()
        )


def enumerate_relator_specs(lam: WordType, d: int) -> list[RelatorSpec]:
    """All (u, v, k) whose expanded relator is homogeneous of type lam.

    u runs over words of every length s with begin(u) = begin(lam), v over
    words of length length(lam)-1-s with end(v) = end(lam), and k stays
    strictly below the index gap between end(u) and begin(v).
    """
    if lam.trivial or lam.length < 3:
        return []
    if lam.begin.index > d or lam.end.index > d:
        return []
    specs = []
    L = lam.length
    gens = range(d + 1)
    for s in range(1, L - 1):
        # families at positions s and s+2 agree; both must carry the split
        split_starred = lam.begin.starred == (s % 2 == 1)
        family = FAMILY_CSTAR if split_starred else FAMILY_C
        u_types = (
            [WordType(s, lam.begin, Generator(split_starred, i)) for i in gens]
            if s > 1
            else [WordType(1, lam.begin, lam.begin)]
        )
        v_len = L - 1 - s
        v_types = (
            [WordType(v_len, Generator(split_starred, j), lam.end) for j in gens]
            if v_len > 1
            else [WordType(1, lam.end, lam.end)]
        )
        for ut in u_types:
            for u in enumerate_words(ut, d):
                i = u.end().index
                for vt in v_types:
                    for v in enumerate_words(vt, d):
                        j = v.begin().index
                        for k in range(abs(i - j)):
                            specs.append(RelatorSpec(family, u, v, k))
    return specs


def expand_relator(spec: RelatorSpec, p: ParameterSequence) -> TElement:
    """Expand u a^k v (or u a*^k v) over the word basis of its type."""
    d = p.d
    if any(i > d for i in spec.u.indices) or any(i > d for i in spec.v.indices):
        raise DimensionMismatch(f"relator words use indices above d={d}")
    power = a_power(p, spec.k, starred=spec.inserted_starred)
    terms: dict[Word, FieldElement] = {}
    for ell in range(d + 1):
        coeff = power.coeffs[ell]
        if coeff.is_zero:
            continue
        word = Word(spec.u.starred_first, spec.u.indices + (ell,) + spec.v.indices)
        terms[word] = coeff
    return TElement(p.ctx, terms)


def relator_matrix(lam: WordType, p: ParameterSequence) -> SparseMatrix:
    """Coefficient matrix of all type-lam relators over the word basis.

    Rows follow the canonical word enumeration of the type; one column per
    RelatorSpec, in enumeration order.
    """
    require_feasible(p)
    words = enumerate_words(lam, p.d)
    row_of = {w: r for r, w in enumerate(words)}
    columns = []
    for spec in enumerate_relator_specs(lam, p.d):
        expanded = expand_relator(spec, p)
        columns.append({row_of[w]: c for w, c in expanded.terms()})
    return SparseMatrix.from_columns(len(words), columns, p.ctx)


@dataclass(frozen=True)
class DirectnessCertificate:
    """Rank-based verdict that the relator span meets the zigzag span only
    in zero inside one homogeneous component."""

    lam: WordType
    d: int
    ctx: FieldCtx
    p_digest: str
    dim_T_lambda: int
    dim_Z_lambda: int
    relator_count: int
    rank_R_lambda: int
    direct: bool

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "d": self.d,
            "field": self.ctx.to_json(),
            "dim": self.dim_T_lambda,
            "zigzag": self.dim_Z_lambda,
            "relators": self.relator_count,
            "rank": self.rank_R_lambda,
            "direct": self.direct,
            "p_digest": self.p_digest,
        }


def directness_check(lam: WordType, p: ParameterSequence) -> DirectnessCertificate:
    """Certify whether dim of the relator span equals word count minus
    zigzag count for this type; the rank can never fall below that gap."""
    require_feasible(p)
    matrix = relator_matrix(lam, p)
    dim = matrix.nrows
    zig = len(enumerate_zigzag(lam, p.d))
    rk = matrix.rank()
    if rk < dim - zig:
        raise AssertionError(
            f"rank {rk} below dim-zigzag bound {dim - zig}; elimination is broken"
        )
    return DirectnessCertificate(
        lam,
        p.d,
        p.ctx,
        p.digest(),
        dim,
        zig,
        matrix.ncols,
        rk,
        rk == dim - zig,
    )


def zigzag_indicator_matrix(lam: WordType, p: ParameterSequence) -> SparseMatrix:
    """Indicator columns of the zigzag words inside the word basis of lam."""
    words = enumerate_words(lam, p.d)
    one = p.ctx.one()
    columns = [{r: one} for r, w in enumerate(words) if is_zigzag(w)]
    return SparseMatrix.from_columns(len(words), columns, p.ctx)


def in_R(x: TElement, p: ParameterSequence) -> bool:
    """Membership of x in the relator ideal, decided component by component."""
    require_feasible(p)
    if x.ctx != p.ctx:
        raise CtxMismatch(f"element over {x.ctx}, sequence over {p.ctx}")
    for lam in sorted(x.types(), key=lambda t: t.sort_key()):
        component = x.project(lam)
        words = enumerate_words(lam, p.d)
        row_of = {w: r for r, w in enumerate(words)}
        vec = {row_of[w]: c for w, c in component.terms()}
        ok, _ = in_span(relator_matrix(lam, p), vec)
        if not ok:
            return False
    return True


@dataclass(frozen=True)
class PsiReport:
    d: int
    identities: tuple[tuple[str, bool], ...]
    all_hold: bool

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "identities": [
                {"name": name, "in_relator_ideal": ok} for name, ok in self.identities
            ],
            "all_hold": self.all_hold,
        }


def verify_psi_identities(p: ParameterSequence, allow_large_d: bool = False) -> PsiReport:
    """Check the central-element identities as relator-ideal memberships.

    Builds the deficiency elements delta = 1 - sum(e_i), delta* = 1 - sum(E_i)
    and psi = (delta - delta*)^2, then asserts that e_i delta* e_j matches
    delta_ij psi e_i modulo the relator ideal (and the starred analogue), that
    psi commutes with every generator modulo the ideal, and that the
    deficiencies are idempotent.  Component sizes grow with (d+1)^2, so the
    check refuses d > 2 unless allow_large_d is set.
    """
    if p.d > 2 and not allow_large_d:
        raise UnsupportedDiameter("psi identity suite is restricted to d <= 2 by default")
    require_feasible(p)
    ctx = p.ctx
    d = p.d
    one = TElement.one(ctx)
    eps = [TElement.from_word(Word(False, (i,)), ctx) for i in range(d + 1)]
    eps_star = [TElement.from_word(Word(True, (i,)), ctx) for i in range(d + 1)]
    total = TElement.zero(ctx)
    for e in eps:
        total = total + e
    total_star = TElement.zero(ctx)
    for e in eps_star:
        total_star = total_star + e
    delta = one - total
    delta_star = one - total_star
    diff = delta - delta_star
    psi = diff * diff

    checks: list[tuple[str, TElement]] = []
    for i in range(d + 1):
        for j in range(d + 1):
            lhs = eps[i] * delta_star * eps[j]
            rhs = psi * eps[i] if i == j else TElement.zero(ctx)
            checks.append((f"e{i} delta* e{j} = delta({i},{j}) psi e{i}", lhs - rhs))
            lhs = eps_star[i] * delta * eps_star[j]
            rhs = psi * eps_star[i] if i == j else TElement.zero(ctx)
            checks.append((f"E{i} delta E{j} = delta({i},{j}) psi E{i}", lhs - rhs))
    for i in range(d + 1):
        checks.append((f"[psi, e{i}] = 0", psi * eps[i] - eps[i] * psi))
        checks.append((f"[psi, E{i}] = 0", psi * eps_star[i] - eps_star[i] * psi))
    checks.append(("delta^2 = delta", delta * delta - delta))
    checks.append(("delta*^2 = delta*", delta_star * delta_star - delta_star))

    results = tuple((name, in_R(expr, p)) for name, expr in checks)
    return PsiReport(d, results, all(ok for _, ok in results))
