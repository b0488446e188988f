"""The polynomial side: monomials in d+1 commuting variables, the
interleaving bijection onto zigzag words of bracket type, the triangular
change-of-basis matrix, and the bracket-type directness evidence report."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import NotZigzagBracketType, UnsupportedDiameter
from .exactfield import FieldCtx
from .linalg import SparseMatrix
from .params import ParameterSequence, require_feasible, tau_eval
from .relators import DirectnessCertificate, directness_check
from .words import Word, bracket_degree, bracket_type, is_zigzag, type_of


@dataclass(frozen=True)
class Monomial:
    """Commuting product of variables, stored as a nonincreasing index tuple."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if any(i < 0 for i in self.indices):
            raise ValueError("negative variable index")
        if any(a < b for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("indices must be nonincreasing")

    @property
    def degree(self) -> int:
        return len(self.indices)

    def __repr__(self):
        if not self.indices:
            return "Monomial(1)"
        return "Monomial(" + " ".join(f"x{i}" for i in self.indices) + ")"


def monomials(n: int, d: int) -> list[Monomial]:
    """All degree-n monomials in x_0..x_d, descending lexicographic order."""
    if n < 0 or d < 0:
        raise ValueError("need n >= 0 and d >= 0")
    tuples = [
        tuple(reversed(c)) for c in combinations_with_replacement(range(d + 1), n)
    ]
    return [Monomial(t) for t in sorted(tuples, reverse=True)]


def natural_map(m: Monomial) -> Word:
    """Interleave E0 around the variables: x_a x_b .. -> E0 e_a E0 e_b .. E0.

    The image is always a zigzag word of bracket type [degree].
    """
    indices = [0]
    for y in m.indices:
        indices.append(y)
        indices.append(0)
    return Word(True, tuple(indices))


def natural_inverse(word: Word) -> Monomial:
    """Recover the monomial from a zigzag bracket-type word."""
    lam = type_of(word)
    if bracket_degree(lam) is None or not is_zigzag(word):
        raise NotZigzagBracketType(f"{word!r} is not a zigzag word of bracket type")
    return Monomial(tuple(word.indices[k] for k in range(1, word.length, 2)))


def phi_matrix(p: ParameterSequence) -> SparseMatrix:
    """d x d change-of-basis matrix with (i, j) entry tau_i(theta_j), 1-based.

    For a feasible sequence the matrix is upper triangular with nonzero
    diagonal (theta_j is a root of tau_i exactly when j < i), hence rank d.
    """
    if p.d < 1:
        raise UnsupportedDiameter("change-of-basis matrix needs d >= 1")
    require_feasible(p)
    entries = []
    for i in range(1, p.d + 1):
        for j in range(1, p.d + 1):
            val = tau_eval("tau", i, p.theta[j], p)
            if j < i and not val.is_zero:
                raise AssertionError("matrix not upper triangular; tau roots are off")
            if j == i and val.is_zero:
                raise AssertionError("zero diagonal entry; sequence cannot be feasible")
            if not val.is_zero:
                entries.append((i - 1, j - 1, val))
    return SparseMatrix.from_entries(p.d, p.d, entries, p.ctx)


@dataclass(frozen=True)
class MuReport:
    """Directness certificates for bracket types 0..n_max.

    The verdict only covers the tested range; it is finite evidence, not a
    proof over all degrees.
    """

    p_digest: str
    d: int
    ctx: FieldCtx
    n_max: int
    per_n: tuple[tuple[int, DirectnessCertificate], ...]
    mu_isomorphism_verdict: bool

    def to_json(self) -> dict:
        return {
            "p_digest": self.p_digest,
            "d": self.d,
            "field": self.ctx.to_json(),
            "n_max": self.n_max,
            "certificates": [cert.to_json() for _, cert in self.per_n],
            "evidence_up_to_n_max": self.mu_isomorphism_verdict,
            "equivalences": [
                "bracket type [n] direct for all n"
                " <=> monomial map onto the corner algebra is an isomorphism",
                "corner-algebra map over d+1 variables is an isomorphism"
                " <=> the d-variable map is (triangular change of basis)",
            ],
            "note": (
                "verdict covers bracket types 0..n_max only; "
                "the full statement ranges over all n"
            ),
        }


def mu_verification(p: ParameterSequence, n_max: int, workers: int = 1) -> MuReport:
    """Run directness checks on bracket types [0..n_max] and fold the verdict."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    require_feasible(p)
    degrees = list(range(n_max + 1))
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(lambda n: directness_check(bracket_type(n), p), degrees))
    else:
        certs = [directness_check(bracket_type(n), p) for n in degrees]
    per_n = tuple(zip(degrees, certs))
    verdict = all(cert.direct for cert in certs)
    return MuReport(p.digest(), p.d, p.ctx, n_max, per_n, verdict)
