"""Parameter sequences and parameter arrays: feasibility, beta extraction,
sequence generators, q-Racah detection and construction, the tau/eta product
polynomials, and the parameter-array validator."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from random import Random

from .errors import (
    ConstraintViolated,
    CtxMismatch,
    IndexOutOfRange,
    NotDistinct,
    NotFeasible,
    RootOfUnity,
    UnsupportedDiameter,
)
from .exactfield import FieldCtx, FieldElement


@dataclass(frozen=True)
class ParameterSequence:
    """Candidate eigenvalue and dual eigenvalue lists of a common diameter."""

    ctx: FieldCtx
    d: int
    theta: tuple[FieldElement, ...]
    theta_star: tuple[FieldElement, ...]

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("diameter must be nonnegative")
        if len(self.theta) != self.d + 1 or len(self.theta_star) != self.d + 1:
            raise ValueError(f"need {self.d + 1} entries in each sequence")
        for x in (*self.theta, *self.theta_star):
            if x.ctx != self.ctx:
                raise CtxMismatch(f"entry in {x.ctx}, sequence over {self.ctx}")

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "field": self.ctx.to_json(),
            "theta": [str(x) for x in self.theta],
            "theta_star": [str(x) for x in self.theta_star],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ParameterSequence":
        ctx = FieldCtx.from_json(obj["field"])
        return cls(
            ctx,
            int(obj["d"]),
            tuple(ctx.parse(s) for s in obj["theta"]),
            tuple(ctx.parse(s) for s in obj["theta_star"]),
        )

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class FeasibilityReport:
    distinct_theta: bool
    distinct_theta_star: bool
    ratios_equal: bool
    beta_plus_one: FieldElement | None
    feasible: bool

    def to_json(self) -> dict:
        return {
            "distinct_theta": self.distinct_theta,
            "distinct_theta_star": self.distinct_theta_star,
            "ratios_equal": self.ratios_equal,
            "beta_plus_one": None if self.beta_plus_one is None else str(self.beta_plus_one),
            "feasible": self.feasible,
        }


def _all_distinct(values) -> bool:
    values = list(values)
    return len(set(values)) == len(values)


def check_feasible(p: ParameterSequence) -> FeasibilityReport:
    """Distinctness of both sequences plus the common-ratio condition.

    For d >= 3 the consecutive-difference ratios of both sequences must all
    equal one constant, reported as beta_plus_one; for d <= 2 the ratio
    condition is vacuous and beta_plus_one is undefined.
    """
    distinct = _all_distinct(p.theta)
    distinct_star = _all_distinct(p.theta_star)
    ratios_equal = True
    beta_plus_one = None
    if p.d >= 3:
        ratios = []
        for seq in (p.theta, p.theta_star):
            for i in range(2, p.d):  # ratio index i runs 2..d-1
                den = seq[i - 1] - seq[i]
                if den.is_zero:
                    ratios = None
                    break
                ratios.append((seq[i - 2] - seq[i + 1]) / den)
            if ratios is None:
                break
        if ratios is None or any(r != ratios[0] for r in ratios):
            ratios_equal = False
        else:
            beta_plus_one = ratios[0]
    feasible = distinct and distinct_star and ratios_equal
    return FeasibilityReport(distinct, distinct_star, ratios_equal, beta_plus_one, feasible)


def require_feasible(p: ParameterSequence) -> FeasibilityReport:
    report = check_feasible(p)
    if not report.feasible:
        raise NotFeasible("parameter sequence is not feasible")
    return report


def geometric_sequence(vartheta: FieldElement, d: int, ctx: FieldCtx | None = None) -> ParameterSequence:
    """theta_i = theta*_i = vartheta^i; rejects vartheta with a small root of unity."""
    ctx = ctx or vartheta.ctx
    if vartheta.ctx != ctx:
        raise CtxMismatch(f"{vartheta.ctx} vs {ctx}")
    if vartheta.is_zero:
        raise RootOfUnity("ratio must be nonzero")
    one = ctx.one()
    power = one
    powers = [one]
    for n in range(1, d + 1):
        power = power * vartheta
        if power == one:
            raise RootOfUnity(f"ratio is a root of unity of order {n} <= d")
        powers.append(power)
    seq = tuple(powers)
    return ParameterSequence(ctx, d, seq, seq)


def recurrence_sequence(
    beta: FieldElement, t0: FieldElement, t1: FieldElement, t2: FieldElement, d: int
) -> list[FieldElement]:
    """Extend (t0, t1, t2) by t_i = (beta+1)(t_{i-1} - t_{i-2}) + t_{i-3}.

    Returns t_0..t_d; no distinctness is promised, run check_feasible on the
    assembled sequence.
    """
    if d < 0:
        raise ValueError("diameter must be nonnegative")
    start = [t0, t1, t2][: d + 1]
    bp1 = beta + beta.ctx.one()
    ts = list(start)
    for _ in range(3, d + 1):
        ts.append(bp1 * ts[-1] - bp1 * ts[-2] + ts[-3])
    return ts


def sample_feasible(d: int, ctx: FieldCtx, rng: Random, max_tries: int = 64) -> ParameterSequence:
    """Random feasible sequence: one beta, two random seed triples, retry on
    a distinctness collision."""
    for _ in range(max_tries):
        beta = ctx.random_element(rng)
        theta = recurrence_sequence(
            beta, ctx.random_element(rng), ctx.random_element(rng), ctx.random_element(rng), d
        )
        theta_star = recurrence_sequence(
            beta, ctx.random_element(rng), ctx.random_element(rng), ctx.random_element(rng), d
        )
        p = ParameterSequence(ctx, d, tuple(theta), tuple(theta_star))
        if check_feasible(p).feasible:
            return p
    raise NotFeasible(f"no feasible sample found in {max_tries} tries")


@dataclass(frozen=True)
class QRacahWitness:
    beta: FieldElement
    omega: FieldElement
    omega_star: FieldElement
    is_qracah: bool
    bc: FieldElement | None
    bstar_cstar: FieldElement | None

    def to_json(self) -> dict:
        return {
            "beta": str(self.beta),
            "omega": str(self.omega),
            "omega_star": str(self.omega_star),
            "is_qracah": self.is_qracah,
            "bc": None if self.bc is None else str(self.bc),
            "bstar_cstar": None if self.bstar_cstar is None else str(self.bstar_cstar),
        }


def _omega(beta: FieldElement, a0: FieldElement, a1: FieldElement, a2: FieldElement) -> FieldElement:
    u = a0 - a1
    v = a1 - a2
    return u * u - beta * u * v + v * v


def qracah_witness(p: ParameterSequence) -> QRacahWitness:
    """Decide membership in the q-Racah family and recover bc and b*c*.

    Membership needs beta^2 != 4 and both omega forms nonzero; then
    bc = omega / ((beta-2)^2 (beta+2)) and likewise for the starred form.
    """
    if p.d < 3:
        raise UnsupportedDiameter("q-Racah detection needs d >= 3")
    report = require_feasible(p)
    one = p.ctx.one()
    beta = report.beta_plus_one - one
    omega = _omega(beta, p.theta[0], p.theta[1], p.theta[2])
    omega_star = _omega(beta, p.theta_star[0], p.theta_star[1], p.theta_star[2])
    two = p.ctx.from_integer(2)
    four = p.ctx.from_integer(4)
    is_qracah = beta * beta != four and not omega.is_zero and not omega_star.is_zero
    bc = bstar_cstar = None
    if is_qracah:
        den = (beta - two) * (beta - two) * (beta + two)
        bc = omega / den
        bstar_cstar = omega_star / den
    return QRacahWitness(beta, omega, omega_star, is_qracah, bc, bstar_cstar)


def qracah_construct(
    q: FieldElement,
    alpha: FieldElement,
    b: FieldElement,
    c: FieldElement,
    alpha_star: FieldElement,
    b_star: FieldElement,
    c_star: FieldElement,
    d: int,
) -> ParameterSequence:
    """Build theta_i = alpha + b q^(2i-d) + c q^(d-2i) and its starred mate."""
    ctx = q.ctx
    one = ctx.one()
    if q.is_zero:
        raise ConstraintViolated("q != 0")
    q2 = q * q
    if q2 == one:
        raise ConstraintViolated("q^2 != 1")
    if q2 == -one:
        raise ConstraintViolated("q^2 != -1")
    if b.is_zero or c.is_zero or b_star.is_zero or c_star.is_zero:
        raise ConstraintViolated("b b* c c* != 0")

    def build(shift, scale_up, scale_down):
        return tuple(
            shift + scale_up * q ** (2 * i - d) + scale_down * q ** (d - 2 * i)
            for i in range(d + 1)
        )

    theta = build(alpha, b, c)
    theta_star = build(alpha_star, b_star, c_star)
    if not _all_distinct(theta) or not _all_distinct(theta_star):
        raise NotDistinct("constructed sequence has repeated entries")
    return ParameterSequence(ctx, d, theta, theta_star)


_TAU_KINDS = ("tau", "eta", "tau_star", "eta_star")


def tau_eval(kind: str, i: int, x: FieldElement, p: ParameterSequence) -> FieldElement:
    """Evaluate the degree-i monic product polynomial of the given kind at x.

    tau uses theta_0..theta_{i-1}; eta uses theta_d..theta_{d-i+1}; the
    starred kinds use theta_star.  i = 0 is the empty product.
    """
    if kind not in _TAU_KINDS:
        raise ValueError(f"kind must be one of {_TAU_KINDS}")
    if not 0 <= i <= p.d:
        raise IndexOutOfRange(f"i={i} outside 0..{p.d}")
    seq = p.theta if kind in ("tau", "eta") else p.theta_star
    out = p.ctx.one()
    for h in range(i):
        root = seq[h] if kind.startswith("tau") else seq[p.d - h]
        out = out * (x - root)
    return out


@dataclass(frozen=True)
class ParameterArray:
    seq: ParameterSequence
    zeta: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.zeta) != self.seq.d + 1:
            raise ValueError(f"need {self.seq.d + 1} zeta entries")
        for z in self.zeta:
            if z.ctx != self.seq.ctx:
                raise CtxMismatch(f"zeta entry in {z.ctx}, array over {self.seq.ctx}")

    def to_json(self) -> dict:
        out = self.seq.to_json()
        out["zeta"] = [str(z) for z in self.zeta]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ParameterArray":
        seq = ParameterSequence.from_json(obj)
        return cls(seq, tuple(seq.ctx.parse(s) for s in obj["zeta"]))


@dataclass(frozen=True)
class ValidationReport:
    condition_i: bool
    condition_ii: bool
    zeta0_is_one: bool
    zeta_d_nonzero: bool
    sum_nonzero: bool
    valid: bool

    @property
    def condition_iii(self) -> bool:
        return self.zeta0_is_one and self.zeta_d_nonzero and self.sum_nonzero

    def to_json(self) -> dict:
        return {
            "condition_i_distinct": self.condition_i,
            "condition_ii_ratios": self.condition_ii,
            "condition_iii": {
                "zeta0_is_one": self.zeta0_is_one,
                "zeta_d_nonzero": self.zeta_d_nonzero,
                "nondegeneracy_sum_nonzero": self.sum_nonzero,
            },
            "valid": self.valid,
        }


def validate_parameter_array(arr: ParameterArray) -> ValidationReport:
    """Full classification check: a valid array determines a sharp system,
    unique up to isomorphism."""
    p = arr.seq
    report = check_feasible(p)
    condition_i = report.distinct_theta and report.distinct_theta_star
    condition_ii = report.ratios_equal
    zeta0_is_one = arr.zeta[0] == p.ctx.one()
    zeta_d_nonzero = not arr.zeta[p.d].is_zero
    total = p.ctx.zero()
    for i in range(p.d + 1):
        total = total + (
            tau_eval("eta", p.d - i, p.theta[0], p)
            * tau_eval("eta_star", p.d - i, p.theta_star[0], p)
            * arr.zeta[i]
        )
    sum_nonzero = not total.is_zero
    valid = condition_i and condition_ii and zeta0_is_one and zeta_d_nonzero and sum_nonzero
    return ValidationReport(
        condition_i, condition_ii, zeta0_is_one, zeta_d_nonzero, sum_nonzero, valid
    )
