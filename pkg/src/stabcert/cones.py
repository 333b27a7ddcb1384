"""Membership tests and certificates for the cones of nonnegative, positive
definite and stable kernels, and for the decomposition question
"nonnegative part + positive-definite part".

Every verdict that leaves this module is backed by a certificate that can be
re-checked from raw values, independent of whatever solver produced it:

  * DecompositionCertificate - an explicit nonnegative f with p - f
    spectrally nonnegative;
  * SeparatingCertificate - a measure that is nonnegative, spectrally
    nonnegative, and pairs strictly negatively with p (so no decomposition
    can exist);
  * CopositivityVerdict - either an exhaustive face-enumeration record or a
    nonnegative witness density with strictly negative energy.

Decision tolerance is 1e-9 throughout; golden closed forms are asserted at
1e-12 by the callers that know them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import simplex
from .common import GAMMA, TOL, InternalInconsistencyError, UnresolvedError
from .lattice import Density, LatticePotential, dft

MAX_FACE_DIM = 16
MAX_MODULUS = 64


def is_nonnegative(p: LatticePotential | Density, tol: float = TOL) -> bool:
    """Pointwise test: no value below -tol."""
    return bool(np.min(p.values) >= -tol)


def is_positive_definite(p: LatticePotential, tol: float = TOL) -> bool:
    """Bochner test on Z_n: every cosine-transform coefficient >= -tol."""
    if p.domain != "cyclic":
        raise ValueError("positive definiteness is tested on Z_n; wrap line kernels first")
    return bool(dft(p).min_coefficient >= -tol)


# ---------------------------------------------------------------------------
# copositivity of the energy quadratic form
# ---------------------------------------------------------------------------

def quadratic_matrix(p: LatticePotential, window: int | None = None) -> np.ndarray:
    """Matrix of the energy form: circulant for Z_n, Toeplitz window for line kernels."""
    if p.domain == "cyclic":
        if window is not None:
            raise ValueError("window applies to line kernels only")
        n = p.n
        return p.value(np.subtract.outer(np.arange(n), np.arange(n)))
    if window is None:
        raise ValueError("line kernels need a finite window")
    if window < 1:
        raise ValueError("window must be >= 1")
    return p.value(np.subtract.outer(np.arange(window), np.arange(window)))


def _project_simplex(x: np.ndarray) -> np.ndarray:
    u = np.sort(x)[::-1]
    css = np.cumsum(u) - 1.0
    rho = np.nonzero(u - css / np.arange(1, x.size + 1) > 0)[0][-1]
    return np.maximum(x - css[rho] / (rho + 1.0), 0.0)


def _projected_gradient_min(A: np.ndarray, seed: int,
                            restarts: int = 24, iters: int = 400) -> float:
    """Best quadratic-form value found on the simplex by seeded restarts."""
    rng = np.random.default_rng(seed)
    n = A.shape[0]
    spectral = np.linalg.norm(A, 2)
    step = 0.5 / max(spectral, 1e-12)
    best = np.inf
    starts = [np.full(n, 1.0 / n)]
    starts += [np.eye(n)[i] for i in range(min(n, 8))]
    while len(starts) < restarts:
        starts.append(rng.dirichlet(np.ones(n)))
    for x in starts:
        x = x.copy()
        for _ in range(iters):
            x = _project_simplex(x - step * 2.0 * (A @ x))
        best = min(best, float(x @ A @ x))
    return best


@dataclass
class FaceRecord:
    support: tuple[int, ...]
    value: float


@dataclass
class CopositivityVerdict:
    """Outcome of exhaustive face enumeration for x'Ax over x >= 0.

    ``proof`` lists every face that carries an interior critical point of the
    form, together with its critical value; ``min_value`` is the exact
    minimum of the form over the probability simplex.  A negative minimum
    comes with an explicit witness density.
    """

    copositive: bool
    min_value: float
    witness: Density | None
    witness_vector: np.ndarray | None
    proof: list[FaceRecord]
    minimizers: list[tuple[int, ...]]
    seed: int
    tol: float
    matrix: np.ndarray = field(repr=False)

    def validate(self) -> None:
        A = self.matrix
        if self.copositive:
            for record in self.proof:
                if record.value < -self.tol:
                    raise InternalInconsistencyError("copositive verdict with a negative face record")
            if np.min(np.diag(A)) < -self.tol:
                raise InternalInconsistencyError("copositive verdict with a negative diagonal")
        else:
            if self.witness_vector is None:
                raise InternalInconsistencyError("negative verdict without a witness")
            w = self.witness_vector
            if np.min(w) < -1e-15 or w @ A @ w >= -self.tol:
                raise InternalInconsistencyError("witness does not reproduce a negative energy")

    def to_json(self) -> dict:
        return {
            "type": "copositive" if self.copositive else "not-copositive",
            "values": [] if self.witness_vector is None else self.witness_vector.tolist(),
            "min_value": self.min_value,
            "minimizers": [list(s) for s in self.minimizers],
            "proof": [[list(r.support), r.value] for r in self.proof],
            "tol": self.tol,
            "seed": self.seed,
        }


def _face_records(A: np.ndarray) -> list[tuple[tuple[int, ...], float, np.ndarray]]:
    """Critical values of x'Ax on the relative interior of every simplex face.

    On face S the stationarity conditions are A_S y = lambda 1, sum y = 1,
    solved through the bordered system [[A_S, -1], [1', 0]] so that critical
    points with lambda = 0 (null directions of singular faces) are found as
    well; the critical value is lambda.  For nonsingular A_S this reduces to
    the classic rule: solve A_S z = 1, value 1/sum(z).  Only solutions with
    y strictly positive are interior to the face; critical points on the
    boundary reappear as records of the sub-faces, which the enumeration
    visits anyway.  Degenerate (singular) bordered systems go through a
    least-squares solve with a residual gate, which picks one point of the
    critical manifold; the value is constant along that manifold.
    """
    n = A.shape[0]
    positive = 1e-12
    out = []
    for size in range(1, n + 1):
        for support in combinations(range(n), size):
            sub = A[np.ix_(support, support)]
            bordered = np.zeros((size + 1, size + 1))
            bordered[:size, :size] = sub
            bordered[:size, size] = -1.0
            bordered[size, :size] = 1.0
            rhs = np.zeros(size + 1)
            rhs[size] = 1.0
            try:
                sol = np.linalg.solve(bordered, rhs)
            except np.linalg.LinAlgError:
                sol, *_ = np.linalg.lstsq(bordered, rhs, rcond=None)
            if not np.all(np.isfinite(sol)):
                continue
            if np.max(np.abs(bordered @ sol - rhs)) > 1e-8 * max(1.0, float(np.max(np.abs(sol)))):
                continue
            y = sol[:size]
            lam = float(sol[size])
            if np.all(y > positive):
                point = np.zeros(n)
                point[list(support)] = y
                out.append((support, lam, point))
    return out


def copositivity_verdict(p: LatticePotential, window: int | None = None,
                         tol: float = TOL, seed: int = 0,
                         cross_check: bool = True) -> CopositivityVerdict:
    """Exact copositivity of the energy form by face enumeration.

    Cyclic kernels use the full circulant; line kernels use the Toeplitz
    window of the given size.  Dimensions are capped at 16 because the
    enumeration is exponential.  A seeded projected-gradient minimizer over
    the simplex cross-checks the verdict and raises on disagreement.
    """
    A = quadratic_matrix(p, window)
    n = A.shape[0]
    if n > MAX_FACE_DIM:
        raise ValueError(f"dimension {n} too large for face enumeration (cap {MAX_FACE_DIM})")

    records = _face_records(A)
    diag = np.diag(A)
    min_value = float(np.min(diag))
    argmin_point = None
    minimizers: list[tuple[int, ...]] = []
    for support, value, point in records:
        if value < min_value - 1e-15:
            min_value = value
            argmin_point = point
    if argmin_point is None:
        i = int(np.argmin(diag))
        argmin_point = np.zeros(n)
        argmin_point[i] = 1.0
        minimizers = [(i,)]
    for support, value, _ in records:
        if abs(value - min_value) <= 1e-12 and support not in minimizers:
            minimizers.append(support)
    for i in range(n):
        if abs(diag[i] - min_value) <= 1e-12 and (i,) not in minimizers:
            minimizers.append((i,))

    copositive = min_value >= -tol
    witness_vector = None
    witness = None
    if not copositive:
        witness_vector = argmin_point
        if p.domain == "cyclic":
            witness = Density("cyclic", witness_vector)
        else:
            pad = witness_vector if n % 2 == 1 else np.append(witness_vector, 0.0)
            witness = Density("line", pad)

    if cross_check:
        sampled = _projected_gradient_min(A, seed)
        if sampled < min_value - 1e-9:
            raise InternalInconsistencyError(
                f"sampled minimum {sampled} undercuts enumerated minimum {min_value}")

    verdict = CopositivityVerdict(
        copositive=copositive,
        min_value=min_value,
        witness=witness,
        witness_vector=witness_vector,
        proof=[FaceRecord(s, v) for s, v, _ in records],
        minimizers=minimizers,
        seed=seed,
        tol=tol,
        matrix=A,
    )
    verdict.validate()
    return verdict


# ---------------------------------------------------------------------------
# the decomposition question and its certificates
# ---------------------------------------------------------------------------

@dataclass
class DecompositionCertificate:
    """p = f + g with f pointwise nonnegative and g spectrally nonnegative."""

    f: LatticePotential
    g: LatticePotential
    tol: float

    def validate(self, p: LatticePotential) -> None:
        if np.min(self.f.values) < -self.tol:
            raise InternalInconsistencyError("decomposition part f has a negative value")
        if dft(self.g).min_coefficient < -self.tol:
            raise InternalInconsistencyError("decomposition part g has a negative spectrum")
        if np.max(np.abs(self.f.values + self.g.values - p.values)) > 1e-12:
            raise InternalInconsistencyError("decomposition does not reconstruct the kernel")

    def to_json(self) -> dict:
        return {
            "type": "decomposition",
            "values": self.f.values.tolist(),
            "remainder": self.g.values.tolist(),
            "tol": self.tol,
        }


@dataclass
class SeparatingCertificate:
    """Measure mu >= 0 with mu-hat >= 0 and sum p(m) mu(m) < 0, normalized to mu(0) = 1."""

    mu: LatticePotential
    pairing: float
    tol: float

    def validate(self, p: LatticePotential) -> None:
        if np.min(self.mu.values) < -self.tol:
            raise InternalInconsistencyError("separating measure has a negative value")
        if dft(self.mu).min_coefficient < -self.tol:
            raise InternalInconsistencyError("separating measure has a negative spectrum")
        pairing = float(p.values @ self.mu.values)
        if abs(pairing - self.pairing) > 1e-9:
            raise InternalInconsistencyError("recorded pairing does not match the measure")
        if pairing >= -self.tol:
            raise InternalInconsistencyError("separating measure does not pair negatively")

    def to_json(self) -> dict:
        return {
            "type": "separating",
            "values": self.mu.values.tolist(),
            "pairing": self.pairing,
            "tol": self.tol,
        }


def _reduced_transform(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Multiplicities and cosine table for the distinct even coordinates 0..n//2."""
    k = n // 2 + 1
    j = np.arange(k)
    mult = np.where((j == 0) | ((n % 2 == 0) & (j == n // 2)), 1.0, 2.0)
    cos_table = np.cos(2.0 * np.pi * np.outer(j, j) / n)
    return mult, cos_table


def _expand_even(reduced: np.ndarray, n: int) -> np.ndarray:
    full = np.zeros(n)
    k = reduced.size
    full[:k] = reduced
    for j in range(1, k):
        full[n - j] = reduced[j]
    return full


def decompose(p: LatticePotential,
              tol: float = TOL) -> DecompositionCertificate | SeparatingCertificate:
    """Decide whether p splits into nonnegative + positive definite on Z_n.

    Phase one is an LP feasibility run for an even f >= 0 whose removal
    leaves a nonnegative spectrum (the returned f has minimal total mass).
    When that is infeasible, a second LP minimizes the pairing sum
    p(m) mu(m) over the slice of measures with mu(0) = 1 that are both
    nonnegative and spectrally nonnegative; its optimum is the separating
    certificate.  Both certificates are re-validated from raw values before
    they are returned, so a solver bug can surface only as UnresolvedError,
    never as a wrong certificate.
    """
    if p.domain != "cyclic":
        raise ValueError("decompose works on Z_n kernels")
    n = p.n
    if n > MAX_MODULUS:
        raise ValueError(f"modulus {n} too large (cap {MAX_MODULUS})")
    mult, cos_table = _reduced_transform(n)
    k = mult.size
    spectrum = dft(p).coefficients[:k]
    # Roundoff slack: exactly-zero spectral coefficients land at +-1e-16 in
    # floats; the certificate contract is >= -tol, so kernels that are
    # spectrally nonnegative up to that noise must decompose with f = 0.
    slack = 1e-12 * max(1.0, float(np.max(np.abs(spectrum))))

    try:
        feas = simplex.solve_lp(mult, mult[None, :] * cos_table, spectrum + slack)
    except simplex.SimplexStall as exc:
        raise UnresolvedError("decomposition LP stalled") from exc

    if feas.status == simplex.OPTIMAL:
        f = LatticePotential("cyclic", _expand_even(feas.x, n))
        g = LatticePotential("cyclic", p.values - f.values)
        cert = DecompositionCertificate(f=f, g=g, tol=tol)
        cert.validate(p)
        return cert
    if feas.status != simplex.INFEASIBLE:
        raise UnresolvedError(f"decomposition LP ended with status {feas.status}")

    # No decomposition exists; produce the most violating separating measure.
    c = mult[1:] * p.values[1:k]
    A = -(mult[1:][None, :] * cos_table[:, 1:])
    b = np.ones(k)
    try:
        sep = simplex.solve_lp(c, A, b)
    except simplex.SimplexStall as exc:
        raise UnresolvedError("separator LP stalled") from exc
    if sep.status != simplex.OPTIMAL:
        raise UnresolvedError(f"separator LP ended with status {sep.status}")

    mu_vals = _expand_even(np.concatenate([[1.0], sep.x]), n)
    mu = LatticePotential("cyclic", mu_vals)
    pairing = float(p.values @ mu.values)
    if pairing >= -tol:
        raise UnresolvedError("borderline kernel: no strict separator within tolerance")
    cert = SeparatingCertificate(mu=mu, pairing=pairing, tol=tol)
    cert.validate(p)
    return cert


# ---------------------------------------------------------------------------
# dual-slice geometry on Z_5
# ---------------------------------------------------------------------------

@dataclass
class VertexSet:
    """Extreme points (mu(1), mu(2)) of the dual slice {mu(0)=1} on Z_5."""

    vertices: list[tuple[float, float]]

    def measures(self) -> list[LatticePotential]:
        return [LatticePotential("cyclic", [1.0, a, b, b, a]) for a, b in self.vertices]

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}


def dual_slice_vertices_z5(tol: float = 1e-9) -> VertexSet:
    """Vertices of {(mu1, mu2) : mu1, mu2 >= 0 and the Z_5 spectrum stays >= 0}.

    The constraints are the two sign conditions and the two nontrivial
    spectral rows 1 + 2 mu1 cos(2 pi k/5) + 2 mu2 cos(4 pi k/5) >= 0, k = 1, 2.
    Vertices come from pairwise intersections filtered for feasibility.
    """
    c1, c2 = np.cos(2.0 * np.pi / 5.0), np.cos(4.0 * np.pi / 5.0)
    rows = np.array([
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [2.0 * c1, 2.0 * c2, 1.0],
        [2.0 * c2, 2.0 * c1, 1.0],
    ])
    found: list[tuple[float, float]] = []
    for i, j in combinations(range(4), 2):
        M = rows[[i, j], :2]
        rhs = -rows[[i, j], 2]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        v = np.linalg.solve(M, rhs)
        if np.min(rows[:, :2] @ v + rows[:, 2]) < -tol:
            continue
        vertex = (float(v[0]), float(v[1]))
        if not any(abs(vertex[0] - a) <= 1e-9 and abs(vertex[1] - b) <= 1e-9 for a, b in found):
            found.append(vertex)
    found.sort()
    if len(found) != 4:
        raise InternalInconsistencyError(f"expected 4 dual-slice vertices, found {len(found)}")
    return VertexSet(vertices=found)


def correlation_bound_holds(mu: LatticePotential, rho: Density | None = None,
                            tol: float = TOL) -> bool:
    """Check mu(1) <= (sum of mu) / 4 for correlation measures.

    Autocorrelations of nonnegative five-point densities satisfy the bound
    with the total taken over the full support; when rho is supplied, the
    total is also checked against (sum rho)^2, which holds exactly for both
    the line and the wrapped reading.
    """
    total = float(np.sum(mu.values))
    if rho is not None:
        s = float(np.sum(rho.values))
        if abs(total - s * s) > 1e-9:
            raise InternalInconsistencyError("total correlation mass differs from (sum rho)^2")
    return bool(mu.value(1) <= total / 4.0 + tol)


# ---------------------------------------------------------------------------
# threshold scan along the one-parameter family on Z_5
# ---------------------------------------------------------------------------

def family_kernel_z5(a: float) -> LatticePotential:
    """The Z_5 family (1, a, 1, 1, a): unit self- and next-nearest couplings."""
    return LatticePotential("cyclic", [1.0, a, 1.0, 1.0, a])


@dataclass
class ThresholdProbe:
    a: float
    feasible: bool
    certificate_norm: float


@dataclass
class ThresholdScanResult:
    a_star: float
    probes: list[ThresholdProbe]
    tol: float

    def to_json(self) -> dict:
        return {
            "a_star": self.a_star,
            "tol": self.tol,
            "probes": [[p.a, p.feasible, p.certificate_norm] for p in self.probes],
        }


def threshold_scan(lo: float = -1.0, hi: float = -0.5, tol: float = 1e-6,
                   family=family_kernel_z5) -> ThresholdScanResult:
    """Bisect the decomposability flip point of the kernel family.

    The bracket must contain exactly one feasibility change; intervals where
    both endpoints agree are rejected.  Probes record every LP call as
    (a, feasible, certificate norm), the norm being max|f| for a
    decomposition and |pairing| for a separator.
    """
    if not hi > lo:
        raise ValueError("need lo < hi")
    probes: list[ThresholdProbe] = []

    def probe(a: float) -> bool:
        cert = decompose(family(a))
        feasible = isinstance(cert, DecompositionCertificate)
        norm = float(np.max(np.abs(cert.f.values))) if feasible else abs(cert.pairing)
        probes.append(ThresholdProbe(a=a, feasible=feasible, certificate_norm=norm))
        return feasible

    feas_lo = probe(lo)
    feas_hi = probe(hi)
    if feas_lo == feas_hi:
        raise ValueError("no feasibility change on the bracket; nothing to bisect")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if probe(mid) == feas_lo:
            lo = mid
        else:
            hi = mid
    return ThresholdScanResult(a_star=0.5 * (lo + hi), probes=probes, tol=tol)


GOLDEN_SEPARATOR = np.array([1.0, GAMMA, 0.0, 0.0, GAMMA])
