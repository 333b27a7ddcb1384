"""The one-dimensional chain model: the alternating +1/-1/+1 kernel, the
golden witness measure, lattice energies, and executable stability
certificates built from chain cuts.

A cut certificate rewrites the energy of a nonnegative density as a sum of
nonnegative cut losses plus one perfect square per remaining piece, which is
a machine-checkable proof that the energy is nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .common import GAMMA, InternalInconsistencyError
from .lattice import Density, LatticePotential, autocorrelate

ALTERNATING_VALUES = (1.0, -1.0, 1.0, -1.0, 1.0)


def alternating_potential() -> LatticePotential:
    """The chain kernel with value 1 at offsets 0 and +-2 and -1 at +-1."""
    return LatticePotential("line", ALTERNATING_VALUES)


def witness_measure(periods: int = 0) -> Density:
    """Golden five-periodic weights on [-5P-2, 5P+2].

    Weight 1 on multiples of 5, (sqrt(5)-1)/2 next to them, 0 two steps away.
    Nonnegative by construction and spectrally nonnegative after wrapping,
    yet it pairs negatively with the alternating kernel.
    """
    if periods < 0:
        raise ValueError("periods must be >= 0")
    h = 5 * periods + 2
    m = np.arange(-h, h + 1)
    r = np.mod(m, 5)
    weights = np.where(r == 0, 1.0, np.where((r == 1) | (r == 4), GAMMA, 0.0))
    return Density("line", weights)


def energy(rho: Density, kernel: LatticePotential) -> float:
    """Double-sum energy sum_{m,n} rho(m) kernel(m-n) rho(n), diagonal included."""
    if rho.domain != "line" or kernel.domain != "line":
        raise ValueError("energy is defined for line-domain data")
    acf = autocorrelate(rho)
    m = min(acf.halfwidth, kernel.halfwidth)
    offsets = np.arange(-m, m + 1)
    return float(np.dot(kernel.value(offsets), acf.value(offsets)))


def pairing(kernel: LatticePotential, measure) -> float:
    """Overlap pairing sum_n kernel(n) measure(n) of two line sequences."""
    if kernel.domain != "line" or measure.domain != "line":
        raise ValueError("pairing is defined for line-domain data")
    m = min(kernel.halfwidth, measure.halfwidth)
    offsets = np.arange(-m, m + 1)
    return float(np.dot(kernel.value(offsets), measure.value(offsets)))


@dataclass
class CutCertificate:
    """Energy bookkeeping for the chain-cutting argument.

    ``cuts`` holds (position, loss): the chain was severed between position
    and position + 1 and the interaction energy dropped by the recorded
    loss.  ``pieces`` holds (center, root, energy) for the remaining spans of
    at most three sites with unimodal weights (w_left, w_mid, w_right):
    root = w_left - w_mid + w_right and energy = root^2.  The invariant
    total = sum of losses + sum of piece energies equals the original energy.
    """

    cuts: list[tuple[int, float]]
    pieces: list[tuple[int, float, float]]
    total: float

    def validate(self, reference_energy: float, tol: float = 1e-9) -> None:
        for _, loss in self.cuts:
            if loss < -tol:
                raise InternalInconsistencyError("cut with negative loss")
        for _, root, piece_energy in self.pieces:
            if abs(piece_energy - root * root) > 1e-12:
                raise InternalInconsistencyError("piece energy is not the recorded square")
            if piece_energy < -1e-12:
                raise InternalInconsistencyError("negative piece energy")
        if abs(self.total - reference_energy) > tol:
            raise InternalInconsistencyError(
                f"certificate total {self.total} != energy {reference_energy}")

    def to_json(self) -> dict:
        return {
            "cuts": [[int(pos), float(loss)] for pos, loss in self.cuts],
            "pieces": [[int(c), float(r), float(e)] for c, r, e in self.pieces],
            "total": self.total,
        }


def _find_cut(w: np.ndarray, lo: int, hi: int) -> tuple[int, float] | None:
    """Leftmost admissible cut inside the piece [lo, hi], or None if terminal.

    Right rule: at the first descent w[n] >= w[n+1] (n <= hi-2) sever between
    n+1 and n+2; the lost interaction energy is
        2 (w[n] - w[n+1]) w[n+2] + 2 w[n+1] w[n+3]  >= 0.
    Left rule (mirror): at the first rise w[n-1] <= w[n] (n >= lo+2) sever
    between n-2 and n-1.  Plateaus count as descents, the loss stays
    nonnegative under equality.
    """
    def at(i: int) -> float:
        return w[i] if lo <= i <= hi else 0.0

    for n in range(lo, hi - 1):
        if w[n] >= w[n + 1]:
            loss = 2.0 * (w[n] - w[n + 1]) * at(n + 2) + 2.0 * w[n + 1] * at(n + 3)
            return n + 1, loss
    for n in range(lo + 2, hi + 1):
        if w[n - 1] <= w[n]:
            loss = 2.0 * (w[n] - w[n - 1]) * at(n - 2) + 2.0 * w[n - 1] * at(n - 3)
            return n - 2, loss
    return None


def _piece_record(w: np.ndarray, lo: int, hi: int, offset: int) -> tuple[int, float, float]:
    span = hi - lo + 1
    if span > 3:
        raise InternalInconsistencyError("terminal piece spans more than three sites")
    if span == 3:
        left, mid, right = w[lo], w[lo + 1], w[lo + 2]
        center = lo + 1
    elif span == 2:
        # Degenerate three-point piece, zero-padded on the downhill side.
        if w[lo] >= w[hi]:
            left, mid, right = 0.0, w[lo], w[hi]
            center = lo
        else:
            left, mid, right = w[lo], w[hi], 0.0
            center = hi
    else:
        left, mid, right = 0.0, w[lo], 0.0
        center = lo
    if not (left <= mid >= right):
        raise InternalInconsistencyError("terminal piece weights are not unimodal")
    root = left - mid + right
    return center + offset, root, root * root


def cut_certificate(rho: Density, kernel: LatticePotential) -> CutCertificate:
    """Cut the chain into non-interacting pieces and certify energy >= 0.

    Specific to the alternating kernel (its range-2 structure makes each cut
    loss a two-term nonnegative expression and each terminal piece energy a
    perfect square).  The scan is leftmost-first with a rescan after every
    cut; each cut strictly shrinks a piece, so termination is immediate.
    """
    if kernel.domain != "line" or kernel.halfwidth != 2 or \
            np.max(np.abs(kernel.values - np.asarray(ALTERNATING_VALUES))) > 1e-12:
        raise ValueError("cut certificates are specific to the alternating kernel")
    if rho.domain != "line":
        raise ValueError("cut certificates need a line-domain density")

    w = rho.values
    support = np.nonzero(w)[0]
    offset = -rho.halfwidth
    cuts: list[tuple[int, float]] = []
    pieces: list[tuple[int, float, float]] = []
    stack = [(int(support[0]), int(support[-1]))]
    while stack:
        lo, hi = stack.pop()
        found = _find_cut(w, lo, hi)
        if found is None:
            pieces.append(_piece_record(w, lo, hi, offset))
            continue
        cut_at, loss = found
        cuts.append((cut_at + offset, loss))
        stack.append((cut_at + 1, hi))
        stack.append((lo, cut_at))

    total = float(sum(loss for _, loss in cuts) + sum(e for _, _, e in pieces))
    cert = CutCertificate(cuts=cuts, pieces=pieces, total=total)
    cert.validate(energy(rho, kernel))
    return cert
