"""Exact small-scale harmonic analysis on Z_n and on finite sequences over Z.

The containers are deliberately rigid: kernels are even by construction,
densities are nonnegative, spectra are real.  Everything downstream (cone
tests, certificates, continuum constructions) leans on those invariants.

Conventions:
  * cyclic data lives on indices 0..n-1, line data on -h..h (odd length,
    centered, implicitly zero beyond the half-width);
  * the forward transform is unnormalized,
        coef(k) = sum_m p(m) cos(2 pi k m / n),
    and the inverse carries the 1/n factor;
  * autocorrelation uses the standard convention
        mu(k) = sum_m rho(m) rho(m + k).

The transform is the naive O(n^2) cosine sum.  Moduli stay at n <= 64
throughout, so correctness wins over speed and there is no radix machinery.
"""

from __future__ import annotations

import numpy as np

EVENNESS_TOL = 1e-12


def _as_values(array, name: str) -> np.ndarray:
    values = np.asarray(array, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError(f"{name} values must be a nonempty 1-d array")
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{name} values must be finite")
    return values


class _GridFunction:
    """Shared storage/indexing for cyclic and centered line data."""

    __slots__ = ("domain", "values")

    def __init__(self, domain: str, values: np.ndarray) -> None:
        if domain == "cyclic":
            if values.size < 2:
                raise ValueError("cyclic domain needs modulus n >= 2")
        elif domain == "line":
            if values.size % 2 == 0:
                raise ValueError("line domain uses centered odd-length values")
        else:
            raise ValueError(f"unknown domain {domain!r}")
        values = values.copy()
        values.setflags(write=False)
        self.domain = domain
        self.values = values

    @property
    def n(self) -> int:
        if self.domain != "cyclic":
            raise ValueError("n is defined for cyclic domains only")
        return self.values.size

    @property
    def halfwidth(self) -> int:
        if self.domain != "line":
            raise ValueError("halfwidth is defined for line domains only")
        return (self.values.size - 1) // 2

    def value(self, k):
        """Value at index k (cyclic: mod n; line: zero outside the half-width)."""
        k = np.asarray(k, dtype=int)
        if self.domain == "cyclic":
            out = self.values[np.mod(k, self.values.size)]
        else:
            h = self.halfwidth
            idx = np.clip(k + h, 0, self.values.size - 1)
            out = np.where(np.abs(k) <= h, self.values[idx], 0.0)
        return float(out) if out.ndim == 0 else out

    def to_json(self) -> dict:
        if self.domain == "cyclic":
            return {"domain": "cyclic", "n": int(self.n), "values": self.values.tolist()}
        return {"domain": "line", "halfwidth": int(self.halfwidth), "values": self.values.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "_GridFunction":
        domain = obj["domain"]
        values = obj["values"]
        if domain == "cyclic" and obj.get("n") is not None and int(obj["n"]) != len(values):
            raise ValueError("cyclic JSON: n does not match the number of values")
        if domain == "line" and obj.get("halfwidth") is not None:
            if 2 * int(obj["halfwidth"]) + 1 != len(values):
                raise ValueError("line JSON: halfwidth does not match the number of values")
        return cls(domain, values)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.domain!r}, {self.values.tolist()!r})"


class LatticePotential(_GridFunction):
    """Even real kernel on Z_n ("cyclic") or centered on Z ("line").

    Construction symmetrizes the input and rejects it when the asymmetry
    exceeds 1e-12; that guarantee is what keeps every spectrum real.
    """

    def __init__(self, domain: str, values) -> None:
        values = _as_values(values, "kernel")
        if domain == "cyclic" and values.size >= 2:
            mirrored = np.roll(values[::-1], 1)
        elif domain == "line" and values.size % 2 == 1:
            mirrored = values[::-1]
        else:
            mirrored = values
        if values.shape == mirrored.shape and np.max(np.abs(values - mirrored)) > EVENNESS_TOL:
            raise ValueError("kernel is not even within 1e-12")
        super().__init__(domain, 0.5 * (values + mirrored))


class Density(_GridFunction):
    """Nonnegative weight function with at least one strictly positive weight."""

    def __init__(self, domain: str, values) -> None:
        values = _as_values(values, "density")
        if np.min(values) < 0.0:
            raise ValueError("density weights must be nonnegative")
        if np.max(values) <= 0.0:
            raise ValueError("density needs at least one positive weight")
        super().__init__(domain, values)


class Spectrum:
    """Real cosine-transform coefficients of data on Z_n.

    ``even_input`` records whether the transformed data was even; for uneven
    densities the transform keeps only the real (cosine) part and flags it.
    """

    __slots__ = ("n", "coefficients", "even_input")

    def __init__(self, n: int, coefficients, even_input: bool = True) -> None:
        coefficients = _as_values(coefficients, "spectrum")
        if coefficients.size != n:
            raise ValueError("spectrum length must equal the modulus")
        mirrored = np.roll(coefficients[::-1], 1)
        if np.max(np.abs(coefficients - mirrored)) > 1e-9 * max(1.0, np.max(np.abs(coefficients))):
            raise ValueError("spectrum coefficients must satisfy coef(k) == coef(n-k)")
        coefficients = coefficients.copy()
        coefficients.setflags(write=False)
        self.n = int(n)
        self.coefficients = coefficients
        self.even_input = bool(even_input)

    @property
    def min_coefficient(self) -> float:
        return float(np.min(self.coefficients))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coefficients": self.coefficients.tolist(),
            "even_input": self.even_input,
        }

    def __repr__(self) -> str:
        return f"Spectrum({self.n}, {self.coefficients.tolist()!r})"


def _cosine_matrix(n: int) -> np.ndarray:
    k = np.arange(n)
    return np.cos(2.0 * np.pi * np.outer(k, k) / n)


def dft(p: _GridFunction) -> Spectrum:
    """Unnormalized real cosine transform of cyclic data.

    coef(k) = sum_m p(m) cos(2 pi k m / n).  Imaginary parts vanish for even
    input; uneven densities transform to the real part with even_input=False.
    Line-domain input is rejected, wrap it onto Z_n first.
    """
    if p.domain != "cyclic":
        raise ValueError("dft needs cyclic data; wrap line data onto Z_n first")
    values = p.values
    n = values.size
    mirrored = np.roll(values[::-1], 1)
    even_input = bool(np.max(np.abs(values - mirrored)) <= EVENNESS_TOL)
    coefficients = _cosine_matrix(n) @ values
    return Spectrum(n, coefficients, even_input=even_input)


def inverse_dft(spectrum: Spectrum) -> LatticePotential:
    """Inverse of :func:`dft`: p(m) = (1/n) sum_k coef(k) cos(2 pi k m / n).

    Round-trips even input; uneven input comes back as its even part.
    """
    n = spectrum.n
    values = (_cosine_matrix(n) @ spectrum.coefficients) / n
    return LatticePotential("cyclic", values)


def autocorrelate(rho: Density) -> LatticePotential:
    """Autocorrelation mu(k) = sum_m rho(m) rho(m+k); always an even sequence.

    Cyclic input correlates mod n.  Line input is trimmed to its support and
    the result's half-width equals the support width, so mu(k) vanishes for
    offsets beyond the support span.
    """
    w = rho.values
    if rho.domain == "cyclic":
        n = w.size
        out = np.array([float(w @ np.roll(w, -k)) for k in range(n)])
        return LatticePotential("cyclic", out)
    support = np.nonzero(w)[0]
    seg = w[support[0]: support[-1] + 1]
    full = np.correlate(seg, seg, mode="full")
    return LatticePotential("line", full)


def convolve(a: _GridFunction, b: _GridFunction):
    """Convolution on a shared domain.

    Cyclic: out(k) = sum_m a(m) b(k-m mod n).  Line: ordinary convolution of
    the centered arrays, output half-width is the sum of the inputs'.
    Returns a LatticePotential when both inputs are kernels, a Density when
    both are densities, otherwise the raw centered array.
    """
    if a.domain != b.domain:
        raise ValueError("convolve needs matching domains")
    if a.domain == "cyclic":
        if a.values.size != b.values.size:
            raise ValueError("convolve needs matching moduli")
        n = a.values.size
        idx = np.mod(np.arange(n)[:, None] - np.arange(n)[None, :], n)
        out = (b.values[idx] * a.values[None, :]).sum(axis=1)
    else:
        out = np.convolve(a.values, b.values)
    if isinstance(a, LatticePotential) and isinstance(b, LatticePotential):
        return LatticePotential(a.domain, out)
    if isinstance(a, Density) and isinstance(b, Density):
        return Density(a.domain, out)
    return out


def wrap(p: _GridFunction, n: int):
    """Fold line data onto Z_n: out(k) = sum_j p(k + j n).

    Values beyond n fold repeatedly; evenness and nonnegativity survive the
    fold, so the wrapped object keeps its class.
    """
    if p.domain != "line":
        raise ValueError("wrap folds line data; input is already cyclic")
    if n < 2:
        raise ValueError("wrap needs modulus n >= 2")
    h = p.halfwidth
    out = np.zeros(n)
    np.add.at(out, np.mod(np.arange(-h, h + 1), n), p.values)
    return type(p)("cyclic", out)
