"""Laplacian matrices, spectra, and the eigenvalue-sum excess profile."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .graphs import Graph

#: absolute eigenvalue tolerance for computed spectra
SPECTRUM_TOL = 1e-9


class SpectralError(RuntimeError):
    """Eigensolver failure or a spectrum violating its structural invariants."""


@dataclass(frozen=True)
class Spectrum:
    """Laplacian eigenvalues sorted non-increasing, with the tolerance used."""

    values: tuple[float, ...]
    tol: float = SPECTRUM_TOL

    def validate(self, g: Graph):
        n, m = g.n, g.m
        vals = self.values
        if len(vals) != n:
            raise SpectralError(f"expected {n} eigenvalues, got {len(vals)}")
        if n == 0:
            return
        ntol = max(self.tol * n, 1e-7)
        if abs(vals[-1]) > ntol:
            raise SpectralError(f"smallest Laplacian eigenvalue {vals[-1]} != 0")
        if abs(sum(vals) - 2 * m) > ntol:
            raise SpectralError(f"eigenvalue sum {sum(vals)} != 2|E| = {2 * m}")
        if vals[0] > n + ntol:
            raise SpectralError(f"largest eigenvalue {vals[0]} exceeds n = {n}")


def laplacian(g: Graph) -> np.ndarray:
    """Dense Laplacian: degree diagonal, -1 at edges."""
    L = np.zeros((g.n, g.n))
    for u, v in g.edges:
        L[u, v] = L[v, u] = -1.0
        L[u, u] += 1.0
        L[v, v] += 1.0
    return L


def spectrum(g: Graph) -> Spectrum:
    """Eigenvalues of the Laplacian, sorted non-increasing."""
    if g.n == 0:
        return Spectrum(())
    try:
        vals = np.linalg.eigvalsh(laplacian(g))
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigensolver failed: {exc}") from exc
    spec = Spectrum(tuple(float(x) for x in vals[::-1]))
    spec.validate(g)
    return spec


@dataclass(frozen=True)
class EpsProfile:
    """Excess values eps(k) = (sum of k largest Laplacian eigenvalues) - |E|.

    Stores eps for k = 1..n; ``value(k)`` applies the k > n convention,
    which returns |E|.
    """

    eps: tuple[float, ...]
    m: int

    @property
    def n(self) -> int:
        return len(self.eps)

    def value(self, k: int) -> float:
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        if k > self.n:
            return float(self.m)
        return self.eps[k - 1]


def eps_profile(g: Graph, spec: Spectrum | None = None) -> EpsProfile:
    """Running-sum excess profile of the spectrum."""
    if spec is None:
        spec = spectrum(g)
    running = 0.0
    out = []
    for lam in spec.values:
        running += lam
        out.append(running - g.m)
    return EpsProfile(tuple(out), g.m)


def eps(g: Graph, k: int) -> float:
    """The excess eps_k(G); for k > n this is |E| by convention."""
    return eps_profile(g).value(k)
