"""Independent reference implementations used only by the tests.

Nothing here imports the package. The standard Dirac evolver hard-codes the
alpha/beta matrices, propagates with the closed form
exp(-iHt) = cos(Et) - i sin(Et) H/E (valid because H^2 = E^2), evaluates at
absolute time instead of stepping, and computes the circular centroid from
neighbouring momentum modes instead of an inverse FFT.
"""
import math

import mpmath
import numpy as np

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)
I2 = np.eye(2, dtype=complex)

ALPHA_X = np.block([[Z2, SX], [SX, Z2]])
BETA = np.block([[I2, Z2], [Z2, -I2]])


def dispersion_e2_exact(m, alpha, ell, p, dps=50):
    """p^2 + m^2 + alpha ell^2 p^4 summed term by term at ``dps`` digits."""
    with mpmath.workdps(dps):
        m, alpha, ell, p = (mpmath.mpf(str(v)) for v in (m, alpha, ell, p))
        return p ** 2 + m ** 2 + alpha * ell ** 2 * p ** 4


def central_difference(f, x, h=1e-5):
    return (f(x + h) - f(x - h)) / (2 * h)


def sx_eigenvector(spin):
    """Eigenvector of sigma_x, phase chosen as in the library: (1,1)/rt2 and (-1,1)/rt2."""
    return np.array([1.0, 1.0]) / math.sqrt(2) if spin == 1 else np.array([-1.0, 1.0]) / math.sqrt(2)


def standard_dirac_spinor(m, pvec, u):
    """Textbook positive-energy spinor sqrt((E+m)/2E) (u, s.p u / (E+m))."""
    pvec = np.asarray(pvec, dtype=float)
    e = math.sqrt(m * m + pvec @ pvec)
    sp = pvec[0] * SX + pvec[1] * SY + pvec[2] * SZ
    return math.sqrt((e + m) / (2 * e)) * np.concatenate([u, sp @ u / (e + m)])


class StandardDiracEvolver1D:
    """Free Dirac equation (no quartic term) on a periodic box, motion along x."""

    def __init__(self, m, n_modes, box_length):
        self.m = m
        self.n = n_modes
        self.L = box_length
        k = np.concatenate([np.arange(0, n_modes // 2), np.arange(-n_modes // 2, 0)])
        self.p = 2 * math.pi * k / box_length
        self.E = np.sqrt(self.p ** 2 + m * m)
        self.H = self.p[:, None, None] * ALPHA_X + m * BETA

    def gaussian(self, p0, width, spin, positive):
        env = np.exp(-((self.p - p0) ** 2) / (4 * width ** 2))
        u = sx_eigenvector(spin)
        if positive:
            spinors = np.array([standard_dirac_spinor(self.m, (pk, 0, 0), u) for pk in self.p])
        else:
            spinors = np.tile(np.concatenate([u, [0, 0]]), (self.n, 1))
        a = env[:, None] * spinors
        return a / math.sqrt(np.sum(np.abs(a) ** 2))

    def evolve(self, a0, t):
        c = np.cos(self.E * t)[:, None, None]
        s = np.sin(self.E * t)[:, None, None]
        e = self.E[:, None, None]
        u = c * np.eye(4) - 1j * s * self.H / e
        return np.einsum("kab,kb->ka", u, a0)

    def centroid(self, a, previous=None):
        z = np.sum(np.conj(np.roll(a, -1, axis=0)) * a)
        x = self.L * np.angle(z) / (2 * math.pi)
        if previous is not None:
            x += self.L * np.round((previous - x) / self.L)
        return x

    def x_series(self, a0, times):
        xs, prev = [], None
        for t in times:
            prev = self.centroid(self.evolve(a0, t), prev)
            xs.append(prev)
        return np.array(xs)
