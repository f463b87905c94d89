"""Doubly periodic spectral grid and field container.

The physical domain is a 2-pi periodic strip in the streamwise direction
crossed with a periodic box of half-length pi*L_v in the transverse
direction.  Transverse wavenumbers are eta_j = j / L_v, so L_v controls the
frequency resolution d_eta = 1 / L_v.  Fields are stored as dense complex
coefficient arrays over the retained rectangle |k| <= K_x, |j| <= M_v in
centered order (k ascending along axis 0, j ascending along axis 1).

Collocation sizes satisfy N_z >= 3*K_x + 1 and N_v >= 3*M_v + 1 so that
quadratic products of retained modes alias only into discarded modes
(exact 2/3-rule dealiasing by truncation).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.fft import next_fast_len

__all__ = [
    "Grid",
    "SpectralField",
    "to_physical",
    "from_physical",
    "to_physical_1d",
    "from_physical_1d",
    "gevrey_norm",
    "sobolev_norm",
    "l2_norm",
    "project_modes",
    "lp_project",
    "lp_low",
    "dyadic_shells",
    "save_field",
    "load_field",
]

_MAGIC = b"COUETTE1"


@dataclass(frozen=True)
class Grid:
    """Spectral truncation parameters and derived wavenumber arrays.

    Parameters
    ----------
    K_x : int
        Largest retained streamwise mode; k runs over [-K_x, K_x].
    M_v : int
        Largest retained transverse index; j runs over [-M_v, M_v].
    L_v : float
        Transverse box half-length in units of pi; eta_j = j / L_v.
    N_z, N_v : int, optional
        Collocation sizes.  Default to fast FFT lengths >= 3*K + 1.
    """

    K_x: int
    M_v: int
    L_v: float
    N_z: int = 0
    N_v: int = 0
    k: np.ndarray = field(init=False, repr=False, compare=False)
    j: np.ndarray = field(init=False, repr=False, compare=False)
    eta: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.K_x < 1 or self.M_v < 1:
            raise ValueError("K_x and M_v must be positive")
        if self.L_v <= 0:
            raise ValueError("L_v must be positive")
        if self.N_z == 0:
            object.__setattr__(self, "N_z", next_fast_len(3 * self.K_x + 1))
        if self.N_v == 0:
            object.__setattr__(self, "N_v", next_fast_len(3 * self.M_v + 1))
        if self.N_z < 3 * self.K_x + 1:
            raise ValueError(f"N_z={self.N_z} < 3*K_x+1={3 * self.K_x + 1}")
        if self.N_v < 3 * self.M_v + 1:
            raise ValueError(f"N_v={self.N_v} < 3*M_v+1={3 * self.M_v + 1}")
        object.__setattr__(self, "k", np.arange(-self.K_x, self.K_x + 1))
        object.__setattr__(self, "j", np.arange(-self.M_v, self.M_v + 1))
        object.__setattr__(self, "eta", self.j / self.L_v)

    @property
    def shape(self):
        """Coefficient array shape (2*K_x+1, 2*M_v+1)."""
        return (2 * self.K_x + 1, 2 * self.M_v + 1)

    @property
    def d_eta(self):
        return 1.0 / self.L_v

    @property
    def eta_max(self):
        return self.M_v / self.L_v

    @property
    def z_nodes(self):
        return 2.0 * np.pi * np.arange(self.N_z) / self.N_z

    @property
    def v_nodes(self):
        return -np.pi * self.L_v + 2.0 * np.pi * self.L_v * np.arange(self.N_v) / self.N_v

    def k_mesh(self):
        return self.k[:, None].astype(float)

    def eta_mesh(self):
        return self.eta[None, :]

    def ell1_mesh(self):
        """|k,eta| = |k| + |eta| on the coefficient rectangle."""
        return np.abs(self.k)[:, None] + np.abs(self.eta)[None, :]


class SpectralField:
    """Complex coefficient array bound to a grid.

    Coefficients follow the convention f(z, v) = sum_kj c[k, j]
    exp(i k z) exp(i eta_j v), so a constant field has c[0, 0] equal to
    its value.  Real fields satisfy c[-k, -j] = conj(c[k, j]).
    """

    __slots__ = ("grid", "coef")

    def __init__(self, grid: Grid, coef: np.ndarray):
        coef = np.asarray(coef, dtype=np.complex128)
        if coef.shape != grid.shape:
            raise ValueError(f"coefficient shape {coef.shape} != grid shape {grid.shape}")
        if not np.all(np.isfinite(coef.view(np.float64))):
            raise ValueError("non-finite coefficients")
        self.grid = grid
        self.coef = coef

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128))

    def copy(self) -> "SpectralField":
        return SpectralField(self.grid, self.coef.copy())

    def hermitized(self) -> "SpectralField":
        """Project onto the real-field subspace c[-k,-j] = conj(c[k,j])."""
        c = self.coef
        return SpectralField(self.grid, 0.5 * (c + np.conj(c[::-1, ::-1])))

    def hermitian_defect(self) -> float:
        c = self.coef
        return float(np.max(np.abs(c - np.conj(c[::-1, ::-1]))))

    def __add__(self, other):
        self._check(other)
        return SpectralField(self.grid, self.coef + other.coef)

    def __sub__(self, other):
        self._check(other)
        return SpectralField(self.grid, self.coef - other.coef)

    def __mul__(self, a):
        return SpectralField(self.grid, self.coef * a)

    __rmul__ = __mul__

    def _check(self, other):
        if not isinstance(other, SpectralField) or other.grid != self.grid:
            raise ValueError("grid mismatch")


def _phase(grid: Grid):
    # v-grid starts at -pi*L_v, which shows up as a (-1)^j factor per column
    return 1.0 - 2.0 * (np.abs(grid.j) % 2)


def to_physical(f: SpectralField) -> np.ndarray:
    """Evaluate on the (N_z, N_v) collocation grid.  Returns a real array."""
    g = f.grid
    full = np.zeros((g.N_z, g.N_v), dtype=np.complex128)
    rows = np.mod(g.k, g.N_z)
    cols = np.mod(g.j, g.N_v)
    full[np.ix_(rows, cols)] = f.coef * _phase(g)[None, :]
    u = np.fft.ifft2(full) * (g.N_z * g.N_v)
    return np.ascontiguousarray(u.real)


def from_physical(u: np.ndarray, grid: Grid) -> SpectralField:
    """Transform collocation values to retained coefficients.

    Truncation to |k| <= K_x, |j| <= M_v is what implements the 2/3-rule
    dealiasing for quadratic products formed in physical space.
    """
    u = np.asarray(u)
    if u.shape != (grid.N_z, grid.N_v):
        raise ValueError(f"physical shape {u.shape} != {(grid.N_z, grid.N_v)}")
    full = np.fft.fft2(u) / (grid.N_z * grid.N_v)
    rows = np.mod(grid.k, grid.N_z)
    cols = np.mod(grid.j, grid.N_v)
    coef = full[np.ix_(rows, cols)] * _phase(grid)[None, :]
    if np.isrealobj(u):
        coef = 0.5 * (coef + np.conj(coef[::-1, ::-1]))
    return SpectralField(grid, coef)


def to_physical_1d(row: np.ndarray, grid: Grid) -> np.ndarray:
    """Evaluate a transverse-only coefficient row (length 2*M_v+1) on v nodes."""
    row = np.asarray(row, dtype=np.complex128)
    if row.shape != (2 * grid.M_v + 1,):
        raise ValueError("row length mismatch")
    full = np.zeros(grid.N_v, dtype=np.complex128)
    full[np.mod(grid.j, grid.N_v)] = row * _phase(grid)
    return (np.fft.ifft(full) * grid.N_v).real


def from_physical_1d(u: np.ndarray, grid: Grid) -> np.ndarray:
    u = np.asarray(u)
    if u.shape != (grid.N_v,):
        raise ValueError("node count mismatch")
    full = np.fft.fft(u) / grid.N_v
    row = full[np.mod(grid.j, grid.N_v)] * _phase(grid)
    return row


# ---------------------------------------------------------------------------
# norms

def _gevrey_weight2(grid: Grid, s: float, lam: float, sigma: float) -> np.ndarray:
    """Squared multiplier exp(2*lam*|k,eta|^s) <k,eta>^(2*sigma).

    |k,eta| is the l1 norm |k| + |eta| and <x> = sqrt(1 + |x|^2).  At s = 0
    the exponential factor is dropped entirely so the norm coincides with
    the Sobolev H^sigma norm.
    """
    x = grid.ell1_mesh()
    bracket = 1.0 + x * x
    w2 = bracket ** sigma
    if s > 0.0 and lam != 0.0:
        w2 = w2 * np.exp(2.0 * lam * x ** s)
    return w2


def gevrey_norm(f: SpectralField, s: float, lam: float, sigma: float) -> float:
    """Gevrey-type norm: sqrt(d_eta * sum exp(2 lam |k,eta|^s) <k,eta>^2sigma |c|^2)."""
    if not 0.0 <= s <= 1.0:
        raise ValueError("s must lie in [0, 1]")
    w2 = _gevrey_weight2(f.grid, s, lam, sigma)
    total = np.sum(w2 * (f.coef.real ** 2 + f.coef.imag ** 2))
    return float(np.sqrt(f.grid.d_eta * total))


def sobolev_norm(f: SpectralField, sigma: float) -> float:
    return gevrey_norm(f, 0.0, 0.0, sigma)


def l2_norm(f: SpectralField) -> float:
    return gevrey_norm(f, 0.0, 0.0, 0.0)


def project_modes(f: SpectralField):
    """Split into the streamwise average (k = 0) and the remainder."""
    zero = np.zeros_like(f.coef)
    zero[f.grid.K_x, :] = f.coef[f.grid.K_x, :]
    return SpectralField(f.grid, zero), SpectralField(f.grid, f.coef - zero)


# ---------------------------------------------------------------------------
# transverse Littlewood-Paley blocks

def _transition(x: np.ndarray) -> np.ndarray:
    """C-infinity monotone step: 0 for x <= 0, 1 for x >= 1."""
    x = np.asarray(x, dtype=float)
    a = np.zeros_like(x)
    b = np.zeros_like(x)
    pos = x > 0.0
    np.exp(-1.0 / np.where(pos, x, 1.0), where=pos, out=a)
    neg = x < 1.0
    np.exp(-1.0 / np.where(neg, 1.0 - x, 1.0), where=neg, out=b)
    return a / (a + b)


def _phi(xi: np.ndarray) -> np.ndarray:
    """Smooth low-pass cutoff: 1 for |xi| <= 1/2, 0 for |xi| >= 3/4."""
    return _transition(np.clip((0.75 - np.abs(xi)) * 4.0, 0.0, 1.0))


def lp_project(f: SpectralField, N: int) -> SpectralField:
    """Dyadic transverse-frequency block supported in N/2 <= |eta| <= 3N/2."""
    if N < 1 or (N & (N - 1)) != 0:
        raise ValueError("N must be a power of two")
    xi = np.abs(f.grid.eta)[None, :]
    rho = _phi(xi / (2.0 * N)) - _phi(xi / N)
    return SpectralField(f.grid, f.coef * rho)


def lp_low(f: SpectralField, N: int) -> SpectralField:
    """Low block: the lumped sum of shells below N plus the core block.

    For N = 1 this is the core block supported in |eta| <= 3/4; the shell
    telescope makes the multiplier exactly phi(|eta| / N).
    """
    if N < 1 or (N & (N - 1)) != 0:
        raise ValueError("N must be a power of two")
    xi = np.abs(f.grid.eta)[None, :]
    return SpectralField(f.grid, f.coef * _phi(xi / N))


def dyadic_shells(grid: Grid):
    """Shell indices [1, 2, 4, ..., N_top] with N_top >= eta_max.

    lp_low(f, 1) + sum of lp_project over these shells reconstructs f
    exactly, since phi(eta_max / (2 * N_top)) = 1.
    """
    top = 1
    while top < grid.eta_max:
        top *= 2
    out = []
    n = 1
    while n <= top:
        out.append(n)
        n *= 2
    return out


# ---------------------------------------------------------------------------
# serialization
#
# Byte layout of the field container (little-endian throughout):
#   offset 0   : 8-byte magic b"COUETTE1"
#   offset 8   : uint32 header length H
#   offset 12  : H bytes of UTF-8 JSON: {"K_x", "M_v", "L_v", "N_z", "N_v"}
#   offset 12+H: (2*K_x+1) * (2*M_v+1) complex128 values, row-major, k rows
#                ascending from -K_x, j columns ascending from -M_v; each
#                value is a (real, imag) float64 pair.

def save_field(path, f: SpectralField) -> None:
    g = f.grid
    header = json.dumps(
        {"K_x": g.K_x, "M_v": g.M_v, "L_v": g.L_v, "N_z": g.N_z, "N_v": g.N_v}
    ).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(np.uint32(len(header)).tobytes())
        fh.write(header)
        fh.write(np.ascontiguousarray(f.coef, dtype="<c16").tobytes())


def load_field(path) -> SpectralField:
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        (hlen,) = np.frombuffer(fh.read(4), dtype="<u4")
        meta = json.loads(fh.read(int(hlen)).decode("utf-8"))
        grid = Grid(
            K_x=int(meta["K_x"]),
            M_v=int(meta["M_v"]),
            L_v=float(meta["L_v"]),
            N_z=int(meta["N_z"]),
            N_v=int(meta["N_v"]),
        )
        raw = fh.read(16 * grid.shape[0] * grid.shape[1])
        coef = np.frombuffer(raw, dtype="<c16").reshape(grid.shape).copy()
    return SpectralField(grid, coef)
