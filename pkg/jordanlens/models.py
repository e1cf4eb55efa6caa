"""Immutable domain values shared by the analysis modules.

Every array handed to one of these constructors is copied and frozen
(``writeable = False``) so a value can be shared across threads.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from jordanlens.exceptions import InputError

ORTHONORMAL_TOL = 1e-12


class OperatorKind(str, Enum):
    SUM = "SUM"
    DIFF = "DIFF"
    PQ = "PQ"
    QP = "QP"
    ANTICOMM = "ANTICOMM"
    COMM = "COMM"


def _frozen(array, dtype=complex) -> np.ndarray:
    array = np.array(array, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^n carried as an orthonormal column basis (n x p, p may be 0)"""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise InputError(f"Ambient dimension must be positive, got {self.ambient_dim}")
        basis = np.asarray(self.basis, dtype=complex)
        if basis.ndim == 1:
            basis = basis.reshape(-1, 1)
        if basis.size == 0:
            basis = np.zeros((self.ambient_dim, 0), dtype=complex)
        if basis.ndim != 2 or basis.shape[0] != self.ambient_dim:
            raise InputError(f"Basis shape {basis.shape} does not match ambient dimension {self.ambient_dim}")
        if basis.shape[1] > self.ambient_dim:
            raise InputError("A subspace cannot have more basis vectors than its ambient dimension")
        gram = basis.conj().T @ basis
        if not np.allclose(gram, np.eye(basis.shape[1]), rtol=0, atol=ORTHONORMAL_TOL):
            raise InputError("Basis columns are not orthonormal")
        object.__setattr__(self, "basis", _frozen(basis))

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        return f"<Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})>"


@dataclass(frozen=True)
class ProjectorPair:
    P: np.ndarray
    Q: np.ndarray
    source_M: Subspace
    source_N: Subspace

    def __post_init__(self):
        object.__setattr__(self, "P", _frozen(self.P))
        object.__setattr__(self, "Q", _frozen(self.Q))

    @property
    def ambient_dim(self) -> int:
        return self.P.shape[0]


@dataclass(frozen=True)
class FivePartDecomposition:
    """C^n = (M∩N) ⊕ (M∩N⊥) ⊕ (M⊥∩N) ⊕ (M⊥∩N⊥) ⊕ R"""

    mn: Subspace
    mn_perp: Subspace
    m_perp_n: Subspace
    both_perp: Subspace
    r_part: Subspace

    @property
    def a(self) -> int:
        return self.mn.dim

    @property
    def b(self) -> int:
        return self.both_perp.dim

    @property
    def c(self) -> int:
        return self.mn_perp.dim

    @property
    def d(self) -> int:
        return self.m_perp_n.dim

    @property
    def r(self) -> int:
        return self.r_part.dim // 2

    @property
    def counts(self) -> Tuple[int, int, int, int, int]:
        return self.a, self.b, self.c, self.d, self.r

    @property
    def is_generic(self) -> bool:
        return self.a == self.b == self.c == self.d == 0

    @property
    def is_generalized_generic(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == self.d


@dataclass(frozen=True)
class AngleDecomposition:
    """Principal angles (ascending) with matched principal vectors of M and N"""

    angles: np.ndarray
    u_vectors: np.ndarray
    v_vectors: np.ndarray
    n_zero: int
    n_interior: int
    n_right: int
    tol: float

    def __post_init__(self):
        object.__setattr__(self, "angles", _frozen(self.angles, dtype=float))
        object.__setattr__(self, "u_vectors", _frozen(self.u_vectors))
        object.__setattr__(self, "v_vectors", _frozen(self.v_vectors))

    @property
    def q(self) -> int:
        return len(self.angles)

    @property
    def dixmier_angle(self) -> Optional[float]:
        return float(self.angles[0]) if self.q else None

    @property
    def friedrichs_angle(self) -> Optional[float]:
        """First non-zero angle; None when every angle is zero"""
        if self.n_zero >= self.q:
            return None
        return float(self.angles[self.n_zero])

    @property
    def interior_slice(self) -> slice:
        return slice(self.n_zero, self.n_zero + self.n_interior)

    @property
    def interior_angles(self) -> np.ndarray:
        return self.angles[self.interior_slice]

    def degrees(self) -> np.ndarray:
        return np.rad2deg(self.angles)


@dataclass(frozen=True)
class JordanFrame:
    """The four unit vectors spanning one Jordan plane, for an angle in (0, π/2)"""

    theta: float
    u: np.ndarray
    v: np.ndarray
    s: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        if not 0 < self.theta < np.pi / 2:
            raise InputError(f"Jordan frames exist only for interior angles, got {self.theta}")
        for name in ("u", "v", "s", "t"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def lam(self) -> float:
        return float(np.cos(self.theta))

    @property
    def mu(self) -> float:
        return float(np.sin(self.theta))

    @property
    def plane(self) -> np.ndarray:
        """Orthonormal basis {u, s} of the plane"""
        return np.column_stack([self.u, self.s])


@dataclass(frozen=True)
class EigenPair:
    value: complex
    vector: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "vector", _frozen(self.vector))

    def residual(self, operator: np.ndarray) -> float:
        """‖A x − λ x‖ / ‖x‖"""
        return float(np.linalg.norm(operator @ self.vector - self.value * self.vector) / np.linalg.norm(self.vector))


@dataclass(frozen=True)
class EllipticDisk:
    """Filled ellipse with axes parallel to the real and imaginary axes"""

    center: complex
    semi_major: float
    semi_minor: float

    def __post_init__(self):
        if self.semi_major < 0 or self.semi_minor < 0:
            raise InputError("Semi-axes must be non-negative")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "semi_major", float(self.semi_major))
        object.__setattr__(self, "semi_minor", float(self.semi_minor))

    @property
    def foci(self) -> Tuple[complex, complex]:
        offset = np.sqrt(max(self.semi_major ** 2 - self.semi_minor ** 2, 0.0))
        return self.center - offset, self.center + offset

    def boundary(self, samples: int) -> np.ndarray:
        phi = 2 * np.pi * np.arange(samples) / samples
        return self.center + self.semi_major * np.cos(phi) + 1j * self.semi_minor * np.sin(phi)

    def contains(self, z: complex, atol: float = 1e-12) -> bool:
        dz = complex(z) - self.center
        if self.semi_major == 0 or self.semi_minor == 0:
            # segment or point
            if self.semi_minor == 0:
                return abs(dz.imag) <= atol and abs(dz.real) <= self.semi_major + atol
            return abs(dz.real) <= atol and abs(dz.imag) <= self.semi_minor + atol
        return (dz.real / self.semi_major) ** 2 + (dz.imag / self.semi_minor) ** 2 <= 1 + atol


@dataclass(frozen=True)
class ConvexRegion:
    """Counterclockwise convex polygon plus the generators it was built from.

    Degenerate regions are allowed: one vertex is a point, two a segment.
    """

    vertices: np.ndarray
    disks: Tuple[EllipticDisk, ...] = ()
    segments: Tuple[Tuple[complex, complex], ...] = ()
    points: Tuple[complex, ...] = ()

    def __post_init__(self):
        vertices = _frozen(np.ravel(self.vertices))
        if vertices.size == 0:
            raise InputError("A region needs at least one vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "disks", tuple(self.disks))
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "points", tuple(self.points))

    def is_convex(self, tol: float = 1e-12) -> bool:
        if len(self.vertices) < 3:
            return True
        edges = np.roll(self.vertices, -1) - self.vertices
        following = np.roll(edges, -1)
        cross = edges.real * following.imag - edges.imag * following.real
        return bool(np.all(cross >= -tol))

    @property
    def bounds(self) -> Tuple[float, float, float, float]:
        """(re_min, re_max, im_min, im_max)"""
        return (
            float(self.vertices.real.min()),
            float(self.vertices.real.max()),
            float(self.vertices.imag.min()),
            float(self.vertices.imag.max()),
        )


@dataclass(frozen=True)
class PlaneCanonicalForm:
    """Unitary change of basis W of one Jordan plane and W*(PQ − λ²/2)W"""

    basis: np.ndarray
    matrix: np.ndarray
    shift: float
    offdiag: Tuple[float, float] = field(default=(0.0, 0.0))

    def __post_init__(self):
        object.__setattr__(self, "basis", _frozen(self.basis))
        object.__setattr__(self, "matrix", _frozen(self.matrix))
