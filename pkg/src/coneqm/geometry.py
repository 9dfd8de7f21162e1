"""Conical geometry: the deficit parameter, embeddings, curvatures, the
curvature-induced effective potential, and the two Bessel-order index maps
that encode the cone.

The metric is dl^2 = dr^2 + sigma^2 r^2 dtheta^2 with sigma > 0; sigma = 1 is
flat space.  Quantities tied to the embedding into 3D Euclidean space
(embedding itself, mean curvature, and the identification of the effective
potential with -H^2) exist only for sigma <= 1; the algebraic formulas remain
valid for sigma > 1 (negative-deficit cone) and are exposed there as well.
"""

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


class NotEmbeddableError(ValueError):
    """Embedding-dependent quantity requested for sigma > 1."""


class ImaginaryIndexError(ValueError):
    """An index map would need the square root of a negative number."""


@dataclass(frozen=True)
class ConeGeometry:
    """Cone with deficit parameter sigma > 0."""

    sigma: float

    def __post_init__(self):
        s = self.sigma
        if not isinstance(s, (int, float)) or isinstance(s, bool) \
                or not math.isfinite(s) or s <= 0.0:
            raise ValueError(f"sigma must be a finite real > 0, got {s!r}")

    @property
    def embeddable(self) -> bool:
        return self.sigma <= 1.0


@dataclass(frozen=True)
class PhysicalConstants:
    """Particle mass and hbar; defaults are natural units."""

    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("mass", "hbar"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) \
                    or not math.isfinite(v) or v <= 0.0:
                raise ValueError(f"{name} must be a finite real > 0, got {v!r}")


def cone_from_sigma(sigma: float) -> ConeGeometry:
    """Cone from the deficit parameter directly."""
    return ConeGeometry(float(sigma))


def cone_from_deficit_angle(gamma: float) -> ConeGeometry:
    """Cone from the deficit angle (radians): sigma = 1 - gamma/2pi."""
    gamma = float(gamma)
    if not math.isfinite(gamma) or gamma >= TWO_PI:
        raise ValueError(
            f"deficit angle must be < 2*pi (sigma > 0), got {gamma!r}"
        )
    return ConeGeometry(1.0 - gamma / TWO_PI)


def cone_from_string_density(g_eta: float) -> ConeGeometry:
    """Cone from the dimensionless string density G*eta: sigma = 1 - 4*G*eta."""
    g_eta = float(g_eta)
    if not math.isfinite(g_eta) or g_eta >= 0.25:
        raise ValueError(
            f"string density requires G*eta < 0.25 (sigma > 0), got {g_eta!r}"
        )
    return ConeGeometry(1.0 - 4.0 * g_eta)


def deficit_angle(geom: ConeGeometry) -> float:
    """Deficit angle gamma = 2 pi (1 - sigma); negative for sigma > 1."""
    return TWO_PI * (1.0 - geom.sigma)


def string_density(geom: ConeGeometry) -> float:
    """Dimensionless string density G*eta = (1 - sigma)/4."""
    return 0.25 * (1.0 - geom.sigma)


def embed(geom: ConeGeometry, r: float, theta: float):
    """Euclidean embedding point (x, y, z) of the cone point (r, theta).

    x = sigma r cos(theta), y = sigma r sin(theta), z = sqrt(1-sigma^2) r,
    so x^2 + y^2 + z^2 = r^2 exactly.
    """
    if not geom.embeddable:
        raise NotEmbeddableError(
            f"embedding requires sigma <= 1, got sigma={geom.sigma}"
        )
    r = float(r)
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"r must be a finite real >= 0, got {r!r}")
    s = geom.sigma
    return (s * r * math.cos(theta),
            s * r * math.sin(theta),
            math.sqrt(max(1.0 - s * s, 0.0)) * r)


def mean_curvature(geom: ConeGeometry, r: float) -> float:
    """Mean curvature H(r) = sqrt(1 - sigma^2) / (2 sigma r) of the embedded cone."""
    if not geom.embeddable:
        raise NotEmbeddableError(
            f"mean curvature requires sigma <= 1, got sigma={geom.sigma}"
        )
    r = float(r)
    if not math.isfinite(r) or r <= 0.0:
        raise ValueError(f"r must be a finite real > 0, got {r!r}")
    s = geom.sigma
    return math.sqrt(max(1.0 - s * s, 0.0)) / (2.0 * s * r)


def gaussian_curvature_strength(geom: ConeGeometry) -> float:
    """Integrated apex curvature 2 pi (1 - sigma)/sigma.

    The Gaussian curvature of the cone is a delta function at the apex; this
    is its total weight (sign follows 1 - sigma).
    """
    s = geom.sigma
    return TWO_PI * (1.0 - s) / s


def effective_potential(geom: ConeGeometry, consts: PhysicalConstants,
                        r: float) -> float:
    """Curvature-induced effective potential
    V_eff(r) = -(hbar^2/2M) (1 - sigma^2) / (4 sigma^2 r^2).

    Attractive for sigma < 1, zero in flat space, repulsive for sigma > 1.
    Equals -(hbar^2/2M) H(r)^2 wherever the embedding exists.
    """
    r = float(r)
    if not math.isfinite(r) or r <= 0.0:
        raise ValueError(f"r must be a finite real > 0, got {r!r}")
    s = geom.sigma
    return -(consts.hbar ** 2 / (2.0 * consts.mass)) \
        * (1.0 - s * s) / (4.0 * s * s * r * r)


def effective_index_mu(geom: ConeGeometry, m: int) -> float:
    """Free-cone Bessel order mu(m) = sqrt(4 m^2 + sigma^2 - 1) / (2 sigma).

    Raises ImaginaryIndexError when 4 m^2 + sigma^2 - 1 < 0 (the
    unregularized s-wave on a sigma < 1 cone).
    """
    s = geom.sigma
    disc = 4.0 * m * m + s * s - 1.0
    if disc < 0.0:
        raise ImaginaryIndexError(
            f"4m^2 + sigma^2 - 1 = {disc:g} < 0 for m={m}, sigma={s:g}: "
            "the free-cone s-wave index is imaginary; a repulsive core "
            "(kappa >= 1 - sigma^2) is required"
        )
    return math.sqrt(disc) / (2.0 * s)


def coupled_index_nu(geom: ConeGeometry, kappa: float, m: int) -> float:
    """Bessel order nu(m, sigma) = sqrt(4 m^2 + kappa + sigma^2 - 1) / (2 sigma)
    of the cone with inverse-square coupling kappa.

    Requires kappa >= 1 - sigma^2 so that the order (and hence the spectrum)
    is real for every m.
    """
    s = geom.sigma
    kappa = float(kappa)
    bound = 1.0 - s * s
    if kappa < bound:
        raise ValueError(
            f"kappa must be >= 1 - sigma^2 = {bound:.6g}, got {kappa:.6g}"
        )
    return math.sqrt(4.0 * m * m + kappa + s * s - 1.0) / (2.0 * s)
