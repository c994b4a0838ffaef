"""Classical (large-S) energy surfaces and their stationary points.

Angles follow the spin-coherent-state parametrisation ``S_z = S cos(theta)``,
``S_x = S sin(theta) cos(phi)``. Only the sections ``phi in {0, pi}`` can host
stationary points with ``sin(theta) != 0``; the ``phi = 0`` section taken over
``theta in [0, 2pi)`` already traces the full x-z great circle.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from spinlab import kernels
from spinlab.errors import DegenerateExtremum, InvalidArgument, NoBrokenPhase

TWO_PI = 2.0 * math.pi
CURVATURE_TOL = 1e-10
TRANSVERSE_RTOL = 1e-14
ENDPOINT_WINDOW = math.pi / 4
DEFAULT_RESOLUTION = 1024

MINIMUM = "minimum"
MAXIMUM = "maximum"
DEGENERATE = "degenerate"
ENDPOINT_0 = "endpoint_0_2pi"
ENDPOINT_PI = "endpoint_pi"
INTERMEDIATE = "intermediate"

LABELS = ("1a", "2a", "4a", "1b", "2b", "4b", "other")


@dataclass(frozen=True)
class Angles:
    theta: float
    phi_section: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= TWO_PI:
            raise InvalidArgument(f"theta must lie in [0, 2pi], got {self.theta!r}")
        if self.phi_section not in (0.0, math.pi):
            raise InvalidArgument(f"phi_section must be 0 or pi, got {self.phi_section!r}")


@dataclass(frozen=True)
class StationaryPoint:
    theta: float
    phi_section: float
    energy: float
    curvature: float
    kind: str
    location_class: str


@dataclass(frozen=True)
class PhaseLabel:
    label: str
    minima: list = field(default_factory=list)
    zero_is_min: bool | None = None
    pi_is_min: bool | None = None
    n_intermediate_minima: int = 0


def _branch_field(params, branch):
    if branch not in (1, -1):
        raise InvalidArgument(f"branch must be +1 or -1, got {branch!r}")
    return params.omega_t + 0.5 * branch * params.j_couple


def eps_classical(params, theta, phi, branch):
    """Large-S chain energy per spin on single-spin branch ``branch``; broadcasts over arrays."""
    c = np.cos(theta)
    return (
        _branch_field(params, branch) * c
        + 0.5 * params.j_chain * c * c
        + params.delta_t * np.sin(theta) * np.cos(phi)
    )


def total_surface(params, theta, phi, branch):
    """Upper (``branch=+1``) or lower (``branch=-1``) total-energy surface.

    The two chain surfaces enter through their sum and difference, with
    ``eps_plus - eps_minus = j_couple * cos(theta)``.
    """
    if branch not in (1, -1):
        raise InvalidArgument(f"branch must be +1 or -1, got {branch!r}")
    ep = eps_classical(params, theta, phi, 1)
    em = eps_classical(params, theta, phi, -1)
    root = np.hypot(params.omega + ep - em, params.delta)
    return 0.5 * (ep + em + branch * root)


def surface_gradient(params, theta, phi):
    """``(dE/dtheta, dE/dphi)`` of the lower surface with ``phi`` unrestricted."""
    c = np.cos(theta)
    s = np.sin(theta)
    a = params.omega + params.j_couple * c
    r = np.hypot(a, params.delta)
    with np.errstate(invalid="ignore", divide="ignore"):
        coupling = np.where(r > 0.0, 0.5 * params.j_couple * s * a / r, 0.0)
    d_theta = (
        -params.omega_t * s
        - params.j_chain * s * c
        + params.delta_t * c * np.cos(phi)
        + coupling
    )
    d_phi = -params.delta_t * s * np.sin(phi)
    return d_theta, d_phi


def bare_critical_field(params):
    """Critical chain field of the uncoupled LMG model: the symmetric phase is stable above ``J``."""
    return params.j_chain


def _kernel_args(params, phi_section):
    return (
        params.omega,
        params.delta,
        params.omega_t,
        params.delta_t,
        params.j_chain,
        params.j_couple,
        math.cos(phi_section),
    )


def endpoint_curvatures(params):
    """Closed-form ``d2E/dtheta2`` of the lower surface at ``theta = pi`` and ``theta = 0``.

    Exact for ``delta_t = 0``, where both points are stationary.
    """
    w, d, wt, jc, j = params.omega, params.delta, params.omega_t, params.j_couple, params.j_chain
    r_pi = math.hypot(jc - w, d)
    r_0 = math.hypot(jc + w, d)
    at_pi = wt - j + (jc * (jc - w) / (2.0 * r_pi) if r_pi > 0 else 0.0)
    at_0 = -wt - j + (jc * (jc + w) / (2.0 * r_0) if r_0 > 0 else 0.0)
    return at_pi, at_0


def endpoint_stability(params):
    """``(pi_is_min, zero_is_min)`` from the signs of the endpoint curvatures."""
    at_pi, at_0 = endpoint_curvatures(params)
    return at_pi > 0.0, at_0 > 0.0


def _circular_distance(a, b):
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def find_stationary_points(params, resolution=DEFAULT_RESOLUTION, phi_section=0.0, strict=True):
    """Stationary points of the lower surface along one phi-section.

    Sign changes of ``dE/dtheta`` on a uniform theta grid are refined by
    bisection with a guarded Newton polish. ``theta = 0`` and ``2pi`` are one
    periodic point reported at ``theta = 0``. With ``strict=False`` roots of
    vanishing curvature are returned with kind ``"degenerate"`` instead of raising.

    Raises
    ------
    InvalidArgument
        ``resolution`` below 400 or an unknown phi-section.
    DegenerateExtremum
        A root has ``|d2E/dtheta2|`` below ``CURVATURE_TOL``.
    """
    if resolution < 400:
        raise InvalidArgument(f"resolution must be >= 400, got {resolution}")
    if phi_section not in (0.0, math.pi):
        raise InvalidArgument(f"phi_section must be 0 or pi, got {phi_section!r}")
    args = _kernel_args(params, phi_section)
    # a transverse field below rounding moves the polar roots by less than
    # an ulp but can hide their sign change, so scan it as exactly zero
    scale = max(abs(params.omega_t), abs(params.j_chain), abs(params.j_couple), 1.0)
    symmetric = abs(params.delta_t) <= TRANSVERSE_RTOL * scale
    scan_args = args[:3] + (0.0,) + args[4:] if symmetric else args
    thetas = kernels.scan_roots(*scan_args, int(resolution))

    if symmetric:
        near_0, near_pi = 0.0, math.pi
    else:
        near_0 = _nearest(thetas, 0.0)
        near_pi = _nearest(thetas, math.pi)

    points = []
    for t in thetas:
        curv = kernels.surface_d2(*args, t)
        if abs(curv) > CURVATURE_TOL:
            kind = MINIMUM if curv > 0 else MAXIMUM
        elif strict:
            raise DegenerateExtremum(t, curv)
        else:
            kind = DEGENERATE
        if t == near_0:
            where = ENDPOINT_0
        elif t == near_pi:
            where = ENDPOINT_PI
        else:
            where = INTERMEDIATE
        points.append(
            StationaryPoint(
                theta=t,
                phi_section=phi_section,
                energy=kernels.surface_energy(*args, t),
                curvature=curv,
                kind=kind,
                location_class=where,
            )
        )
    return points


def _nearest(thetas, target):
    best = None
    best_d = ENDPOINT_WINDOW
    for t in thetas:
        d = _circular_distance(t, target)
        if d <= best_d:
            best, best_d = t, d
    return best


def configuration_pattern(points):
    """``(zero_is_min, pi_is_min, k)`` with ``k`` the number of intermediate minima.

    An endpoint with no nearby stationary point counts as not-a-minimum.
    """
    m0 = any(p.location_class == ENDPOINT_0 and p.kind == MINIMUM for p in points)
    mpi = any(p.location_class == ENDPOINT_PI and p.kind == MINIMUM for p in points)
    k = sum(1 for p in points if p.location_class == INTERMEDIATE and p.kind == MINIMUM)
    return m0, mpi, k


def label_from_pattern(m0, mpi, k):
    if m0 and not mpi and k == 0:
        return "1a"
    if mpi and not m0 and k == 0:
        return "2a"
    if m0 != mpi and k == 2:
        return "4a"
    if m0 and mpi and k == 0:
        return "1b"
    if not m0 and not mpi and k == 2:
        return "2b"
    if not m0 and not mpi and k == 4:
        return "4b"
    return "other"


def is_configuration_three(m0, mpi, k):
    """Endpoints both minima yet separated by intermediate minima.

    Between two minima on a half circle the stationary points alternate
    max/min/max, which is the only pattern of the "same type" family missing
    from the labelled set.
    """
    return m0 and mpi and k > 0


def classify_configuration(points):
    m0, mpi, k = configuration_pattern(points)
    minima = [p for p in points if p.kind == MINIMUM]
    label = label_from_pattern(m0, mpi, k)
    if any(p.kind == DEGENERATE for p in points):
        label = "other"
    return PhaseLabel(
        label=label,
        minima=minima,
        zero_is_min=m0,
        pi_is_min=mpi,
        n_intermediate_minima=k,
    )


PHASE_KIND = {ENDPOINT_0: "symmetric_up", ENDPOINT_PI: "symmetric_down", INTERMEDIATE: "broken"}


def _pick_lowest(minima):
    emin = min(p.energy for p in minima)
    tol = 1e-12 * max(1.0, abs(emin))
    ties = [p for p in minima if p.energy <= emin + tol]

    def rank(p):
        upper_half = 0 < p.theta <= math.pi
        return (p.phi_section != 0.0, not upper_half, p.theta)

    return min(ties, key=rank)


def global_minimum(params, resolution=DEFAULT_RESOLUTION):
    """Lowest minimum of the lower surface over both phi-sections, with its phase kind.

    Exactly degenerate minima are broken in favour of ``phi = 0`` and
    ``theta in (0, pi]``.
    """
    minima = []
    for section in (0.0, math.pi):
        minima.extend(p for p in find_stationary_points(params, resolution, section) if p.kind == MINIMUM)
    best = _pick_lowest(minima)
    return best, PHASE_KIND[best.location_class]


def bare_residual(params, theta):
    """Stationarity condition of the bare chain surface along ``phi = 0``.

    ``cos(theta) + wt sin(theta) / (J sin(theta) - dt)``; at ``dt = 0`` the
    ``sin(theta)`` factor cancels exactly.
    """
    if params.delta_t == 0.0:
        if params.j_chain == 0.0:
            return math.inf
        return math.cos(theta) + params.omega_t / params.j_chain
    s = math.sin(theta)
    return math.cos(theta) + params.omega_t * s / (params.j_chain * s - params.delta_t)


def _polish(f, t, lo, hi, tol=1e-15):
    h = 1e-7
    for _ in range(8):
        ft = f(t)
        if abs(ft) < tol:
            break
        slope = (f(t + h) - f(t - h)) / (2 * h)
        if slope == 0.0 or not math.isfinite(slope):
            break
        tn = t - ft / slope
        if not lo <= tn <= hi or abs(f(tn)) > abs(ft):
            break
        t = tn
    return t


def bare_broken_theta(params, resolution=DEFAULT_RESOLUTION):
    """Angle of the broken-symmetry minimum of the uncoupled chain (``j_couple`` ignored).

    The lowest intermediate minimum of the bare surface is located by a
    bracketed scan, then polished by Newton on :func:`bare_residual`. At
    ``delta_t = 0`` it satisfies ``cos(theta) = -omega_t/J``; of the mirror
    pair the one in ``(0, pi]`` is returned.

    Raises
    ------
    NoBrokenPhase
        The bare surface has no intermediate minimum.
    """
    bare = params.replace(j_couple=0.0, omega=0.0, delta=0.0)
    try:
        points = find_stationary_points(bare, resolution, 0.0)
    except DegenerateExtremum as exc:
        raise NoBrokenPhase(f"bare surface is critical at theta={exc.theta!r}") from exc
    broken = [p for p in points if p.location_class == INTERMEDIATE and p.kind == MINIMUM]
    if not broken:
        raise NoBrokenPhase(
            f"no broken-symmetry minimum for omega_t={params.omega_t}, J={params.j_chain}, "
            f"delta_t={params.delta_t}"
        )
    best = _pick_lowest(broken)
    step = TWO_PI / resolution
    return _polish(lambda t: bare_residual(bare, t), best.theta, best.theta - step, best.theta + step)
