"""Geometry of twistors: null rays, the Robinson congruence, d-lines and the 6-d ray observable.

Spatial data (points, velocities, circle centres) are plain length-3 numpy
arrays holding the ``sigma_k`` components of relative vectors.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize

from .conformal import (
    E,
    E_EBAR,
    N_BAR,
    N_INF,
    embed_hyperbolic,
    extract_hyperbolic,
    hyperbolic_translation_rotor,
    line_through,
    minkowski_part,
    project_line,
    to_cga,
    translation_rotor,
    SingularTransformation,
)
from .conformal_spinor import invert6, lift
from .config import default_tol
from .ga_core import Multivector
from .sta import (
    IS3,
    dirac_current,
    flagpole,
    four_spinor,
    pauli_components,
    pauli_from_components,
    relative_components,
    relative_vector,
    spin_bivector,
    spinor_inner_2,
    sta_vector,
    vector_components,
    weyl_parts,
)
from .twistor import Twistor, example_twistor, helicity, momentum, primary_part, twistor_new


class NotNullTwistor(ValueError):
    pass


class LocusAtInfinity(ValueError):
    """The twistor's locus is the light cone at infinity (``beta == 0``)."""


class DegenerateCircle(ValueError):
    pass


class NonCircular(ValueError):
    """Integrated flow line failed the planarity/circularity/constant-acceleration checks."""


# --- null twistors ------------------------------------------------------------

@dataclass(frozen=True)
class NullRay:
    q: Multivector
    p: Multivector
    beta: float
    #: imaginary residue of beta; vanishes for a null twistor
    beta_imag: float = 0.0

    def point(self, h: float) -> Multivector:
        return self.q + h * self.p


def ray_beta(psi: Multivector) -> complex:
    """``beta = -I sigma_3 {omega, pi}^*`` evaluated on the origin spinor."""
    omega, pi = weyl_parts(psi)
    return -1j * spinor_inner_2(omega, pi).conjugate()


def null_ray(t: Twistor, tol: float = 1e-8) -> NullRay:
    """Locus ``omega_P = 0``: the line ``r(h) = K/beta + h p``."""
    s = helicity(t)
    if abs(s) > tol:
        raise NotNullTwistor(f"twistor has helicity {s:.3g}; a ray needs s = 0")
    omega, _ = weyl_parts(t.psi)
    beta = ray_beta(t.psi)
    scale = max(1.0, abs(beta), t.psi.max_abs() ** 2)
    if abs(beta.real) <= tol * scale:
        raise LocusAtInfinity("beta = 0: the locus is the light cone at infinity")
    K = flagpole(omega)
    return NullRay(K * (1.0 / beta.real), momentum(t), beta.real, beta.imag)


def primary_residual(t: Twistor, ray: NullRay, hs) -> float:
    """Largest ``|omega_P|`` coefficient along the sampled ray."""
    return max(primary_part(t.at(ray.point(h))).max_abs() for h in hs)


def make_null_twistor(rng: np.random.Generator, r: Multivector | None = None) -> Twistor:
    """Random twistor with ``{omega, pi}`` purely imaginary, hence zero helicity."""
    def rand_c():
        return complex(*rng.uniform(-1, 1, 2))

    omega = pauli_from_components(rand_c(), rand_c())
    pi = pauli_from_components(rand_c(), rand_c())
    c0, c1 = pauli_components(pi)
    nrm = abs(c0) ** 2 + abs(c1) ** 2
    # {unit, pi} == 1
    unit = pauli_from_components(c1.conjugate() / nrm, -c0.conjugate() / nrm)
    omega = omega - spinor_inner_2(omega, pi).real * unit
    return twistor_new(four_spinor(omega, pi), r)


# --- Robinson congruence: tangent field ----------------------------------------

def _position(tau: float, x) -> Multivector:
    return sta_vector(tau, float(x[0]), float(x[1]), float(x[2]))


def primary_flagpole(s: float, tau: float, x) -> Multivector:
    """Flagpole ``K`` of the example twistor's primary part at ``(tau, x)``."""
    t = example_twistor(s, _position(tau, x))
    return dirac_current(primary_part(t))


def tangent_direction(s: float, tau: float, x) -> np.ndarray:
    """``T_dir = (R_Bo L_P ~R_Bo) e eb``: spacetime components of the projected tangent."""
    r = _position(tau, x)
    K = dirac_current(primary_part(example_twistor(s, r)))
    if K.max_abs() <= default_tol():
        raise SingularTransformation("flagpole vanishes at this point")
    lp = project_line(line_through(r, K), tau)
    r_bo = translation_rotor(-r)
    t_dir = (r_bo * lp.L * ~r_bo) * E_EBAR
    return vector_components(minkowski_part(t_dir.grade(1)))


def tangent_field(s: float, tau: float, x) -> np.ndarray:
    """Unit 3-vector ``T_ndir ^ gamma_0`` of the projected Robinson congruence."""
    v = tangent_direction(s, tau, x)[1:]
    nrm = np.linalg.norm(v)
    if nrm <= default_tol():
        raise SingularTransformation("projected tangent vanishes")
    return v / nrm


def acceleration(s: float, tau: float, x, h: float = 1e-3) -> np.ndarray:
    """``dv/dmu`` along the flow, by a five-point stencil in the direction of ``v``."""
    x = np.asarray(x, dtype=float)
    v = tangent_field(s, tau, x)

    def f(k):
        return tangent_field(s, tau, x + k * h * v)

    return (-f(2) + 8 * f(1) - 8 * f(-1) + f(-2)) / (12 * h)


def field_twist(s: float, tau: float, x, h: float = 1e-4) -> float:
    """``T . curl T``; its sign is the handedness of the congruence."""
    x = np.asarray(x, dtype=float)
    jac = np.zeros((3, 3))
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        jac[:, i] = (tangent_field(s, tau, x + e) - tangent_field(s, tau, x - e)) / (2 * h)
    curl = np.array([jac[2, 1] - jac[1, 2], jac[0, 2] - jac[2, 0], jac[1, 0] - jac[0, 1]])
    return float(tangent_field(s, tau, x) @ curl)


# --- circles ------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceCircle:
    center: np.ndarray
    radius: float
    #: unit relative bivector of the circle plane, ``B^2 = -1``
    plane: Multivector
    seed: np.ndarray
    velocity: np.ndarray
    normal: np.ndarray
    s: float
    tau: float

    def point(self, theta: float) -> np.ndarray:
        """``c_T + R rho ~R`` with ``R = cos(theta/2) + B sin(theta/2)``."""
        rotor = math.cos(theta / 2) + math.sin(theta / 2) * self.plane
        rho = relative_vector(self.seed - self.center)
        return self.center + relative_components(rotor * rho * ~rotor)

    def sample(self, count: int) -> tuple[np.ndarray, np.ndarray]:
        thetas = np.linspace(0.0, 2 * np.pi, count, endpoint=False)
        return thetas, np.array([self.point(th) for th in thetas])


@dataclass(frozen=True)
class CircleDiagnostics:
    max_speed_error: float
    max_va: float
    accel_rel_variation: float
    max_radius_error: float
    max_plane_error: float


def verify_flow(s: float, tau: float, x0, center: np.ndarray, radius: float, normal: np.ndarray,
                fraction: float = 0.25, checkpoints: int = 9) -> CircleDiagnostics:
    """Integrate ``dr/dmu = v`` over ``fraction`` of a turn and measure the circle residuals."""
    x0 = np.asarray(x0, dtype=float)
    length = 2 * np.pi * radius * fraction
    sol = solve_ivp(lambda _m, y: tangent_field(s, tau, y), (0.0, length), x0,
                    method="RK45", rtol=1e-10, atol=1e-11, dense_output=True)
    if not sol.success:
        raise NonCircular(f"flow integration failed: {sol.message}")
    speed_err = va = rad_err = plane_err = 0.0
    amags = []
    for m in np.linspace(0.0, length, checkpoints):
        y = sol.sol(m)
        v = tangent_field(s, tau, y)
        a = acceleration(s, tau, y)
        am = float(np.linalg.norm(a))
        amags.append(am)
        speed_err = max(speed_err, abs(np.linalg.norm(v) - 1.0))
        va = max(va, abs(float(v @ a)) / max(am, 1e-300))
        rad_err = max(rad_err, abs(np.linalg.norm(y - center) - radius) / radius)
        plane_err = max(plane_err, abs(float((y - center) @ normal)) / radius)
    amags = np.array(amags)
    rel_var = float((amags.max() - amags.min()) / amags.mean())
    return CircleDiagnostics(speed_err, va, rel_var, rad_err, plane_err)


def congruence_circle(x0, s: float, tau: float = 0.0, verify: bool = True,
                      accel_tol: float = 1e-5) -> CongruenceCircle:
    """Circle of the congruence through ``x0`` from the closed-form centre and radius.

    With ``verify`` the flow line is integrated for a quarter turn first and
    construction is refused unless it is planar, circular and of constant
    acceleration.
    """
    x0 = np.asarray(x0, dtype=float)
    v = tangent_field(s, tau, x0)
    a = acceleration(s, tau, x0)
    amag = float(np.linalg.norm(a))
    if amag < 1e-9:
        raise DegenerateCircle("zero acceleration: the flow line is the axis (infinite radius)")
    a_hat = a / amag
    radius = 1.0 / amag
    center = x0 + radius * a_hat
    # orthogonal relative vectors: their product is already the bivector v ^ a_hat
    plane = (relative_vector(v) * relative_vector(a_hat)).grade(2)
    normal = np.cross(v, a_hat)
    normal = normal / np.linalg.norm(normal)
    if verify:
        d = verify_flow(s, tau, x0, center, radius, normal)
        if (d.max_va > 1e-6 or d.accel_rel_variation > accel_tol or d.max_radius_error > 1e-6
                or d.max_plane_error > 1e-6):
            raise NonCircular(f"flow line is not a circle: {d}")
    return CongruenceCircle(center, radius, plane, x0, v, normal, s, tau)


@dataclass(frozen=True)
class SceneConfig:
    s: float = 0.5
    tau: float = 0.0
    #: tangent-field grid: points per axis and half-width of the cube
    grid: tuple[int, int, int] = (5, 5, 5)
    extent: float = 2.0
    #: torus family seeds ``(N_x cos phi, N_y sin phi, N_z)``
    torus: tuple[float, float, float] = (1.0, 1.0, 0.5)
    phi_start: float = 0.0
    family: int = 8
    samples: int = 64

    def __post_init__(self) -> None:
        if self.samples < 3:
            raise ValueError("samples must be at least 3")
        if self.family < 1:
            raise ValueError("family must have at least one member")
        if any(n < 1 for n in self.grid):
            raise ValueError("grid counts must be positive")


def congruence_scene_check(cfg: SceneConfig) -> None:
    if cfg.s == 0:
        raise NotNullTwistor("s = 0 has no Robinson congruence; use the null-ray tools instead")


def family_seeds(cfg: SceneConfig) -> list[np.ndarray]:
    nx, ny, nz = cfg.torus
    phis = cfg.phi_start + 2 * np.pi * np.arange(cfg.family) / cfg.family
    return [np.array([nx * np.cos(p), ny * np.sin(p), nz]) for p in phis]


def _circle_task(args):
    x0, s, tau = args
    return congruence_circle(x0, s, tau)


def torus_family(cfg: SceneConfig, workers: int = 1) -> list[CongruenceCircle]:
    """Circles through the seeds ``(N_x cos phi, N_y sin phi, N_z)``.

    Members are independent; with ``workers > 1`` they are built in a
    process pool and returned in seed order.
    """
    congruence_scene_check(cfg)
    tasks = [(x0, cfg.s, cfg.tau) for x0 in family_seeds(cfg)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_circle_task, tasks))
    return [_circle_task(t) for t in tasks]


def circle_distance(c1: CongruenceCircle, c2: CongruenceCircle, samples: int = 64) -> float:
    """Minimum distance between two circles: sampled, then refined locally."""
    th1, p1 = c1.sample(samples)
    th2, p2 = c2.sample(samples)
    d = np.linalg.norm(p1[:, None, :] - p2[None, :, :], axis=-1)
    i, j = np.unravel_index(np.argmin(d), d.shape)
    res = minimize(lambda t: float(np.linalg.norm(c1.point(t[0]) - c2.point(t[1]))),
                   x0=[th1[i], th2[j]], method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-12})
    return float(min(res.fun, d[i, j]))


def sampled_min_distance(c1: CongruenceCircle, c2: CongruenceCircle, samples: int = 64) -> float:
    _, p1 = c1.sample(samples)
    _, p2 = c2.sample(samples)
    return float(np.min(np.linalg.norm(p1[:, None, :] - p2[None, :, :], axis=-1)))


def tangent_grid(cfg: SceneConfig) -> list[tuple[np.ndarray, np.ndarray]]:
    """``(point, unit tangent)`` over the configured cube at ``t = tau``."""
    congruence_scene_check(cfg)
    axes = [np.linspace(-cfg.extent, cfg.extent, n) if n > 1 else np.zeros(1) for n in cfg.grid]
    out = []
    for x in axes[0]:
        for y in axes[1]:
            for z in axes[2]:
                p = np.array([x, y, z])
                try:
                    out.append((p, tangent_field(cfg.s, cfg.tau, p)))
                except SingularTransformation:
                    continue
    return out


# --- d-lines ------------------------------------------------------------------

def to_dlines(circle: CongruenceCircle, s: float, samples: int) -> np.ndarray:
    """Circle points translated so the seed sits at the origin, in the ``F_H`` model.

    The helicity is the length scale; its magnitude is used so negative
    helicities give the same geometry.
    """
    lam = abs(s)
    if lam == 0:
        raise ValueError("d-lines need a non-null twistor")
    u0 = to_cga(sta_vector(0.0, *circle.seed))
    rotor = hyperbolic_translation_rotor(-u0, lam)
    _, pts = circle.sample(samples)
    out = []
    for p in pts:
        X = embed_hyperbolic(to_cga(sta_vector(0.0, *p)), lam).X
        Xp = rotor * X * ~rotor
        out.append(vector_components(extract_hyperbolic(Xp, lam))[1:])
    return np.array(out)


def collinearity_through_origin(points: np.ndarray) -> float:
    """Max distance from the best line through 0, divided by the segment length."""
    _, _, vt = np.linalg.svd(points)
    d = vt[0]
    perp = points - np.outer(points @ d, d)
    length = float(np.max(np.linalg.norm(points, axis=1)))
    return float(np.max(np.linalg.norm(perp, axis=1)) / length)


def dline_direction(points: np.ndarray) -> np.ndarray:
    _, _, vt = np.linalg.svd(points)
    return vt[0]


# --- the ray as a 6-d observable ------------------------------------------------

def _spin_wedge(u: Multivector, vec: Multivector) -> Multivector:
    return ((u * to_cga(IS3) * ~u) ^ vec).grade(3)


def ray_observable(psi: Multivector) -> Multivector:
    """``L_psi = (Psi I sigma_3 ~Psi) ^ n`` with ``Psi = psi W1 W2``."""
    return _spin_wedge(lift(psi), N_INF)


def ray_observable_expanded(psi: Multivector) -> Multivector:
    """``1/2 (M_0 ^ n + p e eb)``."""
    m0 = to_cga(spin_bivector(psi).grade(2))
    p = to_cga(momentum(twistor_new(psi)))
    return (0.5 * ((m0 ^ N_INF) + p * E_EBAR)).grade(3)


def transform_observable(psi: Multivector, translate: Multivector | None = None,
                         invert: bool = False) -> Multivector:
    """Observable of the transformed 6-d state.

    ``translate=a`` applies ``T_a`` to ``Psi``; ``invert`` applies
    ``Psi -> -e Psi I gamma_1``.  Translation is applied first when both are given.
    """
    u = lift(psi)
    if translate is not None:
        u = translation_rotor(translate) * u
    if invert:
        u = invert6(u)
    return _spin_wedge(u, N_INF)


def inverted_observable_reflected(psi: Multivector) -> Multivector:
    """``-e [(Psi I sigma_3 ~Psi) ^ nbar] e``."""
    return -(E * _spin_wedge(lift(psi), N_BAR) * E).grade(3)
