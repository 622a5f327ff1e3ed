"""
Named invariant suites.

Each suite draws its inputs from one seeded generator, so a suite report is
a function of (seed, samples) alone; the worker count only changes how the
Monte Carlo chunks are scheduled.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np

from achronal.config import get_config
from achronal.errors import InconsistencyError, InvalidArgumentError
from achronal.lattice import (
    al_to_rcl_correspondence,
    asdc_comparison,
    chain_localization,
    closed_sets,
    closure_check,
    dacey_check,
    de_morgan_check,
    orthoadditivity_check,
    orthomodularity_check,
    parse_universe,
    random_universe,
)
from achronal.linespace import (
    StateDensity,
    additivity_check,
    causality_check,
    covariance_check,
    line_meets_region,
    line_surface_intersection,
    localization_probability,
    monotonicity_check,
    n_measure,
    n_measure_mc,
    null_region_check,
)
from achronal.logger import get_logger
from achronal.poincare import (
    LinePoint,
    PoincareElement,
    SpinorMatrix,
    act_on_line,
    act_on_momentum_velocity,
    canonical_boost_matrices,
    covering_map,
    dagger,
    inverse_matrices,
    line_action_rn_derivative,
    lorentz_apply,
    random_sl2c,
    random_su2,
    random_unit_vectors,
    wigner_d_matrices,
    wigner_rotation_matrices,
)
from achronal.spectrum import (
    GaussianField,
    SpinContext,
    apply_w_interval,
    apply_w_irreducible,
    apply_w_mom,
    apply_w_pos,
    density_ratio_residual,
    energy,
    equivariance_residual,
    fibre_sampler,
    in_pi,
    in_pi_by_gap,
    iota,
    k_m_inverse,
    k_m_map,
    l2_norm_estimate,
    mass_squared,
    momentum_sampler,
    multiplicity,
    on_shell_momentum,
    pair_sampler,
    peter_weyl_dimension_check,
    rotation_factorization_residual,
    s_matrices,
    spin_tally,
)
from achronal.surfaces import (
    Ball,
    Box,
    CausalBaseVerdict,
    CauchyVerdict,
    ClampSurface,
    Complement,
    FlatSurface,
    GridSurface,
    Halfspace,
    KinkSurface,
    LightCone,
    Region,
    SqrtShell,
    TiltedPlane,
    causal_base_check,
    cauchy_surface_check,
    clamp_pieces,
    is_spacelike_sampled,
    lightlike_segment_check,
    lipschitz_estimate,
    region_of_influence,
    regions_spacelike_separated,
)
from achronal.verification.report import PropertyResult, Severity, SuiteReport

logger = get_logger("verification.suites")

IDENTITY_TOL = 1e-9
WIGNER_TOL = 1e-10
CLOSED_FORM_TOL = 1e-10
FD_IDENTITY_TOL = 1e-6
MEASURE_REL_TOL = 1e-4
SIGMAS = 3.0

# Caps on the pointwise draws of each identity
POINTWISE_CAP = 10_000
PAIR_CAP = 1_000
LINE_CAP = 20_000
RANDOM_UNIVERSE_CAP = 1_000

DEFAULT_UNIVERSE = "grid3"


@dataclass(frozen=True)
class SuiteOptions:
    """Inputs shared by every suite."""
    seed: int = 0
    samples: int = 10_000
    workers: int = 1
    universe: Optional[str] = None
    spin: str = "1/2"


# ---------------------------------------------------------------------------
# Shared draws
# ---------------------------------------------------------------------------

def _random_lines(rng: np.random.Generator, n: int, speed: float = 0.9, spread: float = 2.0):
    x = rng.normal(0.0, spread, (n, 3))
    v = random_unit_vectors(rng, n) * (speed * rng.uniform(0.0, 1.0, n) ** (1.0 / 3.0))[:, None]
    return x, v


def _random_timelike(rng: np.random.Generator, n: int) -> np.ndarray:
    spatial = rng.normal(0.0, 1.0, (n, 3))
    t = np.linalg.norm(spatial, axis=-1) + rng.uniform(0.1, 2.0, n)
    return np.concatenate([t[:, None], spatial], axis=-1)


def _random_element(rng: np.random.Generator, max_rapidity: float = 1.0) -> PoincareElement:
    return PoincareElement(rng.normal(0.0, 1.0, 4), SpinorMatrix(random_sl2c(rng, 1, max_rapidity)[0]))


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b)), initial=0.0))


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a), initial=0.0))


# ---------------------------------------------------------------------------
# group
# ---------------------------------------------------------------------------

def _line_jacobian_error(g: PoincareElement, x: np.ndarray, v: np.ndarray) -> float:
    """Max relative gap between the RN derivative and |det| of the FD Jacobian of u -> g^-1.u."""
    h = get_config().fd_step
    g_inv = g.inverse()
    z = np.concatenate([x, v], axis=-1)
    shift = np.eye(6) * h

    def moved(points: np.ndarray) -> np.ndarray:
        flat = points.reshape(-1, 6)
        u = act_on_line(g_inv, LinePoint(flat[:, :3], flat[:, 3:]))
        return np.concatenate([u.x, u.v], axis=-1).reshape(points.shape)

    jacobian = (moved(z[:, None, :] + shift) - moved(z[:, None, :] - shift)) / (2.0 * h)
    det = np.abs(np.linalg.det(jacobian))
    rn = line_action_rn_derivative(g, LinePoint(x, v))
    return float(np.max(np.abs(det / rn - 1.0)))


def group_suite(options: SuiteOptions) -> SuiteReport:
    """Covering map, Wigner machinery, D-matrices and the actions on lines."""
    report = SuiteReport("group", options.seed, options.samples, options.workers)
    rng = np.random.default_rng(options.seed)
    n = min(options.samples, PAIR_CAP)

    A = random_sl2c(rng, n)
    B = random_sl2c(rng, n)
    lam_a = covering_map(A)
    eta = np.diag([1.0, -1.0, -1.0, -1.0])
    report.add(PropertyResult.from_deviation(
        "covering-homomorphism", _max_abs(covering_map(A @ B) - lam_a @ covering_map(B)), IDENTITY_TOL, n))
    report.add(PropertyResult.from_deviation(
        "minkowski-form-preserved",
        _max_abs(np.swapaxes(lam_a, -1, -2) @ eta @ lam_a - eta), IDENTITY_TOL, n))
    report.add(PropertyResult.from_deviation(
        "covering-even", _max_abs(covering_map(-A) - lam_a), IDENTITY_TOL, n))

    k = _random_timelike(rng, n)
    U = random_su2(rng, n)
    report.add(PropertyResult.from_deviation(
        "wigner-rotation-of-rotation", _max_abs(wigner_rotation_matrices(k, U) - U), WIGNER_TOL, n))
    R = wigner_rotation_matrices(k, A)
    report.add(PropertyResult.from_deviation(
        "wigner-rotation-unitary", _max_abs(R @ dagger(R) - np.eye(2)), WIGNER_TOL, n))
    Q = canonical_boost_matrices(k)
    alpha = rng.uniform(0.1, 10.0, n)
    report.add(PropertyResult.from_deviation(
        "canonical-boost-scale-invariant",
        _max_abs(canonical_boost_matrices(alpha[:, None] * k) - Q), WIGNER_TOL, n))
    report.add(PropertyResult.from_deviation(
        "canonical-boost-rotation-covariant",
        _max_abs(canonical_boost_matrices(lorentz_apply(U, k)) - U @ Q @ inverse_matrices(U)), WIGNER_TOL, n))

    V = random_su2(rng, n)
    worst_d = max(
        _max_abs(wigner_d_matrices(twice, U @ V) - wigner_d_matrices(twice, U) @ wigner_d_matrices(twice, V))
        for twice in range(1, 5)
    )
    report.add(PropertyResult.from_deviation("wigner-d-homomorphism", worst_d, WIGNER_TOL, n))

    n_elements = max(1, n // 50)
    line_error = 0.0
    rn_error = 0.0
    for _ in range(n_elements):
        g1 = _random_element(rng)
        g2 = _random_element(rng)
        x, v = _random_lines(rng, 50, speed=0.8)
        u = LinePoint(x, v)
        composed = act_on_line(g1, act_on_line(g2, u))
        direct = act_on_line(g1 * g2, u)
        line_error = max(line_error, _relative(composed.x, direct.x), _relative(composed.v, direct.v))
        rn_error = max(rn_error, _line_jacobian_error(g1, x[:10], v[:10]))
    report.add(PropertyResult.from_deviation("line-action-composition", line_error, IDENTITY_TOL, 50 * n_elements))
    report.add(PropertyResult.from_deviation("line-rn-derivative", rn_error, FD_IDENTITY_TOL, 10 * n_elements))
    return report


# ---------------------------------------------------------------------------
# surfaces
# ---------------------------------------------------------------------------

def _grid_example() -> GridSurface:
    axis = [-3.0, -1.0, 1.0, 3.0]
    values = [[[0.4 * abs(a) + 0.2 * c for c in axis] for _ in axis] for a in axis]
    return GridSurface(axes=(axis, axis, axis), values=values)


def builtin_surfaces() -> List:
    return [
        FlatSurface(t0=0.3),
        TiltedPlane(w=(0.3, -0.2, 0.5), offset=0.1),
        TiltedPlane(w=(0.0, 0.0, 1.0)),
        LightCone(),
        SqrtShell(a=1.0),
        ClampSurface(),
        KinkSurface(slope=0.5),
        _grid_example(),
    ]


def surfaces_suite(options: SuiteOptions) -> SuiteReport:
    """Intersection accuracy, the named surface examples and the influence disc."""
    report = SuiteReport("surfaces", options.seed, options.samples, options.workers)
    config = get_config()
    rng = np.random.default_rng(options.seed)
    n = min(options.samples, LINE_CAP)

    residual = 0.0
    for surface in builtin_surfaces():
        x, v = _random_lines(rng, n)
        s, _ = line_surface_intersection(LinePoint(x, v), surface)
        gap = np.abs(s - surface.tau(x + s[:, None] * v)) / np.maximum(1.0, np.abs(s))
        residual = max(residual, _max_abs(gap))
    report.add(PropertyResult.from_deviation(
        "intersection-residual", residual, config.fixed_point_tol, n * len(builtin_surfaces())))

    closed_form = 0.0
    for plane in (FlatSurface(t0=-0.7), TiltedPlane(w=(0.3, -0.2, 0.5), offset=0.1)):
        t0, w = plane.linear_form()
        x, v = _random_lines(rng, n)
        s, _ = line_surface_intersection(LinePoint(x, v), plane)
        closed_form = max(closed_form, _max_abs(s - (t0 + x @ w) / (1.0 - v @ w)))
    report.add(PropertyResult.from_deviation("intersection-closed-form", closed_form, CLOSED_FORM_TOL, 2 * n))

    pairs = min(options.samples, 4000)
    null_plane = TiltedPlane(w=(0.0, 0.0, 1.0))
    null_base = causal_base_check(null_plane, rng_seed=options.seed, n_pairs=pairs)
    report.add(PropertyResult(
        name="null-plane-achronal-not-spacelike",
        passed=bool(
            lipschitz_estimate(null_plane, pairs, options.seed) <= 1.0 + config.eps_strict
            and not is_spacelike_sampled(null_plane, pairs, options.seed)
            and null_base.verdict == CausalBaseVerdict.NOT_CAUSAL_BASE
            and null_base.witness is not None
        ),
        samples=pairs,
        details=null_base.to_dict(),
    ))

    cone = LightCone()
    cone_cauchy = cauchy_surface_check(cone, rng_seed=options.seed)
    report.add(PropertyResult(
        name="light-cone-maximal-achronal",
        passed=bool(
            lipschitz_estimate(cone, pairs, options.seed) <= 1.0 + config.eps_strict
            and cone_cauchy.verdict == CauchyVerdict.NOT_CAUCHY
        ),
        samples=pairs,
        details=cone_cauchy.to_dict(),
    ))

    shell = causal_base_check(SqrtShell(a=1.0), rng_seed=options.seed, n_pairs=pairs)
    report.add(PropertyResult(
        name="sqrt-shell-not-causal-base",
        passed=bool(
            shell.details.get("spacelike")
            and shell.verdict == CausalBaseVerdict.NOT_CAUSAL_BASE
            and shell.witness is not None
        ),
        samples=pairs,
        details=shell.to_dict(),
    ))

    for name, surface in (("flat-causal-base", FlatSurface()), ("kink-causal-base", KinkSurface())):
        verdict = causal_base_check(surface, rng_seed=options.seed, n_pairs=pairs)
        report.add(PropertyResult(
            name=name,
            passed=verdict.verdict == CausalBaseVerdict.CAUSAL_BASE,
            samples=pairs,
            details=verdict.to_dict(),
        ))

    clamp = cauchy_surface_check(ClampSurface(), rng_seed=options.seed)
    report.add(PropertyResult(
        name="clamp-meets-lightlike-lines",
        passed=clamp.verdict != CauchyVerdict.NOT_CAUCHY,
        samples=int(clamp.details.get("lines", 0)),
        details=clamp.to_dict(),
    ))
    lower, upper = clamp_pieces()
    vertical = LinePoint(np.array([0.0, 0.0, 0.5]), np.zeros(3))
    report.add(PropertyResult(
        name="clamp-pieces-spacelike-separated",
        passed=bool(
            regions_spacelike_separated(lower, upper, n_pairs=pairs, rng_seed=options.seed)
            and not line_meets_region(vertical, lower)
            and not line_meets_region(vertical, upper)
        ),
        samples=pairs,
    ))

    report.add(PropertyResult(
        name="lightlike-segment-in-null-plane",
        passed=lightlike_segment_check(null_plane, [0.0, 0.0, 0.0, 0.0], [1.0, 0.0, 0.0, 1.0]),
        samples=64,
    ))

    # Ball of radius 1 at time 0 reaches the disc of radius 2 at time 1
    region = Region(surface=FlatSurface(t0=0.0), base=Ball(radius=1.0))
    directions = random_unit_vectors(rng, 256)
    inside = region_of_influence(region, FlatSurface(t0=1.0), 1.95 * directions)
    outside = region_of_influence(region, FlatSurface(t0=1.0), 2.05 * directions)
    misclassified = int(np.sum(~inside) + np.sum(outside))
    report.add(PropertyResult.from_deviation("influence-disc", misclassified, 0, 512))
    return report


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------

def _record_laws(report: SuiteReport, universe, rng: np.random.Generator, prefix: str) -> None:
    closed = closed_sets(universe)
    singletons = [frozenset([i]) for i in range(len(universe))]
    extra = [frozenset(np.flatnonzero(rng.random(len(universe)) < 0.4).tolist()) for _ in range(16)]
    family = list(dict.fromkeys(closed + singletons + extra))
    report.add(PropertyResult.from_check(f"{prefix}closure-laws", closure_check(universe, family)))
    report.add(PropertyResult.from_check(f"{prefix}de-morgan", de_morgan_check(universe, family)))


def lattice_suite(options: SuiteOptions) -> SuiteReport:
    """
    Causal logic of the chosen universe, plus the orthomodular/Dacey
    equivalence on random six-point universes.
    """
    report = SuiteReport("lattice", options.seed, options.samples, options.workers)
    rng = np.random.default_rng(options.seed)
    universe = parse_universe(options.universe or DEFAULT_UNIVERSE)

    closed = closed_sets(universe)
    singletons = [frozenset([i]) for i in range(len(universe))]
    family = list(dict.fromkeys(closed + singletons))
    report.add(PropertyResult.from_check("closure-laws", closure_check(universe, family)))
    report.add(PropertyResult.from_check("de-morgan", de_morgan_check(universe, family)))
    om = orthomodularity_check(universe, closed)
    dacey = dacey_check(universe, closed)
    report.add(PropertyResult.from_check("orthomodularity", om, Severity.SOFT))
    report.add(PropertyResult.from_check("dacey", dacey, Severity.SOFT))
    report.add(PropertyResult(
        name="orthomodular-iff-dacey",
        passed=om["passes"] == dacey["passes"],
        samples=len(closed),
        details={"orthomodular": om["passes"], "dacey": dacey["passes"]},
    ))
    report.add(PropertyResult.from_check("determinacy-vs-completion", asdc_comparison(universe), Severity.SOFT))

    try:
        localization = chain_localization(universe)
        lattice_map = al_to_rcl_correspondence(localization, universe, family=closed)
        report.add(PropertyResult.from_check(
            "chain-localization-orthoadditive",
            orthoadditivity_check(lattice_map, universe),
            Severity.HARD if dacey["passes"] else Severity.SOFT,
        ))
    except (InconsistencyError, InvalidArgumentError) as e:
        report.add(PropertyResult(
            name="chain-localization-orthoadditive",
            passed=False,
            severity=Severity.HARD if dacey["passes"] else Severity.SOFT,
            details={"error": str(e)},
        ))

    n_random = min(RANDOM_UNIVERSE_CAP, max(10, options.samples // 10))
    disagreements = 0
    orthomodular = 0
    for i in range(n_random):
        small = random_universe(rng, 6)
        closed_small = closed_sets(small)
        om_small = orthomodularity_check(small, closed_small)["passes"]
        dacey_small = dacey_check(small, closed_small)["passes"]
        orthomodular += int(om_small)
        disagreements += int(om_small != dacey_small)
        if i < 20:
            _record_laws(report, small, rng, prefix=f"random{i}.")
    report.add(PropertyResult.from_deviation(
        "random-orthomodular-iff-dacey", disagreements, 0, n_random, orthomodular=orthomodular))
    return report


# ---------------------------------------------------------------------------
# localization
# ---------------------------------------------------------------------------

def _partitions() -> List[List]:
    halfspace = Halfspace(normal=(0.0, 0.0, 1.0), offset=0.0)
    ball = Ball(radius=1.0)
    box = Box(lower=(-1.0, -1.0, -1.0), upper=(1.0, 1.0, 1.0))
    return [[halfspace, Complement(of=halfspace)], [ball, Complement(of=ball)], [box, Complement(of=box)]]


def localization_suite(options: SuiteOptions) -> SuiteReport:
    """Normalization, additivity, causality, covariance and the line measure."""
    report = SuiteReport("localization", options.seed, options.samples, options.workers)
    state = StateDensity(sigma=1.0)
    n = options.samples
    seed = options.seed

    surfaces = [FlatSurface(), TiltedPlane(w=(0.4, 0.0, 0.3)), SqrtShell(a=1.0), KinkSurface()]
    for i, surface in enumerate(surfaces):
        for j, bases in enumerate(_partitions()):
            partition = [Region(surface=surface, base=b) for b in bases]
            result = additivity_check(state, partition, n, seed)
            report.add(PropertyResult.from_check(f"additivity.{surface.kind}{i}.{j}", result))

    source = Region(surface=FlatSurface(), base=Ball(radius=1.0))
    scenarios = [
        (source, FlatSurface(t0=1.0)),
        (source, TiltedPlane(w=(0.3, 0.0, 0.0), offset=1.0)),
        (Region(surface=FlatSurface(t0=-1.0), base=Ball(radius=1.0)), KinkSurface()),
        (source, FlatSurface(t0=-1.0)),
        (
            Region(surface=TiltedPlane(w=(0.2, 0.1, 0.0)), base=Halfspace(normal=(1.0, 0.0, 0.0), offset=-0.5)),
            TiltedPlane(w=(0.0, 0.5, 0.5), offset=0.5),
        ),
        # Curved sources go through the grid search; far targets need wide windows
        (Region(surface=KinkSurface(), base=Ball(radius=2.0)), FlatSurface(t0=100.0)),
        (Region(surface=ClampSurface(lower=-0.5, upper=0.5), base=Ball(radius=1.0)), FlatSurface(t0=60.0)),
    ]
    for i, (region, sigma) in enumerate(scenarios):
        result = causality_check(state, region, sigma, n, seed)
        report.add(PropertyResult.from_check(f"causality.{i}", result))

    axis = np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)
    elements = {
        "translation": PoincareElement.translation_by([0.4, 0.3, 0.1, -0.2]),
        "rotation": PoincareElement.lorentz(SpinorMatrix.rotation(axis, 0.7)),
        "boost": PoincareElement.lorentz(SpinorMatrix.boost([0.0, 0.0, 1.0], 0.5)),
    }
    for name, g in elements.items():
        result = covariance_check(state, source, g, n, seed)
        report.add(PropertyResult.from_check(f"covariance.{name}", result))

    target = 4.0 * np.pi / 3.0
    measure_error = 0.0
    for surface in (FlatSurface(), TiltedPlane(w=(0.4, 0.0, 0.3)), SqrtShell(a=1.0)):
        for base in (Ball(radius=1.0), Box(lower=(0.0, 0.0, 0.0), upper=(1.0, 2.0, 0.5))):
            value = n_measure(surface, base)
            measure_error = max(measure_error, abs(value / (target * base.volume()) - 1.0))
    report.add(PropertyResult.from_deviation("line-measure-quadrature", measure_error, MEASURE_REL_TOL, 6))
    mc = n_measure_mc(SqrtShell(a=1.0), Ball(radius=1.0), n, seed)
    report.add(PropertyResult(
        name="line-measure-monte-carlo",
        passed=mc.within(target * Ball(radius=1.0).volume(), SIGMAS),
        samples=n,
        details=mc.to_dict(),
    ))

    report.add(PropertyResult.from_check(
        "null-set", null_region_check(state, Region(surface=FlatSurface(), base=Ball(radius=0.0)), n, seed)))
    report.add(PropertyResult.from_check(
        "monotonicity",
        monotonicity_check(
            state,
            Region(surface=TiltedPlane(w=(0.4, 0.0, 0.3)), base=Ball(radius=0.5)),
            Region(surface=TiltedPlane(w=(0.4, 0.0, 0.3)), base=Ball(radius=1.0)),
            n,
            seed,
        ),
    ))

    half = localization_probability(
        state, Region(surface=FlatSurface(), base=Halfspace(normal=(0.0, 0.0, 1.0))), n, seed, options.workers
    )
    report.add(PropertyResult(
        name="symmetric-halfspace",
        passed=half.within(0.5, SIGMAS),
        samples=n,
        severity=Severity.SOFT,
        details=half.to_dict(),
    ))
    return report


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def _fibre_points(ctx: SpinContext, rng: np.random.Generator, n: int):
    low, high = ctx.mass_window
    return rng.uniform(low, high, n), rng.normal(0.0, 1.0, (n, 3)), random_unit_vectors(rng, n)


def _unit_spinor(rng: np.random.Generator, dim: int) -> np.ndarray:
    spinor = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return spinor / np.linalg.norm(spinor)


def _norms_agree(name: str, before, after, n: int) -> PropertyResult:
    combined = float(np.hypot(before.std_error, after.std_error))
    return PropertyResult(
        name=name,
        passed=abs(after.value - before.value) <= SIGMAS * combined + 1e-12,
        samples=n,
        worst_deviation=abs(after.value - before.value),
        tolerance=SIGMAS * combined,
        details={"before": before.to_dict(), "after": after.to_dict()},
    )


def _composition_error(apply: Callable, pairs: int, rng: np.random.Generator, points: Callable, phi) -> float:
    worst = 0.0
    for _ in range(pairs):
        g1 = _random_element(rng, 0.5)
        g2 = _random_element(rng, 0.5)
        coordinates = points(rng)
        nested = apply(g1, apply(g2, phi))(*coordinates)
        direct = apply(g1 * g2, phi)(*coordinates)
        worst = max(worst, _relative(nested, direct))
    return worst


def spectrum_suite(options: SuiteOptions) -> SuiteReport:
    """Observables, the mass fibration, the representations and the multiplicities."""
    report = SuiteReport("spectrum", options.seed, options.samples, options.workers)
    ctx = SpinContext(spin=options.spin)
    rng = np.random.default_rng(options.seed)
    n = min(options.samples, POINTWISE_CAP)
    mu = ctx.mu

    p = rng.normal(0.0, 1.0, (n, 3))
    _, v = _random_lines(rng, n)
    A = random_sl2c(rng, n)
    e = np.asarray(energy(p, v, mu))
    moved_p, moved_v = act_on_momentum_velocity(A, p, v, mu)
    boosted = lorentz_apply(A, np.concatenate([e[:, None], p], axis=-1))
    report.add(PropertyResult.from_deviation(
        "energy-covariance", _relative(boosted[:, 0], energy(moved_p, moved_v, mu)), IDENTITY_TOL, n))
    report.add(PropertyResult.from_deviation(
        "mass-squared-invariance", _relative(mass_squared(moved_p, moved_v, mu), mass_squared(p, v, mu)),
        IDENTITY_TOL, n))
    report.add(PropertyResult.from_deviation(
        "pi-membership-two-ways", int(np.sum(in_pi(p, v, mu) != in_pi_by_gap(p, v, mu))), 0, n))

    m, q, omega = _fibre_points(ctx, rng, n)
    point = k_m_map(ctx, m, q, omega)
    report.add(PropertyResult.from_deviation(
        "k-on-shell", _relative(point.energy(), on_shell_momentum(m, q)[:, 0]), IDENTITY_TOL, n))
    m_back, q_back, omega_back = k_m_inverse(ctx, point.p, point.v)
    report.add(PropertyResult.from_deviation(
        "k-round-trip",
        max(_max_abs(m_back - m), _max_abs(q_back - q), _max_abs(omega_back - omega)), IDENTITY_TOL, n))

    gamma = np.asarray(mass_squared(p, v, mu))
    interior = (e > 0) & (gamma > 0.01 * mu ** 2) & (gamma < 0.99 * mu ** 2)
    m_in, q_in, omega_in = k_m_inverse(ctx, p[interior], v[interior])
    forward = k_m_map(ctx, m_in, q_in, omega_in / np.linalg.norm(omega_in, axis=-1, keepdims=True))
    report.add(PropertyResult.from_deviation(
        "fibration-bijective", _max_abs(forward.v - v[interior]), IDENTITY_TOL, int(interior.sum())))

    S = s_matrices(ctx, m, q, omega)
    report.add(PropertyResult.from_deviation(
        "s-matrix-unitary", _max_abs(S @ np.conj(np.swapaxes(S, -1, -2)) - np.eye(ctx.dimension)), WIGNER_TOL, n))

    B = random_sl2c(rng, n)
    equivariance = equivariance_residual(ctx, B, m, q, omega)
    report.add(PropertyResult.from_deviation(
        "fibration-equivariance", max(equivariance.values()), IDENTITY_TOL, n, **equivariance))
    factorization = rotation_factorization_residual(ctx, B, m, q, omega)
    report.add(PropertyResult.from_deviation(
        "rotation-factorization", max(factorization.values()), FD_IDENTITY_TOL, n, **factorization))
    report.add(PropertyResult.from_deviation(
        "density-ratio", density_ratio_residual(ctx, B, m, q, omega), FD_IDENTITY_TOL, n))

    phi = GaussianField(_unit_spinor(rng, ctx.dimension), width=0.5, velocity_width=0.15)
    pairs = min(options.samples // 10 + 1, PAIR_CAP)
    intertwiner = 0.0
    for _ in range(pairs):
        g = _random_element(rng, 0.5)
        mm, qq, ww = _fibre_points(ctx, rng, 4)
        lhs = iota(ctx, apply_w_mom(ctx, g, phi))(mm, qq, ww)
        rhs = apply_w_interval(ctx, g, iota(ctx, phi))(mm, qq, ww)
        intertwiner = max(intertwiner, _relative(lhs, rhs))
    report.add(PropertyResult.from_deviation("iota-intertwiner", intertwiner, FD_IDENTITY_TOL, 4 * pairs))

    def pair_points(r):
        return _random_lines(r, 8, speed=0.5, spread=0.5)

    def fibre_points(r):
        return _fibre_points(ctx, r, 8)

    def momenta(r):
        return (r.normal(0.0, 1.0, (8, 3)),)

    j = ctx.J
    compositions = {
        "w-mom-composition": _composition_error(
            lambda g, f: apply_w_mom(ctx, g, f), pairs, rng, pair_points, phi),
        "w-interval-composition": _composition_error(
            lambda g, f: apply_w_interval(ctx, g, f), pairs, rng, fibre_points, phi.on_fibres),
        "w-irreducible-composition": _composition_error(
            lambda g, f: apply_w_irreducible(0.5, j, g, f), pairs, rng, momenta, phi.on_momenta),
        "w-pos-composition": _composition_error(
            lambda g, f: apply_w_pos(ctx, g, f), pairs, rng, pair_points, phi.on_pairs),
    }
    for name, error in compositions.items():
        report.add(PropertyResult.from_deviation(name, error, 1e-8, 8 * pairs))

    g = _random_element(rng, 0.3)
    n_mc = options.samples
    workers = options.workers
    sampler = pair_sampler(np.zeros(3), 4.0)
    report.add(_norms_agree(
        "w-mom-unitary",
        l2_norm_estimate(phi, sampler, n_mc, options.seed, workers),
        l2_norm_estimate(apply_w_mom(ctx, g, phi), sampler, n_mc, options.seed, workers),
        n_mc,
    ))
    fibres = fibre_sampler(ctx, np.zeros(3), 4.0)
    report.add(_norms_agree(
        "w-interval-unitary",
        l2_norm_estimate(phi.on_fibres, fibres, n_mc, options.seed, workers),
        l2_norm_estimate(apply_w_interval(ctx, g, phi.on_fibres), fibres, n_mc, options.seed, workers),
        n_mc,
    ))
    shell = momentum_sampler(np.zeros(3), 4.0)
    report.add(_norms_agree(
        "w-irreducible-unitary",
        l2_norm_estimate(phi.on_momenta, shell, n_mc, options.seed, workers),
        l2_norm_estimate(apply_w_irreducible(0.5, j, g, phi.on_momenta), shell, n_mc, options.seed, workers),
        n_mc,
    ))

    low, high = ctx.mass_window

    wide = GaussianField(phi.spinor, width=0.5, velocity_width=0.4)

    def windowed(pp, vv):
        e_w = np.asarray(energy(pp, vv, mu))
        g_w = np.asarray(mass_squared(pp, vv, mu))
        keep = (e_w > 0) & (g_w > low ** 2) & (g_w < high ** 2)
        return keep[..., None] * wide(pp, vv)

    report.add(_norms_agree(
        "iota-isometry",
        l2_norm_estimate(windowed, sampler, n_mc, options.seed, workers),
        l2_norm_estimate(iota(ctx, wide), fibres, n_mc, options.seed + 1, workers),
        n_mc,
    ))

    mismatches = 0
    for twice_big in range(13):
        tally = spin_tally(Fraction(twice_big, 2), 12)
        for twice_small in range(13):
            spin = Fraction(twice_small, 2)
            if spin + Fraction(twice_big, 2) > 12:
                continue
            closed = multiplicity(Fraction(twice_big, 2), spin)
            mismatches += int(tally.get(spin, 0) != closed)
            mismatches += int(closed != multiplicity(spin, Fraction(twice_big, 2)))
    report.add(PropertyResult.from_deviation("multiplicity-tally", mismatches, 0, 169))

    for spin, l_max in ((0, 2), (Fraction(1, 2), 1), (Fraction(3, 2), 0), (j, max(ctx.l_max, 3))):
        check = peter_weyl_dimension_check(spin, l_max, seed=options.seed)
        report.add(PropertyResult.from_check(f"peter-weyl.J{spin}.L{l_max}", check))
    return report


SUITES: Dict[str, Callable[[SuiteOptions], SuiteReport]] = {
    "group": group_suite,
    "surfaces": surfaces_suite,
    "lattice": lattice_suite,
    "localization": localization_suite,
    "spectrum": spectrum_suite,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, options: SuiteOptions) -> SuiteReport:
    """
    Run one named suite, or every suite for "all".

    Raises:
        InvalidArgumentError: On unknown suite names
    """
    if name == "all":
        report = SuiteReport("all", options.seed, options.samples, options.workers)
        for suite_name, suite in SUITES.items():
            report.extend(suite(options))
        return report
    if name not in SUITES:
        raise InvalidArgumentError("suite", f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES)}")
    logger.info(f"Running {name} suite (seed={options.seed}, samples={options.samples})")
    report = SUITES[name](options)
    for failure in report.failures():
        logger.error(f"{name}: property {failure.name} failed")
    return report


__all__ = ["SuiteOptions", "SUITES", "SUITE_NAMES", "builtin_surfaces", "run_suite"]
