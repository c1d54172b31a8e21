"""
Particle discretization of the aggregation flow dx_i/dt = -sum_j w_j grad W(x_i - x_j),
integrated with RK4 under an energy watchdog
"""

from collections import namedtuple
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from shellswarm.core.kernel import Kernel
from shellswarm.core.measure import DiscreteMeasure
from shellswarm.errors import DomainError, StepCollapseError
from shellswarm.equilibria import RingConfig, ring_measure, shell_proxy
from shellswarm.potentials import interaction_energy, particle_velocities
from shellswarm.special import shell_radius_closed_form
from shellswarm.transport import distance_to_minimizer
from shellswarm.util import make_rng, write_csv, write_json


logger = logging.getLogger('<dynamics>')

ENERGY_SLACK = 1e-10
MIN_DT = 1e-15


class FlowState(namedtuple('FlowState', ['measure', 'time', 'energy', 'force_residual'])):
    """
    Particle configuration at a given time with its energy and largest speed
    """

    __slots__ = ()

    @classmethod
    def from_measure(cls, measure, kernel, time=0.0):
        velocities = particle_velocities(kernel, measure)
        return cls(measure, float(time), interaction_energy(kernel, measure),
                   float(np.linalg.norm(velocities, axis=1).max()))


class FlowTrajectory:
    """
    Time-ordered flow states with the kernel parameters and the step policy
    used to produce them
    """

    def __init__(self, states, params, policy):
        self.states = list(states)
        self.params = params
        self.policy = dict(policy)

    def __len__(self):
        return len(self.states)

    @property
    def final(self):
        return self.states[-1]

    @property
    def times(self):
        return np.array([s.time for s in self.states])

    @property
    def energies(self):
        return np.array([s.energy for s in self.states])

    def energy_nonincreasing(self, slack=ENERGY_SLACK):
        return bool(np.all(np.diff(self.energies) <= slack))

    def center_of_mass_drift(self):
        start = self.states[0].measure.center_of_mass()
        return max(float(np.linalg.norm(s.measure.center_of_mass() - start)) for s in self.states)

    def to_frame(self):
        return pd.DataFrame({
            'time': self.times,
            'energy': self.energies,
            'force_residual': [s.force_residual for s in self.states]
        })

    def to_csv(self, output):
        return write_csv(self.to_frame(), output)

    def write_snapshots(self, directory):
        """
        Save every recorded state as a measure JSON file with its time

        Returns:
            list: paths written
        """
        directory = Path(directory)
        paths = []
        for (i, state) in enumerate(self.states):
            data = dict(state.measure.to_dict(), time=state.time, energy=state.energy)
            paths.append(write_json(data, Path(directory, f'state_{i:05d}.json')))
        return paths


def _rk4(kernel, measure, dt):
    weights = measure.weights

    def velocity(points):
        return particle_velocities(kernel, DiscreteMeasure._from_arrays(points, weights))

    x = measure.points
    k1 = velocity(x)
    k2 = velocity(x + 0.5*dt*k1)
    k3 = velocity(x + 0.5*dt*k2)
    k4 = velocity(x + dt*k3)

    return DiscreteMeasure._from_arrays(x + dt/6*(k1 + 2*k2 + 2*k3 + k4), weights)


def _advance(state, kernel, dt):
    """
    One accepted RK4 step, halving dt while the energy rises by more than ENERGY_SLACK

    Returns:
        tuple: (FlowState, number of rejected attempts)
    """
    rejected = 0

    while dt >= MIN_DT:
        candidate = FlowState.from_measure(_rk4(kernel, state.measure, dt), kernel, state.time + dt)

        if candidate.energy <= state.energy + ENERGY_SLACK:
            return (candidate, rejected)

        rejected += 1
        logger.warning(f'Energy rose by {candidate.energy - state.energy:.2e} at t={state.time:.6g}, retry with dt={dt/2:.3e}')
        dt /= 2

    logger.critical(f'Time step fell below {MIN_DT:g} at t={state.time:.6g}')
    raise StepCollapseError('energy watchdog collapsed the time step')


def step(state, kernel, dt):
    """
    RK4 step of the particle flow with the energy watchdog

    Args:
        state (FlowState)
        kernel (Kernel)
        dt (float): attempted time step
    Returns:
        FlowState
    """
    if dt <= 0:
        raise DomainError(f'time step must be positive, got {dt}')
    return _advance(state, kernel, dt)[0]


def evolve(measure, kernel, t_end, dt0, residual_tol=1e-10, stride=1):
    """
    Integrate the flow until t_end or until the largest particle speed drops
    below residual_tol

    Args:
        measure (DiscreteMeasure): initial particles
        kernel (Kernel)
        t_end (float): final time
        dt0 (float): time step
        residual_tol (float): stop once force_residual < residual_tol
        stride (int): record one state every `stride` steps (the last one is always kept)
    Returns:
        FlowTrajectory
    """

    if dt0 <= 0 or stride < 1:
        raise DomainError('dt0 must be positive and stride at least 1')

    state = FlowState.from_measure(measure, kernel)
    states = [state]
    policy = dict(integrator='rk4', dt0=dt0, residual_tol=residual_tol, stride=stride,
                  energy_slack=ENERGY_SLACK, steps=0, rejected=0)

    logger.info((f'Flow of {len(measure)} particles with {kernel!r} up to t={t_end:g} '
                 f'(dt={dt0:g}, residual_tol={residual_tol:g})'))

    while state.force_residual >= residual_tol and t_end - state.time > 1e-12*max(1.0, t_end):
        (state, rejected) = _advance(state, kernel, min(dt0, t_end - state.time))
        policy['steps'] += 1
        policy['rejected'] += rejected

        if policy['steps'] % stride == 0:
            states.append(state)

    if states[-1] is not state:
        states.append(state)

    logger.info((f'Stopped at t={state.time:.6g} after {policy["steps"]} steps: '
                 f'energy={state.energy:.12g}, residual={state.force_residual:.3e}'))

    return FlowTrajectory(states, kernel.params, policy)


def concentric_rings(counts, radii, offsets=None):
    """
    Equal-mass particles on concentric rings in the plane

    Args:
        counts (list): particles per ring
        radii (list): ring radii
        offsets (list): angular offset of each ring (0 if None)
    Returns:
        DiscreteMeasure
    """
    if len(counts) != len(radii):
        raise DomainError('one particle count per radius is required')

    offsets = np.zeros(len(counts)) if offsets is None else offsets
    points = []
    for (count, radius, offset) in zip(counts, radii, offsets):
        rotation = np.array([[np.cos(offset), -np.sin(offset)], [np.sin(offset), np.cos(offset)]])
        points.append(ring_measure(RingConfig(count, radius)).points @ rotation.T)

    return DiscreteMeasure(np.vstack(points), dim=2)


def random_cloud(count, dim, seed, low=0.0, high=1.0):
    """
    `count` particles drawn uniformly in the cube [low, high]^dim
    """
    rng = make_rng(seed)
    return DiscreteMeasure(rng.uniform(low, high, size=(count, dim)), dim=dim)


def perturb_to_distance(measure, delta, p, rng):
    """
    Move every atom by a random vector, scaled so that the identity coupling
    has d_p cost exactly delta
    """
    displacement = rng.standard_normal(measure.points.shape)
    size = np.mean(np.linalg.norm(displacement, axis=1)**p)**(1/p)
    return DiscreteMeasure._from_arrays(measure.points + displacement*delta/size, measure.weights)


def lyapunov_sweep(params, deltas, particles=64, t_end=20.0, dt=0.05, seed=0, stride=10):
    """
    Perturb the shell proxy by d_alpha-distance delta, run the flow and record
    how far the trajectory drifts from the minimizing family

    Args:
        params (KernelParams): shell window with beta=2
        deltas (list): perturbation sizes
        particles (int): number of particles N
        t_end (float): final time
        dt (float): time step
        seed (int): seed of the perturbations
        stride (int): distances are measured every `stride` steps
    Returns:
        tuple: (pd.DataFrame with columns delta, initial, sup, final, bound, within_bound,
          whether sup is nondecreasing in delta)
    """

    kernel = Kernel(params)
    radius = shell_radius_closed_form(params)
    reference = shell_proxy(radius, params.dim, particles)
    offset = 2*np.sin(np.pi/(2*particles))*radius

    rows = []
    for delta in sorted(deltas):
        start = perturb_to_distance(reference, delta, params.alpha, make_rng(seed))
        trajectory = evolve(start, kernel, t_end, dt, residual_tol=0.0, stride=stride)
        distances = [distance_to_minimizer(s.measure, kernel, p=params.alpha) for s in trajectory.states]
        bound = 5*delta + offset

        rows.append(dict(delta=delta, initial=distances[0], sup=max(distances), final=distances[-1],
                         bound=bound, within_bound=max(distances) < bound))
        logger.info(f'delta={delta:g}: sup distance {max(distances):.4e} (bound {bound:.4e})')

    frame = pd.DataFrame(rows)

    return (frame, bool(np.all(np.diff(frame['sup'].values) >= 0)))
