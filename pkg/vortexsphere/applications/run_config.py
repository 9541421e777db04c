# coding=utf-8
"""
Parameters of a command-line run

Values come from command-line flags and, optionally, a JSON file with the
same keys. Flags take precedence over the file; anything not given by
either falls back to the defaults below.

"""

from __future__ import division

import numpy as np

from vortexsphere.dynamics.dynamics_oracle import SimulationMode
from vortexsphere.equilibrium.ring_equilibrium import RingParams
from vortexsphere.periodic.continuation import MIN_STEP, MAX_STEP
from vortexsphere.utils.errors import UsageError
from vortexsphere.utils.json_reader import read_json


class Command(object):
    """Sub-commands of the command-line frontend"""
    EQUILIBRIUM = 'equilibrium'
    SPECTRUM = 'spectrum'
    CONTINUE = 'continue'
    CHOREO = 'choreo'
    SIMULATE = 'simulate'

    ALL = [EQUILIBRIUM, SPECTRUM, CONTINUE, CHOREO, SIMULATE]


class Preset(object):
    """Built-in initial states of the simulate command"""
    RING = 'ring'
    NEAR_COLLISION = 'near-collision'

    ALL = [RING, NEAR_COLLISION]


DEFAULTS = {
    "n": None,
    "r": None,
    "theta": None,
    "k": None,
    "p": 32,
    "tol": 1e-10,
    "steps": 50,
    "ds": 1e-2,
    "eps": 1e-3,
    "denom_max": 12,
    "l_max": None,
    "direction": 1,
    "partner": False,
    "out": None,
    "branch": None,
    "trajectories": None,
    "mode": SimulationMode.ROTATING_CHART,
    "preset": Preset.RING,
    "state": None,
    "perturb": 0.0,
    "seed": 0,
    "t_end": 10.0,
    "dt_out": 0.1,
    "integrator_tol": 1e-10,
}

RING_COMMANDS = [Command.EQUILIBRIUM, Command.SPECTRUM, Command.CONTINUE]


class RunConfig(object):
    """Validated parameters of one command"""

    def __init__(self, command, **values):
        if command not in Command.ALL:
            raise UsageError('Unknown command ' + str(command))
        unknown = set(values) - set(DEFAULTS)
        if unknown:
            raise UsageError('Unknown parameters: ' +
                             ', '.join(sorted(unknown)))
        self.command = command
        for key, default in DEFAULTS.items():
            value = values.get(key)
            setattr(self, key, default if value is None else value)
        if self.l_max is None:
            self.l_max = 2 * self.p
        self._validate()

    @classmethod
    def from_arguments(cls, args):
        """Merge parsed arguments with the JSON file named by args.config"""

        flags = dict((key, value) for key, value in vars(args).items()
                     if key in DEFAULTS and value is not None)
        values = {}
        if getattr(args, 'config', None):
            try:
                file_values = read_json(args.config)
            except (IOError, OSError, ValueError) as error:
                raise UsageError('Cannot read config file ' + args.config +
                                 ': ' + str(error))
            if not isinstance(file_values, dict):
                raise UsageError('Config file must hold a JSON object')
            unknown = set(file_values) - set(DEFAULTS)
            if unknown:
                raise UsageError('Unknown keys in config file: ' +
                                 ', '.join(sorted(unknown)))
            values.update(file_values)
        values.update(flags)
        return cls(args.command, **values)

    def _validate(self):
        needs_ring = self.command in RING_COMMANDS or (
            self.command == Command.SIMULATE and
            (self.state is None or self.mode == SimulationMode.ROTATING_CHART))
        if needs_ring:
            self._validate_ring()
        elif self.r is not None and self.theta is not None:
            raise UsageError('Specify only one of --r and --theta')

        if self.command == Command.CONTINUE:
            if self.k is None:
                raise UsageError('The continue command needs --k')
        if self.k is not None and self.n is not None and \
                not 1 <= self.k <= self.n - 1:
            raise UsageError('Mode k must satisfy 1 <= k <= n-1, got ' +
                             str(self.k))
        if self.p < 1:
            raise UsageError('The Fourier order p must be at least 1')
        if self.steps < 1:
            raise UsageError('The number of steps must be at least 1')
        if not MIN_STEP <= self.ds <= MAX_STEP:
            raise UsageError('Step size ds must lie in [' + str(MIN_STEP) +
                             ', ' + str(MAX_STEP) + '], got ' + str(self.ds))
        if not self.eps > 0:
            raise UsageError('Seed amplitude eps must be positive')
        if self.denom_max < 1:
            raise UsageError('denom_max must be at least 1')
        if self.direction not in (1, -1):
            raise UsageError('Direction must be +1 or -1')
        if not self.tol > 0 or not self.integrator_tol > 0:
            raise UsageError('Tolerances must be positive')

        if self.command == Command.CHOREO and not self.branch:
            raise UsageError('The choreo command needs --branch')
        if self.command == Command.SIMULATE:
            if self.mode not in SimulationMode.ALL:
                raise UsageError('Unknown simulation mode ' + str(self.mode))
            if self.preset not in Preset.ALL:
                raise UsageError('Unknown preset ' + str(self.preset))
            if not self.dt_out > 0:
                raise UsageError('dt_out must be positive')

    def _validate_ring(self):
        if self.n is None:
            raise UsageError('The number of vortices --n is required')
        if int(self.n) != self.n or self.n < 3:
            raise UsageError('The ring needs n >= 3 vortices, got ' +
                             str(self.n))
        if (self.r is None) == (self.theta is None):
            raise UsageError('Specify exactly one of --r and --theta')
        if self.theta is not None and not 0.0 < self.theta < np.pi:
            raise UsageError('Polar angle theta must lie in (0, pi), got ' +
                             str(self.theta))
        if self.r is not None and not self.r > 0:
            raise UsageError('Radius r must be positive, got ' + str(self.r))

    def ring(self):
        """The RingParams named by n and r or theta"""
        if self.theta is not None:
            return RingParams.from_theta(self.n, self.theta)
        return RingParams(self.n, self.r)

    def to_dict(self):
        """All parameter values"""
        values = dict((key, getattr(self, key)) for key in DEFAULTS)
        values["command"] = self.command
        return values
