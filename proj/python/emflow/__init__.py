"""Stabilized Galerkin FEM for electromagnetic-flowmeter convection-diffusion."""

from _emflow import *  # noqa: F401,F403
from _emflow import __doc__  # noqa: F401
