"""Parity-network synthesis and phase-polynomial circuit optimization.

Modules:
    f2linear: GF(2) vectors, matrices, inverses and PMH CNOT synthesis.
    phasepoly: phase polynomials, sum-over-paths forms, Fourier identities.
    paritynet: gray-synth and its pointed, encoded and fixed-target variants.
    oracle: exact minimal parity networks and instance mappings.
    optimizer: Toffoli/MCX decomposition, Clifford+T optimization, counts.
    verify: classical and dense unitary simulation.
    circuitio: text formats.
    cli: command-line entry point.
"""

from .angles import Angle
from .circuit import Circuit, Gate
from .f2linear import BitMatrix, BitVec
from .paritynet import ParitySet, gray_synth, synth_phase_circuit, synth_pointed
from .phasepoly import PhasePolynomial, SumOverPaths, extract_sop

__all__ = [
    "Angle",
    "BitMatrix",
    "BitVec",
    "Circuit",
    "Gate",
    "ParitySet",
    "PhasePolynomial",
    "SumOverPaths",
    "extract_sop",
    "gray_synth",
    "synth_phase_circuit",
    "synth_pointed",
]

__version__ = "0.1.0"
