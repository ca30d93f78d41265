"""
Synthetic graph generation
"""

from .generator import SynthConfig, generate, generate_with_chains, node_label, write_synth

__all__ = [
    'SynthConfig',
    'generate',
    'generate_with_chains',
    'node_label',
    'write_synth',
]
