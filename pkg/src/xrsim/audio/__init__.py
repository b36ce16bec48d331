"""Spatial audio: ambisonic encode/rotate/zoom and binaural rendering."""

from .blocks import AudioBlock, AmbisonicBlock, SourceSpec, normalize
from .ambisonics import (
    acn_degree_order,
    acn_index,
    encode,
    sh_coefficients,
)
from .rotation import rotate_soundfield, sh_rotation_matrix, zoom_soundfield
from .binaural import (
    HrtfSet,
    OverlapAddState,
    binauralize,
    make_synthetic_hrtf,
    psychoacoustic_filter,
)
from .wav_io import read_wav, write_wav

__all__ = [
    "AudioBlock",
    "AmbisonicBlock",
    "SourceSpec",
    "normalize",
    "acn_degree_order",
    "acn_index",
    "encode",
    "sh_coefficients",
    "rotate_soundfield",
    "sh_rotation_matrix",
    "zoom_soundfield",
    "HrtfSet",
    "OverlapAddState",
    "binauralize",
    "make_synthetic_hrtf",
    "psychoacoustic_filter",
    "read_wav",
    "write_wav",
]
