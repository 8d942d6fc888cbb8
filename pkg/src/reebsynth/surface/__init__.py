"""Surface realization of one-dimensional construction plans."""

from .assemble import Assembly, AssemblyError, assemble, assemble_detailed, synth_model
from .critical import CIRCLE_SIZE, LINE_SIZE, Interface, Patch
from .mesh import MeshError, ScalarMesh, read_rmesh, write_off, write_rmesh
from .templates import (synth_cap, synth_line_birth, synth_line_cut, synth_line_transit,
                        synth_open_cap, synth_saddle, synth_squared_extremum, synth_tube)

__all__ = [
    "Assembly", "AssemblyError", "assemble", "assemble_detailed", "synth_model",
    "CIRCLE_SIZE", "LINE_SIZE", "Interface", "Patch",
    "MeshError", "ScalarMesh", "read_rmesh", "write_off", "write_rmesh",
    "synth_cap", "synth_line_birth", "synth_line_cut", "synth_line_transit",
    "synth_open_cap", "synth_saddle", "synth_squared_extremum", "synth_tube",
]
