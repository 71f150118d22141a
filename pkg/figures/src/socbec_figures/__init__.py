"""Figure rendering for socbec simulation artifacts.

Pure views of the simulator's CSV/JSON files: no physics is recomputed.
"""

__version__ = "0.1.0"

from .render import KINDS, FigureSpec, render
from .schema import SchemaError
from .collection import render_standard_set, standard_figure_specs
