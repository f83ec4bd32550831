"""Static figure rendering for spinsync CSV datasets.

Reads trajectory.csv / sweep.csv files and renders the standard panels:
phase-space limit cycles, quadrature time traces, synchronization traces,
and the thermal sweep. No numerical processing beyond windowing and axis
scaling - plotted values equal CSV values.
"""

__version__ = "0.1.0"

from .errors import EmptyWindow, MissingColumn, PlotKitError
from .figures import KINDS, FigureSpec, load_columns, render
