class PlotKitError(Exception):
    """Base class for rendering errors."""


class MissingColumn(PlotKitError):
    def __init__(self, column, path):
        super().__init__(f"column {column!r} not found in {path}")
        self.column = column
        self.path = path


class EmptyWindow(PlotKitError):
    """No data rows fall inside the requested window (or the file has none)."""
