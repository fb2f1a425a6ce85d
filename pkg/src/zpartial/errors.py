"""Exception types shared across the package."""


class CapExceeded(RuntimeError):
    """An enumeration or search would exceed a configured cap."""

    def __init__(self, what: str, size: int, cap: int, partial=None):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap
        self.partial = partial


class InvariantViolation(AssertionError):
    """Two computations that must agree did not."""
