class DegenerateFrameError(ValueError):
    def __init__(self, mean_spin_len: float, threshold: float) -> None:
        super().__init__(
            f"mean spin length {mean_spin_len!r} is below the degeneracy threshold {threshold!r}: no mean-spin frame"
        )
        self.mean_spin_len = mean_spin_len
        self.threshold = threshold


class NegativeVarianceError(ArithmeticError):
    def __init__(self, axis: str, value: float) -> None:
        super().__init__(
            f"primed variance along {axis} is {value!r}, below the clamp window"
        )
        self.axis = axis
        self.value = value
