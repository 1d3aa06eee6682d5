class NilmultError(Exception):
    pass


class ResourceLimitError(NilmultError):
    """A predicted problem size exceeds a configured guard."""

    def __init__(self, what: str, predicted: int, limit: int):
        self.what = what
        self.predicted = predicted
        self.limit = limit
        super().__init__(f"{what}: predicted size {predicted} exceeds limit {limit}")


class AlphabetMismatchError(NilmultError):
    pass


class RewriteError(NilmultError):
    pass


class ContainmentError(NilmultError):
    """A generator of the small lattice is not in the big lattice."""

    def __init__(self, index: int, row):
        self.index = index
        self.row = tuple(row)
        super().__init__(f"generator {index} {self.row} does not lie in the enclosing lattice")


class PipelineDisagreement(NilmultError):
    def __init__(self, results: dict):
        self.results = results
        shown = ", ".join(f"{k}={v}" for k, v in results.items())
        super().__init__(f"multiplier pipelines disagree: {shown}")


class ParseError(NilmultError, ValueError):
    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)
