from ..model import ContractViolation


class ConstructionFailure(RuntimeError):
    """A design primitive could not produce (or certify) its output."""

    def __init__(self, primitive: str, message: str):
        super().__init__(f"{primitive}: {message}")
        self.primitive = primitive


__all__ = ["ConstructionFailure", "ContractViolation"]
