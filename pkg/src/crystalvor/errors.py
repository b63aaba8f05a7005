"""Exception types shared across the package."""


class CrystalvorError(Exception):
    """Base class for all expected (input / precondition) failures."""


class GraphFormatError(CrystalvorError):
    """Malformed graph file, dangling endpoint, duplicate id, ..."""


class DisconnectedGraphError(CrystalvorError):
    pass


class BridgeExists(CrystalvorError):
    def __init__(self, bridges):
        self.bridges = tuple(bridges)
        super().__init__(f"graph has bridges: {', '.join(self.bridges)}")


class NotStronglyConnected(CrystalvorError):
    pass


class GenusTooSmall(CrystalvorError):
    pass


class TooLarge(CrystalvorError):
    """An enumeration exceeded its configured guard."""


class NotACycle(CrystalvorError):
    pass


class NotUnitCoefficients(CrystalvorError):
    pass


class NotInCycleSpace(CrystalvorError):
    pass


class NotInCell(CrystalvorError):
    pass


class UnknownVertex(CrystalvorError):
    pass


class UnknownExample(CrystalvorError):
    pass


class RankTooHigh(CrystalvorError):
    pass
