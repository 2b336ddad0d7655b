from app.lpbound.schemas import (
    BoundednessVerdict,
    ConsistencyReport,
    LPInstance,
    LPInstanceIn,
)
from app.lpbound.service import LPService

__all__ = [
    "BoundednessVerdict",
    "ConsistencyReport",
    "LPInstance",
    "LPInstanceIn",
    "LPService",
]
