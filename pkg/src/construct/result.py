"""Construction results shared by every handler."""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional

from ..expr.model import Expression
from ..expr.parser import format_expression
from ..expr.transform import Transform
from ..residue import Modulus
from .certificate import Certificate
from .varmap import MapSet, TableStore


@dataclass(frozen=True, eq=False)
class Construction:
    """
    Modulus, maps and certificate for one expression.

    `expression` is the expression the maps are built for; after
    `pulled_back` it is the caller's original expression.
    """

    tag: str
    expression: Expression
    modulus: Modulus
    maps: MapSet
    certificate: Certificate
    params: Dict[str, Any] = field(default_factory=dict)
    measurements: Dict[str, Any] = field(default_factory=dict)

    def pulled_back(self, original: Expression, transform: Transform) -> 'Construction':
        """Maps for the un-normalized expression; transforms preserve the image exactly."""
        return replace(
            self,
            expression=original,
            maps=self.maps.pullback(transform),
            params={**self.params, 'transform': transform.to_list()},
        )

    def measured(self, **values: Any) -> 'Construction':
        return replace(self, measurements={**self.measurements, **values})

    def to_dict(self, store: Optional[TableStore] = None) -> Dict[str, Any]:
        return {
            'tag': self.tag,
            'expression': format_expression(self.expression),
            'modulus': self.modulus.to_dict(),
            'maps': self.maps.to_dict(store),
            'certificate': self.certificate.to_dict(),
            'params': _jsonable(self.params),
            'measurements': _jsonable(self.measurements),
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, int):
        return value if abs(value) < 2 ** 53 else str(value)
    if isinstance(value, float):
        return value
    if hasattr(value, 'item'):
        return _jsonable(value.item())
    return str(value)
