import sys
from pathlib import Path
from typing import Dict, Hashable, Iterable, Iterator, Mapping, Tuple

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.coefficients import Ring, RingElem
from src.brauer.errors import SemanticError


class FreeElement:
    """
    Finitely supported map basis -> ring, with no stored zeros. Subclasses
    fix the basis type and the grading data that must agree for arithmetic.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: Ring, terms: Mapping[Hashable, RingElem] = ()):
        self.ring = ring
        clean: Dict[Hashable, RingElem] = {}
        for key, coeff in dict(terms).items():
            coeff = ring.canon(coeff)
            if coeff != 0:
                clean[key] = coeff
        self._terms = clean

    # subclasses return the tuple that must match for + and *
    def _shape(self) -> Tuple:
        return ()

    def _like(self, terms: Mapping[Hashable, RingElem]) -> "FreeElement":
        raise NotImplementedError

    def _check(self, other: "FreeElement") -> None:
        if type(other) is not type(self):
            raise SemanticError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other._shape() != self._shape():
            raise SemanticError(f"shape mismatch: {self._shape()} vs {other._shape()}")
        if other.ring != self.ring:
            raise SemanticError(f"ring mismatch: {self.ring} vs {other.ring}")

    @property
    def terms(self) -> Dict[Hashable, RingElem]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Hashable, RingElem]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0])))

    def coefficient(self, key: Hashable) -> RingElem:
        return self._terms.get(key, self.ring.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> Iterable[Hashable]:
        return self._terms.keys()

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "FreeElement") -> "FreeElement":
        self._check(other)
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            out[key] = self.ring.add(out.get(key, self.ring.zero), coeff)
        return self._like(out)

    def __neg__(self) -> "FreeElement":
        return self._like({k: self.ring.neg(c) for k, c in self._terms.items()})

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def scale(self, r: RingElem) -> "FreeElement":
        r = self.ring.canon(r)
        return self._like({k: self.ring.mul(r, c) for k, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._shape() == other._shape() and self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self._shape(), frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"{type(self).__name__}(0)"
        body = " + ".join(f"{c}*{k}" for k, c in self.items())
        return f"{type(self).__name__}({body})"


def _sort_key(key: Hashable):
    return key.sort_key if hasattr(key, "sort_key") else key
