"""Feature structures and unification for grammatical agreement.

A feature structure maps feature names to an atomic symbol, to ``None``
(unbound), or to a nested structure.  ``unify`` is failure-as-value: it
returns the merged structure or ``None``.  The ``gender`` feature gets the
dedicated rule that ``common`` is compatible with ``masc``, ``fem`` and
``common`` (but not ``neut``); unification picks the more specific value.
"""

from typing import Dict, Optional, Union

Value = Union[str, None, "FeatureStructure"]


class FeatureStructure:
    __slots__ = ("_feats",)

    def __init__(self, feats: Optional[Dict[str, Value]] = None, **kw: Value):
        merged: Dict[str, Value] = dict(feats or {})
        merged.update(kw)
        self._feats = merged

    def get(self, name: str) -> Value:
        return self._feats.get(name)

    def items(self):
        return self._feats.items()

    def __contains__(self, name: str) -> bool:
        return name in self._feats

    def __eq__(self, other):
        return isinstance(other, FeatureStructure) and self._feats == other._feats

    def __repr__(self):
        inner = ", ".join(f"{k}: {v!r}" for k, v in sorted(self._feats.items()))
        return "{" + inner + "}"

    def display(self) -> str:
        parts = []
        for k, v in sorted(self._feats.items()):
            if isinstance(v, FeatureStructure):
                parts.append(f"{k}:{v.display()}")
            elif v is None:
                parts.append(f"{k}:_")
            else:
                parts.append(f"{k}:{v}")
        return "{" + " ".join(parts) + "}"


def unify_gender(a: Optional[str], b: Optional[str]) -> Optional[str]:
    """Merge two gender symbols, or None on clash.

    >>> unify_gender('common', 'masc')
    'masc'
    >>> unify_gender('common', 'neut') is None
    True
    """
    if a is None:
        return b
    if b is None:
        return a
    if a == b:
        return a
    if a == "common" and b in ("masc", "fem"):
        return b
    if b == "common" and a in ("masc", "fem"):
        return a
    return None


_FAIL = object()


def _unify_value(name: str, a: Value, b: Value):
    if a is None:
        return b
    if b is None:
        return a
    if isinstance(a, FeatureStructure) and isinstance(b, FeatureStructure):
        merged = unify(a, b)
        return _FAIL if merged is None else merged
    if isinstance(a, FeatureStructure) or isinstance(b, FeatureStructure):
        return _FAIL
    if name == "gender":
        g = unify_gender(a, b)
        return _FAIL if g is None else g
    return a if a == b else _FAIL


def unify(a: Optional[FeatureStructure], b: Optional[FeatureStructure]) -> Optional[FeatureStructure]:
    """Commutative, associative, idempotent merge; None signals failure."""
    if a is None or b is None:
        return None
    out: Dict[str, Value] = dict(a.items())
    for name, value in b.items():
        if name in out:
            merged = _unify_value(name, out[name], value)
            if merged is _FAIL:
                return None
            out[name] = merged
        else:
            out[name] = value
    return FeatureStructure(out)
