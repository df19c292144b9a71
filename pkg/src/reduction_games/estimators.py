"""Thin scikit-learn style wrappers.

``fit`` compiles and checks on the given inputs, ``transform`` maps inputs
to outputs, ``predict`` returns region indices or memberships.  Inputs are
sequences of ``UPStream``; no numeric arrays are involved.
"""

from __future__ import annotations

from typing import Sequence

from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .composite import Decompiled, PiecewiseSpec, make_gfxi, piecewise_compile
from .degrees import SuccessorSet, successor_member
from .errors import WitnessFailure
from .games import GameSpec, make_base_game
from .gamma import GammaStrategy, UniformFamily, gamma_compile, make_ggamma
from .streams import UPStream


class PiecewiseReduction(TransformerMixin, BaseEstimator):
    """Compile a piecewise spec into one composite strategy."""

    def __init__(self, spec: PiecewiseSpec | None = None, inner: GameSpec | None = None, max_rows: int = 64):
        self.spec = spec
        self.inner = inner
        self.max_rows = max_rows

    def fit(self, X: Sequence[UPStream], y=None):
        inner = self.inner or make_base_game("W")
        self.game_ = make_gfxi(inner, self.spec.controls)
        self.strategy_ = piecewise_compile(self.spec, inner)
        self.decompiled_ = Decompiled(self.game_, self.strategy_, self.max_rows)
        for x in X:
            if self.game_.evaluate(self.strategy_, x, self.max_rows) != self.spec.evaluate(inner, x):
                raise WitnessFailure(f"compiled strategy disagrees with the pieces at {x!r}", x)
        return self

    def _check(self):
        if not hasattr(self, "strategy_"):
            raise NotFittedError("call fit first")

    def transform(self, X: Sequence[UPStream]) -> list[UPStream]:
        self._check()
        return [self.game_.evaluate(self.strategy_, x, self.max_rows) for x in X]

    def predict(self, X: Sequence[UPStream]) -> list[int]:
        self._check()
        return [self.decompiled_.region(x) for x in X]


class GammaReduction(TransformerMixin, BaseEstimator):
    """Compile a uniform family of coded sets into a coded-set strategy."""

    def __init__(self, family: UniformFamily | None = None, rows: int = 8, max_m: int = 32):
        self.family = family
        self.rows = rows
        self.max_m = max_m

    def fit(self, X: Sequence[UPStream], y=None):
        self.game_ = make_ggamma(max_m=self.max_m)
        self.strategy_: GammaStrategy = gamma_compile(self.family, X, self.rows, self.max_m)
        return self

    def transform(self, X: Sequence[UPStream]) -> list[UPStream]:
        if not hasattr(self, "strategy_"):
            raise NotFittedError("call fit first")
        return [self.game_.evaluate(self.strategy_, x) for x in X]


class SuccessorClassifier(ClassifierMixin, BaseEstimator):
    """Exact membership in a successor set; ``fit`` only records the classes."""

    def __init__(self, successor: SuccessorSet | None = None):
        self.successor = successor

    def fit(self, X: Sequence[UPStream], y=None):
        self.classes_ = [False, True]
        return self

    def predict(self, X: Sequence[UPStream]) -> list[bool]:
        if not hasattr(self, "classes_"):
            raise NotFittedError("call fit first")
        return [successor_member(self.successor, x) for x in X]

    def score(self, X, y, sample_weight=None) -> float:
        got = self.predict(X)
        return sum(a == b for a, b in zip(got, y)) / max(len(got), 1)


__all__ = ["PiecewiseReduction", "GammaReduction", "SuccessorClassifier"]
