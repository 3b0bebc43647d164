"""Named fields and generators addressable from expressions.

A scope pairs one algebra with the named fields that live in it.  Field names
are global; a bare generator name resolves in the algebra already pinned by
the fields of the same expression, or else in the first scope that has it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .algebras import algebra_from_config
from .core import AlgebraMismatchError, State, VertexAlgebra
from .parser import NameResolutionError, Node, evaluate, names_in, parse_expression
from .scalar import parse_scalar
from .screening import FockWeight, ScreeningCharge, ScreeningError

__all__ = ["Scope", "Registry", "default_registry", "screenings_for", "N2_RANKS"]

N2_RANKS = (1, 2, 3)


@dataclass
class Scope:
    name: str
    algebra_factory: Callable[[], VertexAlgebra]
    fields: dict[str, Callable[[], State]] = field(default_factory=dict)
    _algebra: VertexAlgebra | None = None

    @property
    def algebra(self) -> VertexAlgebra:
        if self._algebra is None:
            self._algebra = self.algebra_factory()
        return self._algebra

    def generator_names(self) -> list[str]:
        return [g.name for g in self.algebra.gens]


class Registry:
    def __init__(self, scopes: list[Scope]):
        self.scopes = scopes
        self._field_scope: dict[str, Scope] = {}
        for sc in scopes:
            for nm in sc.fields:
                self._field_scope[nm] = sc

    def names(self) -> list[str]:
        out = set(self._field_scope)
        for sc in self.scopes:
            out.update(sc.generator_names())
        return sorted(out)

    def parse(self, text: str) -> Node:
        return parse_expression(text, self.names())

    def scope_of(self, node: Node) -> Scope:
        idents = names_in(node)
        pinned = []
        for nm in idents:
            sc = self._field_scope.get(nm)
            if sc is not None and sc not in pinned:
                pinned.append(sc)
        if len({id(sc.algebra) for sc in pinned}) > 1:
            raise AlgebraMismatchError(
                "expression mixes fields of different algebras: "
                + ", ".join(sorted({sc.name for sc in pinned})))
        if pinned:
            scope = pinned[0]
            for nm in idents:
                if nm not in self._field_scope and nm not in scope.algebra.index:
                    raise NameResolutionError(f"generator {nm!r} is not in algebra {scope.algebra.name}")
            return scope
        for nm in idents:
            for sc in self.scopes:
                if nm in sc.algebra.index:
                    return sc
        return self.scopes[0]

    def evaluate(self, node: Node, scope: Scope | None = None):
        """Evaluate ``node``; ``scope`` forces the algebra used for bare generators."""
        scope = scope or self.scope_of(node)
        alg = scope.algebra

        def lookup(nm):
            if nm in self._field_scope:
                st = self._field_scope[nm].fields[nm]()
                if st.algebra is not alg:
                    raise AlgebraMismatchError(f"{nm} lives in {st.algebra.name}, not {alg.name}")
                return st
            if nm in alg.index:
                return alg.gen(nm)
            raise NameResolutionError(f"unknown name {nm!r} in algebra {alg.name}")

        return evaluate(node, lookup, alg.context), scope

    def evaluate_text(self, text: str):
        return self.evaluate(self.parse(text))

    def named_fields(self, scope: Scope) -> dict[str, State]:
        """All named fields living in the same algebra as ``scope``."""
        return {nm: sc.fields[nm]() for nm, sc in self._field_scope.items() if sc.algebra is scope.algebra}


def _lazy(getter, key):
    return lambda: getter()[key]


@lru_cache(maxsize=None)
def _n2_fields(n: int):
    from .wsuper import n2_generators
    return n2_generators(n)


def default_registry() -> Registry:
    from .coset import coset_algebra, coset_generators_n2, invariant_limit_targets, limit_fields
    from .coset import _target_algebra
    from .wsuper import free_field_data, w32_generators

    w_names = ["H", "S", "G+", "G-", "L", "W2", "W3", "Q+", "Q-"]
    scopes = [Scope("w-side", lambda: free_field_data(2).algebra,
                    {nm: _lazy(w32_generators, nm) for nm in w_names})]
    for n in N2_RANKS:
        fields = {f"{base}({n})": _lazy(lambda n=n: _n2_fields(n), base)
                  for base in ("G+", "G-", "H", "L")}
        if n == 2:
            scopes[0].fields.update(fields)
        else:
            scopes.append(Scope(f"n2-family-{n}", lambda n=n: free_field_data(n).algebra, fields))
    scopes.append(Scope("coset", lambda: coset_algebra(2, "generic"),
                        {f"{nm}^": _lazy(lambda: coset_generators_n2("generic"), f"{nm}^")
                         for nm in w_names}))
    scopes.append(Scope("limit", lambda: coset_algebra(2, "limit"),
                        {nm: _lazy(limit_fields, nm)
                         for nm in ("J0", "J1", "Omega0", "Omega1", "N0", "N1", "M0", "M1")}))
    scopes.append(Scope("limit-target", _target_algebra,
                        {nm: _lazy(invariant_limit_targets, nm)
                         for nm in ("j0", "j1", "w0", "w1", "nu0", "nu1", "mu0", "mu1")}))
    return Registry(scopes)


def config_registry(doc) -> Registry:
    """Registry whose only scope is the algebra described by a JSON config."""
    alg = algebra_from_config(doc)
    return Registry([Scope("config", lambda: alg)])


def load_config(path: str) -> Registry:
    with open(path) as fh:
        doc = json.load(fh)
    return config_registry(doc)


def screenings_for(alg: VertexAlgebra) -> list[ScreeningCharge]:
    """Screening charges attached to an algebra.

    Config documents list them as ``{"mu": {"a1": "-1/(k+1)"}, "dressing": "F1"}``
    or with ``mu`` as an array over the weight-one even generators;
    the built-in free-field algebras use ``Q_1..Q_2n``.
    """
    cfg = alg.meta.get("config") or {}
    if "screenings" in cfg:
        out = []
        for i, doc in enumerate(cfg["screenings"], start=1):
            try:
                mu = doc["mu"]
                if isinstance(mu, list):
                    # coefficients over the weight-one even generators, in generator order
                    heis = [g.name for g in alg.gens if g.parity == 0 and g.weight2 == 2]
                    if len(mu) != len(heis):
                        raise ScreeningError(f"screening {i}: mu has {len(mu)} entries, expected {len(heis)}")
                    mu = dict(zip(heis, mu))
                gens = tuple(g for g in sorted(mu) if str(mu[g]) not in ("0", ""))
                coefs = tuple(parse_scalar(str(mu[g]), alg.context) for g in gens)
                out.append(ScreeningCharge(FockWeight(gens, coefs, f"mu{i}"), doc["dressing"], i))
            except KeyError as exc:
                raise ScreeningError(f"screening {i} lacks {exc.args[0]!r}") from None
        return out
    rank = alg.meta.get("free_field_rank")
    if rank is None:
        raise ScreeningError(f"no screening charges are defined for {alg.name}")
    from .wsuper import free_field_data
    return free_field_data(rank).screenings()
