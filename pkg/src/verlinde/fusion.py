"""Level-k Verlinde ring: fusion products, the fusion ideal and the
character cross-check at the special torus points ``t_lambda``."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .affine import StarContext, reduce_to_alcove
from .errors import LabelError
from .rootdata import Weight
from .weights import alcove_weights, character_value, tensor_decompose

VANISHING_TOL = 1e-8
PRODUCT_TOL = 1e-6


def format_label(lam: Sequence[int]) -> str:
    return ",".join(str(x) for x in lam)


def parse_label(text: str) -> Weight:
    return tuple(int(x) for x in text.split(","))


def validate_label(ctx: StarContext, lam: Sequence[int]) -> Weight:
    lam = tuple(lam)
    valid = alcove_weights(ctx.rs, ctx.k)
    if lam not in valid:
        listing = " ".join(format_label(v) for v in valid)
        raise LabelError(f"label {format_label(lam)} is not in the level-{ctx.k} alcove of "
                         f"{ctx.rs.name}; valid labels: {listing}", valid)
    return lam


def fusion_product(ctx: StarContext, lam: Sequence[int], mu: Sequence[int]) -> dict[Weight, int]:
    """Decompose classically, then fold each summand into the level-k alcove
    by signed star reflections, dropping summands that land on a wall."""
    lam = validate_label(ctx, lam)
    mu = validate_label(ctx, mu)
    out: dict[Weight, int] = {}
    for nu, n in tensor_decompose(ctx.rs, lam, mu).items():
        red = reduce_to_alcove(ctx, nu)
        if red.sign:
            out[red.rep] = out.get(red.rep, 0) + red.sign * n
    if any(v < 0 for v in out.values()):
        raise AssertionError(f"negative fusion coefficient in {lam} x {mu}: {out}")
    return dict(sorted((k, v) for k, v in out.items() if v))


def special_point(ctx: StarContext, lam: Sequence[int]) -> tuple[Fraction, ...]:
    """``(lam + rho) / (k + h^vee)`` in Dynkin-label coordinates."""
    return tuple(Fraction(x + 1, ctx.m) for x in lam)


def character_at_special_point(ctx: StarContext, mu: Sequence[int], lam: Sequence[int]) -> complex:
    lam = validate_label(ctx, lam)
    return character_value(ctx.rs, mu, special_point(ctx, lam))


def fusion_ideal_member(ctx: StarContext, chi: Mapping[Weight, int], tol: float = VANISHING_TOL) -> bool:
    """Whether the virtual character ``sum c * chi_mu`` vanishes at every ``t_lambda``."""
    chi = {tuple(mu): c for mu, c in chi.items() if c}
    if not chi:
        return True
    for sigma in alcove_weights(ctx.rs, ctx.k):
        xi = special_point(ctx, sigma)
        value = sum(c * character_value(ctx.rs, mu, xi) for mu, c in chi.items())
        if abs(value) >= tol:
            return False
    return True


def wall_weights(ctx: StarContext) -> list[Weight]:
    """Dominant weights with ``<lam + rho, theta^vee> = k + h^vee``."""
    rs = ctx.rs
    target = ctx.m - sum(rs.comarks)
    return [lam for lam in alcove_weights(rs, target)
            if sum(a * x for a, x in zip(rs.comarks, lam)) == target]


@dataclass(frozen=True)
class FusionTable:
    type_name: str
    rank: int
    level: int
    labels: tuple[Weight, ...]
    products: Mapping[tuple[Weight, Weight], Mapping[Weight, int]]

    def coefficient(self, lam, mu, nu) -> int:
        return self.products[tuple(lam), tuple(mu)].get(tuple(nu), 0)

    def to_json(self) -> str:
        doc = {
            "type": self.type_name,
            "rank": self.rank,
            "level": self.level,
            "labels": [format_label(v) for v in self.labels],
            "products": {
                f"{format_label(a)}|{format_label(b)}": {
                    format_label(nu): n for nu, n in self.products[a, b].items()
                }
                for a in self.labels for b in self.labels
            },
        }
        return json.dumps(doc, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("lambda,mu,nu,N\n")
        for a in self.labels:
            for b in self.labels:
                for nu, n in self.products[a, b].items():
                    buf.write(f'"{format_label(a)}","{format_label(b)}","{format_label(nu)}",{n}\n')
        return buf.getvalue()

    @classmethod
    def from_json(cls, text: str) -> "FusionTable":
        doc = json.loads(text)
        labels = tuple(parse_label(s) for s in doc["labels"])
        products = {}
        for key, row in doc["products"].items():
            a, b = key.split("|")
            products[parse_label(a), parse_label(b)] = {parse_label(nu): int(n) for nu, n in row.items()}
        return cls(doc["type"], int(doc["rank"]), int(doc["level"]), labels, products)


def build_fusion_table(ctx: StarContext) -> FusionTable:
    labels = tuple(alcove_weights(ctx.rs, ctx.k))
    products = {}
    for i, a in enumerate(labels):
        for b in labels[i:]:
            products[a, b] = products[b, a] = fusion_product(ctx, a, b)
    return FusionTable(ctx.rs.name, ctx.rank, ctx.k, labels, products)
