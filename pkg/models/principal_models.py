"""主丛相关数据模型 - 强联络、幂等元、电荷模、联络与规范参数"""
from dataclasses import dataclass, field
from typing import List, Tuple

from models.algebra_models import AlgebraElement, ProductKind, TensorElement
from models.form_models import OneForm

Pair = Tuple[AlgebraElement, AlgebraElement]


@dataclass(frozen=True)
class StrongConnectionValue:
    """ℓ(tⁿ) = Σ lᵢ⊗rᵢ，保留递归的 2^{|n|} 项展开"""
    n: int
    pairs: Tuple[Pair, ...]
    kind: ProductKind = ProductKind.CLASSICAL

    @property
    def deformed(self) -> bool:
        return self.kind.deformed

    @property
    def value(self) -> TensorElement:
        return TensorElement.from_pairs(self.pairs)

    @property
    def left_legs(self) -> List[AlgebraElement]:
        return [left for left, _ in self.pairs]

    @property
    def right_legs(self) -> List[AlgebraElement]:
        return [right for _, right in self.pairs]


@dataclass(frozen=True)
class Idempotent:
    """e_ij = rᵢ ∘ lⱼ"""
    n: int
    kind: ProductKind
    entries: Tuple[Tuple[AlgebraElement, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def deformed(self) -> bool:
        return self.kind.deformed

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind.value,
            "size": self.size,
            "entries": [[entry.to_json() for entry in row] for row in self.entries],
        }


@dataclass(frozen=True)
class ChargeModule:
    """E(Cₙ)：A 的 hdeg-n 切片"""
    n: int
    kind: ProductKind = ProductKind.CLASSICAL

    def contains(self, xi: AlgebraElement) -> bool:
        return xi.has_charge(self.n)


@dataclass(frozen=True)
class WeightedComodule:
    """有限维余模 V = ⊕ C_{n_k}（由调用方给出权分解）"""
    charges: Tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.charges)


@dataclass(frozen=True)
class GaugeParameter:
    """无穷小规范变换 ζ = b⊗X，b ∈ B"""
    b: AlgebraElement


@dataclass(frozen=True)
class Connection:
    """联络 (形变标记, α)，realized = ω⁰ 或 ω⁰_θ 加 α；相等性只看 (kind, α)"""
    kind: ProductKind
    alpha: OneForm
    realized: OneForm = field(compare=False)

    @property
    def deformed(self) -> bool:
        return self.kind.deformed
