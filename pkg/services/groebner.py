"""模 Gröbner 基引擎 - 自由多项式覆盖 P^r 上的 Buchberger 完备化

项序为位置优先（POT）：先比较位置，再按次数字典序比较单项式。
所有生成元的首项系数都是有理常数，规范化为首一后除法在 u、w 的 Laurent 标量环上精确。
"""
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from models.algebra_models import Monomial
from models.form_models import PAIRS, ModuleVector
from models.scalars import Scalar
from utils.config import get_settings
from utils.enhanced_logger import logger
from utils.errors import GroebnerDivergenceError

Key = Tuple[int, Monomial]
Vector = Dict[Key, Scalar]

GENERATOR_MIRROR = (1, 0, 3, 2)    # z1↔z2, z1∗↔z2∗


def divides(m1: Monomial, m2: Monomial) -> bool:
    return m1.a <= m2.a and m1.b <= m2.b and m1.c <= m2.c and m1.d <= m2.d


def lcm(m1: Monomial, m2: Monomial) -> Monomial:
    return Monomial(max(m1.a, m2.a), max(m1.b, m2.b), max(m1.c, m2.c), max(m1.d, m2.d))


def quotient(m1: Monomial, m2: Monomial) -> Monomial:
    """m1 / m2，要求 m2 整除 m1"""
    return Monomial(m1.a - m2.a, m1.b - m2.b, m1.c - m2.c, m1.d - m2.d)


@dataclass(frozen=True)
class TermOrder:
    """POT 序：position_rank 越小位置越大；variable_order 给出单项式字典序比较的变量顺序"""
    name: str
    position_rank: Tuple[int, ...]
    variable_order: Tuple[int, int, int, int] = (0, 1, 2, 3)

    def key(self, position: int, mono: Monomial) -> Tuple[int, ...]:
        return (-self.position_rank[position], mono.degree) + tuple(mono[i] for i in self.variable_order)

    def leading(self, vector: Vector) -> Key:
        return max(vector, key=lambda k: self.key(*k))

    @classmethod
    def standard(cls, rank: int) -> "TermOrder":
        return cls(f"pot-deglex-{rank}", tuple(range(rank)))

    @classmethod
    def mirror(cls, rank: int) -> "TermOrder":
        """z2 > z1 > z2∗ > z1∗，位置 dz2 > dz1 > dz2∗ > dz1∗（2-形式按镜像后的对排序）"""
        if rank == 4:
            ranks = GENERATOR_MIRROR
        elif rank == len(PAIRS):
            mirrored = [tuple(sorted((GENERATOR_MIRROR[i], GENERATOR_MIRROR[j]))) for i, j in PAIRS]
            ranks = tuple(PAIRS.index(pair) for pair in mirrored)
        else:
            raise ValueError(f"没有秩 {rank} 的镜像序")
        return cls(f"pot-deglex-mirror-{rank}", ranks, GENERATOR_MIRROR)


def _add_into(target: Vector, key: Key, value: Scalar):
    current = target.get(key)
    total = value if current is None else current + value
    if total:
        target[key] = total
    elif current is not None:
        del target[key]


def shift(vector: Vector, mono: Monomial, coeff: Scalar) -> Vector:
    return {(p, m.times(mono)): c * coeff for (p, m), c in vector.items()}


def combine(x: Vector, y: Vector, sign: int = 1) -> Vector:
    result = dict(x)
    for key, value in y.items():
        _add_into(result, key, value if sign > 0 else -value)
    return result


@dataclass
class SPairCertificate:
    """最终基所有 S-对的约化结果"""
    pairs_checked: int = 0
    nonzero_residuals: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.nonzero_residuals

    def to_dict(self) -> dict:
        return {"pairs_checked": self.pairs_checked,
                "nonzero_residuals": [list(pair) for pair in self.nonzero_residuals]}


class ModuleGroebnerBasis:
    """约化模 Gröbner 基；elements 均首一"""

    def __init__(self, rank: int, order: TermOrder, elements: List[Vector]):
        self.rank = rank
        self.order = order
        self.elements = elements
        self.leads: List[Key] = [order.leading(e) for e in elements]

    def extend(self, vector: Vector) -> int:
        """追加一个首一元素，返回其下标"""
        self.elements.append(vector)
        self.leads.append(self.order.leading(vector))
        return len(self.elements) - 1

    def _divisor(self, key: Key) -> Optional[int]:
        position, mono = key
        for index, (lead_position, lead_mono) in enumerate(self.leads):
            if lead_position == position and divides(lead_mono, mono):
                return index
        return None

    def reduce_vector(self, vector: Vector) -> Vector:
        """完全约化：余项中没有项被任何首项整除"""
        work = {k: v for k, v in vector.items() if v}
        result: Vector = {}
        key_fn = self.order.key
        while work:
            key = max(work, key=lambda k: key_fn(*k))
            coeff = work.pop(key)
            index = self._divisor(key)
            if index is None:
                result[key] = coeff
                continue
            lead = self.leads[index]
            factor = quotient(key[1], lead[1])
            for (p, m), c in self.elements[index].items():
                if (p, m) == lead:
                    continue
                _add_into(work, (p, m.times(factor)), -(coeff * c))
        return result

    def reduce(self, vector: ModuleVector) -> ModuleVector:
        return ModuleVector(self.rank, self.reduce_vector(vector.terms))

    def contains(self, vector: ModuleVector) -> bool:
        return not self.reduce_vector(vector.terms)

    def s_vector(self, i: int, j: int) -> Optional[Vector]:
        return s_vector(self.elements[i], self.elements[j], self.leads[i], self.leads[j])

    def certificate(self) -> SPairCertificate:
        cert = SPairCertificate()
        for i in range(len(self.elements)):
            for j in range(i + 1, len(self.elements)):
                s = self.s_vector(i, j)
                if s is None:
                    continue
                cert.pairs_checked += 1
                if self.reduce_vector(s):
                    cert.nonzero_residuals.append((i, j))
        return cert

    def lead_texts(self) -> List[str]:
        return [f"{mono.to_text()}*e{position + 1}" for position, mono in self.leads]


def s_vector(f: Vector, g: Vector, lead_f: Key, lead_g: Key) -> Optional[Vector]:
    """首项位置不同时 S-向量不存在"""
    if lead_f[0] != lead_g[0]:
        return None
    common = lcm(lead_f[1], lead_g[1])
    left = shift(f, quotient(common, lead_f[1]), f[lead_f].inverse())
    right = shift(g, quotient(common, lead_g[1]), g[lead_g].inverse())
    return combine(left, right, -1)


def _monic(vector: Vector, order: TermOrder) -> Vector:
    lead = order.leading(vector)
    inverse = vector[lead].inverse()
    return {k: v * inverse for k, v in vector.items()}


def buchberger(rank: int, generators: Sequence[ModuleVector], order: TermOrder,
               degree_bound: Optional[int] = None) -> ModuleGroebnerBasis:
    """Buchberger 完备化并化为约化基；S-对 lcm 次数超过上限时报错"""
    bound = degree_bound or get_settings().gb_degree_bound
    logger.start_timer(f"buchberger_{order.name}")
    basis: List[Vector] = [_monic(g.terms, order) for g in generators if not g.is_zero()]
    current = ModuleGroebnerBasis(rank, order, basis)
    queue = deque((i, j) for i in range(len(basis)) for j in range(i + 1, len(basis)))
    while queue:
        i, j = queue.popleft()
        lead_i, lead_j = current.leads[i], current.leads[j]
        if lead_i[0] != lead_j[0]:
            continue
        degree = lcm(lead_i[1], lead_j[1]).degree
        if degree > bound:
            raise GroebnerDivergenceError(degree, bound)
        remainder = current.reduce_vector(current.s_vector(i, j))
        if remainder:
            new = current.extend(_monic(remainder, order))
            queue.extend((k, new) for k in range(new))

    reduced = _interreduce(rank, basis, order)
    elapsed = logger.end_timer(f"buchberger_{order.name}")
    logger.log_process_step("groebner_completion", "completed",
                            {"order": order.name, "rank": rank, "generators": len(generators),
                             "basis_size": len(reduced.elements), "elapsed_s": round(elapsed, 4)})
    return reduced


def _interreduce(rank: int, basis: List[Vector], order: TermOrder) -> ModuleGroebnerBasis:
    leads = [order.leading(v) for v in basis]
    keep: List[int] = []
    for i, (position, mono) in enumerate(leads):
        redundant = False
        for j, (other_position, other_mono) in enumerate(leads):
            if i == j or position != other_position or not divides(other_mono, mono):
                continue
            # 首项相同时保留下标较小者
            if other_mono != mono or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    minimal = [basis[i] for i in keep]
    result = []
    for index, vector in enumerate(minimal):
        others = ModuleGroebnerBasis(rank, order, minimal[:index] + minimal[index + 1:])
        lead = order.leading(vector)
        tail = {k: v for k, v in vector.items() if k != lead}
        reduced_tail = others.reduce_vector(tail)
        reduced_tail[lead] = vector[lead]
        result.append(reduced_tail)
    result.sort(key=lambda v: order.key(*order.leading(v)), reverse=True)
    return ModuleGroebnerBasis(rank, order, result)


class GroebnerCache:
    """一次性初始化的 Gröbner 基缓存"""

    def __init__(self):
        self._lock = threading.RLock()
        self._bases: Dict[str, ModuleGroebnerBasis] = {}

    def get(self, name: str, factory: Callable[[], ModuleGroebnerBasis]) -> ModuleGroebnerBasis:
        with self._lock:
            basis = self._bases.get(name)
            if basis is None:
                basis = factory()
                self._bases[name] = basis
        return basis

    def clear(self):
        with self._lock:
            self._bases.clear()
