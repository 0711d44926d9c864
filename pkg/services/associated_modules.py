"""关联模服务 - 电荷切片 E(Cₙ)、B-模作用、同构 L_V、幂等元构造与投射性检查"""
import threading
from typing import Dict, List, Sequence, Tuple

from models.algebra_models import AlgebraElement, ProductKind
from models.principal_models import Idempotent, WeightedComodule
from models.report_models import CheckResult
from models.scalars import Scalar, Specialization
from services.principality import strong_connection
from services.sphere_algebra import Flag, coact_H, hdeg_component, involution, product
from utils.enhanced_logger import logger
from utils.errors import ChargeMismatchError, NotCoinvariantError

Matrix = Tuple[Tuple[AlgebraElement, ...], ...]

_idempotents: Dict[Tuple[int, ProductKind], Idempotent] = {}
_idempotent_lock = threading.Lock()


def project_charge(x: AlgebraElement, n: int) -> AlgebraElement:
    """A □_H Cₙ：hdeg-n 齐次部分"""
    return hdeg_component(x, n)


def decompose_charges(x: AlgebraElement) -> Dict[int, AlgebraElement]:
    """A ≅ ⊕ₙ E(Cₙ)"""
    return {n: component for component, n in coact_H(x)}


def _require_charge(xi: AlgebraElement, n: int):
    if not xi.has_charge(n):
        raise ChargeMismatchError(f"元素不是电荷 {n} 的齐次元素: {xi.to_text()} (hdeg {xi.hdegs()})")


def module_action(b: AlgebraElement, xi: AlgebraElement, deformed: Flag = False) -> AlgebraElement:
    """B 在 E(Cₙ) 上的左作用：b·ξ 或 b⋆ξ"""
    if not b.is_coinvariant():
        raise NotCoinvariantError(f"作用元素不在 B 中: {b.to_text()}")
    return product(b, xi, deformed)


def L_V(xi: AlgebraElement, n: int, deformed: Flag = True) -> AlgebraElement:
    """L_V：m_index = m 的单项式乘以 u^{m·n}"""
    _require_charge(xi, n)
    kind = ProductKind.coerce(deformed)
    return AlgebraElement._trusted({
        mono: coeff * kind.phase(mono.m_index * n) for mono, coeff in xi.terms.items()
    })


def L_V_inverse(xi: AlgebraElement, n: int, deformed: Flag = True) -> AlgebraElement:
    _require_charge(xi, n)
    kind = ProductKind.coerce(deformed)
    return AlgebraElement._trusted({
        mono: coeff * kind.phase(-mono.m_index * n) for mono, coeff in xi.terms.items()
    })


def L_V_weighted(components: Sequence[AlgebraElement], comodule: WeightedComodule,
                 deformed: Flag = True) -> List[AlgebraElement]:
    """V = ⊕ C_{n_k} 上逐分量作用"""
    if len(components) != comodule.dimension:
        raise ValueError(f"分量个数 {len(components)} 与余模维数 {comodule.dimension} 不符")
    return [L_V(xi, n, deformed) for xi, n in zip(components, comodule.charges)]


def intertwining_check(b: AlgebraElement, xi: AlgebraElement, n: int) -> CheckResult:
    """L_V(b·ξ) = b ⋆ L_V(ξ)"""
    lhs = L_V(module_action(b, xi), n)
    rhs = module_action(b, L_V(xi, n), deformed=True)
    return CheckResult.compare(f"L_V_intertwines[{b.to_text()};{xi.to_text()}]", lhs, rhs)


def build_idempotent(n: int, deformed: Flag = False) -> Idempotent:
    """e_ij = rᵢ ∘ lⱼ，由 ℓ(tⁿ) = Σ lᵢ⊗rᵢ 构造"""
    kind = ProductKind.coerce(deformed)
    key = (n, kind)
    with _idempotent_lock:
        cached = _idempotents.get(key)
    if cached is not None:
        return cached
    pairs = strong_connection(n, kind).pairs
    entries = tuple(
        tuple(product(right, left, kind) for left, _ in pairs)
        for _, right in pairs
    )
    value = Idempotent(n, kind, entries)
    with _idempotent_lock:
        value = _idempotents.setdefault(key, value)
    logger.log_process_step("build_idempotent", "built", {"n": n, "kind": kind.value, "size": value.size})
    return value


def matrix_product(left: Matrix, right: Matrix, deformed: Flag = False) -> Matrix:
    kind = ProductKind.coerce(deformed)
    size = len(right[0]) if right else 0
    rows = []
    for row in left:
        out = []
        for j in range(size):
            total = AlgebraElement.zero()
            for k, entry in enumerate(row):
                if entry and right[k][j]:
                    total = total + product(entry, right[k][j], kind)
            out.append(total)
        rows.append(tuple(out))
    return tuple(rows)


def conjugate_transpose(matrix: Matrix) -> Matrix:
    size = len(matrix)
    return tuple(tuple(involution(matrix[j][i]) for j in range(size)) for i in range(size))


def idempotent_trace(e: Idempotent) -> AlgebraElement:
    total = AlgebraElement.zero()
    for i in range(e.size):
        total = total + e.entries[i][i]
    return total


def specialize_idempotent(e: Idempotent, target: Specialization) -> Matrix:
    return tuple(tuple(entry.map_scalars(lambda c: c.specialize(target)) for entry in row)
                 for row in e.entries)


def verify_idempotent(e: Idempotent) -> List[CheckResult]:
    """元素在 B 中、e∘e = e、e∗ = e、迹 = 𝟙"""
    tag = f"n={e.n},{e.kind.value}"
    outside = [entry for row in e.entries for entry in row if not entry.is_coinvariant()]
    checks = [
        CheckResult.ok(f"idempotent_entries_in_B[{tag}]", size=e.size) if not outside
        else CheckResult.fail(f"idempotent_entries_in_B[{tag}]", outside[0].to_text()),
        matrix_compare(f"idempotent_square[{tag}]", matrix_product(e.entries, e.entries, e.kind), e.entries),
        matrix_compare(f"idempotent_selfadjoint[{tag}]", conjugate_transpose(e.entries), e.entries),
        CheckResult.compare(f"idempotent_trace[{tag}]", idempotent_trace(e), AlgebraElement.one()),
    ]
    return checks


def matrix_compare(name: str, lhs: Matrix, rhs: Matrix) -> CheckResult:
    for i, (row_l, row_r) in enumerate(zip(lhs, rhs)):
        for j, (x, y) in enumerate(zip(row_l, row_r)):
            if x != y:
                return CheckResult.fail(name, (x - y).to_text(), row=i, column=j)
    return CheckResult.ok(name, size=len(lhs))


def verify_projective_iso(n: int, deformed: Flag, samples: Sequence[AlgebraElement]) -> List[CheckResult]:
    """ξ ↦ (ξ∘lᵢ)ᵢ ∈ B^N 与 (bᵢ) ↦ Σ bᵢ∘rᵢ 互逆，且 B^N 侧的复合是右乘幂等元"""
    kind = ProductKind.coerce(deformed)
    pairs = strong_connection(n, kind).pairs
    e = build_idempotent(n, kind)
    checks = []
    for index, xi in enumerate(samples):
        _require_charge(xi, n)
        name = f"projective_round_trip[n={n},{kind.value},#{index}]"
        coords = [product(xi, left, kind) for left, _ in pairs]
        if any(not c.is_coinvariant() for c in coords):
            checks.append(CheckResult.fail(name, "coordinates outside B"))
            continue
        back = AlgebraElement.zero()
        for c, (_, right) in zip(coords, pairs):
            back = back + product(c, right, kind)
        checks.append(CheckResult.compare(name, back, xi, sample=xi.to_text()))

        recoords = [product(back, left, kind) for left, _ in pairs]
        via_e = matrix_product((tuple(coords),), e.entries, kind)[0]
        checks.append(matrix_compare(f"projective_idempotent_action[n={n},{kind.value},#{index}]",
                                      (tuple(recoords),), (via_e,)))
    return checks


def scalar_naturality_check(xi: AlgebraElement, n: int, factor: Scalar) -> CheckResult:
    """Cₙ 上标量乘法这一余模映射与 L 交换"""
    return CheckResult.compare(f"L_V_naturality[{xi.to_text()}]",
                               L_V(xi.scale(factor), n), L_V(xi, n).scale(factor))
