"""微分形式数据模型 - Kähler 1-形式、2-形式与自由覆盖模上的向量

OneForm 的系数依次对应 dz1, dz2, dz1∗, dz2∗；TwoForm 的系数对应 dzᵢ∧dzⱼ（i<j），
对的顺序为 (1,2), (1,3), (1,4), (2,3), (2,4), (3,4)。
规范化（模 Gröbner 基约化）在 services.kahler_calculus 中完成。
"""
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from models.algebra_models import AlgebraElement, KIndex, Monomial, _term_text, join_terms
from models.scalars import Scalar, ScalarLike

GENERATOR_NAMES = ("z1", "z2", "z1'", "z2'")
GENERATOR_KDEGS = (KIndex(1, 0), KIndex(0, 1), KIndex(-1, 0), KIndex(0, -1))
GENERATOR_HDEGS = (1, 1, -1, -1)
PAIRS: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX: Dict[Tuple[int, int], int] = {pair: index for index, pair in enumerate(PAIRS)}


def pair_kdeg(pair: Tuple[int, int]) -> KIndex:
    i, j = pair
    return GENERATOR_KDEGS[i] + GENERATOR_KDEGS[j]


class _Form:
    """固定秩的系数元组，子类给出秩与基元素文本"""

    RANK = 0
    DEGREE = 0

    __slots__ = ("coeffs", "canonical")

    def __init__(self, coeffs: Iterable[AlgebraElement], canonical: bool = False):
        coeffs = tuple(coeffs)
        if len(coeffs) != self.RANK:
            raise ValueError(f"{type(self).__name__} 需要 {self.RANK} 个系数，收到 {len(coeffs)}")
        self.coeffs: Tuple[AlgebraElement, ...] = coeffs
        self.canonical = canonical

    @classmethod
    def zero(cls):
        return cls([AlgebraElement.zero()] * cls.RANK, canonical=True)

    @classmethod
    def basis(cls, index: int, coeff: Optional[AlgebraElement] = None):
        coeffs = [AlgebraElement.zero()] * cls.RANK
        coeffs[index] = AlgebraElement.one() if coeff is None else coeff
        return cls(coeffs)

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"不能组合 {type(self).__name__} 与 {type(other).__name__}")

    def __add__(self, other):
        self._check(other)
        return type(self)([x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return type(self)([x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return type(self)([-x for x in self.coeffs], canonical=self.canonical)

    def scale(self, factor: ScalarLike):
        return type(self)([x.scale(factor) for x in self.coeffs], canonical=self.canonical)

    def map_coeffs(self, fn: Callable[[AlgebraElement], AlgebraElement]):
        return type(self)([fn(x) for x in self.coeffs])

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coeffs)

    def uses_w(self) -> bool:
        return any(x.uses_w() for x in self.coeffs)

    def basis_kdeg(self, index: int) -> KIndex:
        raise NotImplementedError

    def basis_hdeg(self, index: int) -> int:
        raise NotImplementedError

    def basis_text(self, index: int) -> str:
        raise NotImplementedError

    def terms(self) -> List[Tuple[int, Monomial, Scalar]]:
        """(位置, 单项式, 系数) 列表"""
        return [(index, mono, coeff)
                for index, element in enumerate(self.coeffs)
                for mono, coeff in element.terms.items()]

    def term_kdeg(self, index: int, mono: Monomial) -> KIndex:
        return mono.kdeg + self.basis_kdeg(index)

    def term_hdeg(self, index: int, mono: Monomial) -> int:
        return mono.hdeg + self.basis_hdeg(index)

    def hdegs(self) -> List[int]:
        return sorted({self.term_hdeg(i, m) for i, m, _ in self.terms()})

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.coeffs))

    def to_text(self) -> str:
        pieces = []
        for index, element in enumerate(self.coeffs):
            base = self.basis_text(index)
            for mono, coeff in element.sorted_terms():
                body = base if mono.degree == 0 else f"{mono.to_text()}*{base}"
                pieces.append(_term_text(coeff, body))
        return join_terms(pieces)

    def to_json(self) -> Dict[str, list]:
        return {self.JSON_KEY: [x.to_json() for x in self.coeffs]}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()})"


class OneForm(_Form):
    """Σ aᵢ dzᵢ"""

    RANK = 4
    DEGREE = 1
    JSON_KEY = "oneform"

    def basis_kdeg(self, index: int) -> KIndex:
        return GENERATOR_KDEGS[index]

    def basis_hdeg(self, index: int) -> int:
        return GENERATOR_HDEGS[index]

    def basis_text(self, index: int) -> str:
        return f"d({GENERATOR_NAMES[index]})"


class TwoForm(_Form):
    """Σ a_ij dzᵢ∧dzⱼ，i<j"""

    RANK = 6
    DEGREE = 2
    JSON_KEY = "twoform"

    @classmethod
    def from_pair(cls, i: int, j: int, coeff: Optional[AlgebraElement] = None) -> "TwoForm":
        """a dzᵢ∧dzⱼ，任意 (i, j)，按反对称化到 i<j 基"""
        if i == j:
            return cls.zero()
        coeff = AlgebraElement.one() if coeff is None else coeff
        if i < j:
            return cls.basis(PAIR_INDEX[(i, j)], coeff)
        return cls.basis(PAIR_INDEX[(j, i)], -coeff)

    def basis_kdeg(self, index: int) -> KIndex:
        return pair_kdeg(PAIRS[index])

    def basis_hdeg(self, index: int) -> int:
        i, j = PAIRS[index]
        return GENERATOR_HDEGS[i] + GENERATOR_HDEGS[j]

    def basis_text(self, index: int) -> str:
        i, j = PAIRS[index]
        return f"w2({i + 1},{j + 1})"


class ModuleVector:
    """自由多项式覆盖 P^rank 中的向量，单项式不做球面约化"""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Optional[Dict[Tuple[int, Monomial], Scalar]] = None):
        self.rank = rank
        self.terms: Dict[Tuple[int, Monomial], Scalar] = {
            key: value for key, value in (terms or {}).items() if value
        }

    @classmethod
    def from_polys(cls, polys: Iterable[Dict[Monomial, ScalarLike]]) -> "ModuleVector":
        polys = list(polys)
        terms: Dict[Tuple[int, Monomial], Scalar] = {}
        for position, poly in enumerate(polys):
            for mono, coeff in poly.items():
                terms[(position, Monomial(*mono))] = Scalar.of(coeff)
        return cls(len(polys), terms)

    @classmethod
    def from_form(cls, form: _Form) -> "ModuleVector":
        return cls(form.RANK, {(i, m): c for i, m, c in form.terms()})

    def is_zero(self) -> bool:
        return not self.terms

    def component(self, position: int) -> Dict[Monomial, Scalar]:
        return {m: c for (p, m), c in self.terms.items() if p == position}

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self.terms.items())))

    def to_text(self) -> str:
        pieces = []
        for (position, mono), coeff in sorted(self.terms.items()):
            body = f"e{position + 1}" if mono.degree == 0 else f"{mono.to_text()}*e{position + 1}"
            pieces.append(_term_text(coeff, body))
        return join_terms(pieces)

    def __repr__(self) -> str:
        return f"ModuleVector({self.to_text()})"
