"""sympy 独立预言机 - 对照检查球面理想中的相等与 3×3 子式

单个多项式 f = z1·z1∗ + z2·z2∗ − 1 本身就是 ⟨f⟩ 的 Gröbner 基，
所以 p − q ∈ ⟨f⟩ 当且仅当 sympy 的约化余项为零。只适用于交换乘法。
"""
from fractions import Fraction
from typing import Dict, List, Tuple

import sympy as sp

from models.algebra_models import AlgebraElement, Monomial
from models.report_models import CheckResult
from models.scalars import GaussianRational, Scalar
from services.kahler_calculus import base_minors
from services.sphere_algebra import mul, normal_form
from utils.enhanced_logger import log_process_step

z1, z2, z1s, z2s = sp.symbols("z1 z2 z1s z2s")
u, w = sp.symbols("u w")
GENS = (z1, z2, z1s, z2s)
SPHERE = z1 * z1s + z2 * z2s - 1


def _rational(value) -> sp.Rational:
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    return sp.Integer(value)


def gaussian_to_sympy(q: GaussianRational) -> sp.Expr:
    return _rational(q.re) + sp.I * _rational(q.im)


def scalar_to_sympy(s: Scalar) -> sp.Expr:
    return sp.Add(*[gaussian_to_sympy(q) * u ** j * w ** k for (j, k), q in s.terms.items()])


def monomial_to_sympy(m: Monomial) -> sp.Expr:
    return z1 ** m.a * z2 ** m.b * z1s ** m.c * z2s ** m.d


def to_sympy(x) -> sp.Expr:
    """AlgebraElement 或 {Monomial: Scalar} 覆盖多项式"""
    terms = x.terms if isinstance(x, AlgebraElement) else x
    return sp.Add(*[scalar_to_sympy(Scalar.of(c)) * monomial_to_sympy(m) for m, c in terms.items()])


def in_sphere_ideal(expr: sp.Expr) -> bool:
    expr = sp.expand(expr)
    if expr == 0:
        return True
    _, remainder = sp.reduced(expr, [SPHERE], *GENS)
    return sp.simplify(remainder) == 0


def ideal_equal(p, q) -> bool:
    return in_sphere_ideal(to_sympy(p) - to_sympy(q))


def normal_form_oracle_check(raw: Dict[Monomial, Scalar]) -> CheckResult:
    """normal_form(p) ≡ p mod ⟨f⟩"""
    reduced = normal_form(raw)
    name = f"sympy_normal_form[{reduced.to_text()[:60]}]"
    if ideal_equal(reduced, raw):
        return CheckResult.ok(name)
    return CheckResult.fail(name, str(sp.expand(to_sympy(reduced) - to_sympy(raw))))


def product_oracle_check(x: AlgebraElement, y: AlgebraElement) -> CheckResult:
    """交换乘积与 sympy 展开在理想模下一致"""
    name = f"sympy_product[{x.to_text()};{y.to_text()}]"
    if in_sphere_ideal(to_sympy(mul(x, y)) - to_sympy(x) * to_sympy(y)):
        return CheckResult.ok(name)
    return CheckResult.fail(name, mul(x, y).to_text())


def jacobian_minors() -> Dict[Tuple[int, int, int], sp.Expr]:
    """(z, z∗, x) 对 (z1, z2, z1∗, z2∗) 的雅可比矩阵的 3×3 子式"""
    functions = (2 * z1 * z2s, 2 * z1s * z2, z1 * z1s - z2 * z2s)
    jacobian = sp.Matrix([[sp.diff(fn, g) for fn in functions] for g in GENS])
    minors = {}
    for rows in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        minors[rows] = sp.expand(jacobian.extract(list(rows), [0, 1, 2]).det())
    return minors


@log_process_step("sympy_minors_oracle")
def minors_oracle_checks() -> List[CheckResult]:
    ours = base_minors()
    checks = []
    for rows, expected in jacobian_minors().items():
        name = f"sympy_minor[{''.join(str(r + 1) for r in rows)}]"
        if in_sphere_ideal(to_sympy(ours[rows]) - expected):
            checks.append(CheckResult.ok(name, minor=str(expected)))
        else:
            checks.append(CheckResult.fail(name, ours[rows].to_text(), expected=str(expected)))
    return checks
