"""命令行入口 - 表达式计算与验证套件

退出码：0 全部通过，1 存在失败的检查，2 用法/语法/类型错误。
"""
import asyncio
import json
import sys
from typing import Any, Callable, Dict, List

import click

from controllers.expression_controller import evaluate_text, kind_of, value_json
from controllers.verification_controller import VerificationController, available_suites
from models.algebra_models import AlgebraElement
from models.form_models import OneForm
from models.report_models import CheckResult, SuiteRequest
from models.scalars import W
from services.associated_modules import L_V, build_idempotent, idempotent_trace, verify_idempotent
from services.gauge_connections import (
    connection_checks, cov_deriv, gauge_act_form, gauge_connection_check, make_connection,
)
from services.homotopy_family import run_homotopy_check
from services.kahler_calculus import ver_X
from services.principality import galois_round_trip, strong_connection, verify_strong_connection
from services.report_storage_service import ReportStorageService
from services.sphere_algebra import monomials_up_to, star
from utils.config import get_settings
from utils.errors import ExpressionSyntaxError, ExpressionTypeError, HopfError, UnknownSuiteError
from views.report_view import ReportView

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _fail_usage(message: str):
    click.echo(f"错误: {message}", err=True)
    sys.exit(EXIT_USAGE)


def compute(func: Callable, *args):
    """领域运算；HopfError（非水平、非底空间、电荷不符等）以退出码 2 结束"""
    try:
        return func(*args)
    except HopfError as e:
        _fail_usage(str(e))


def _syntax_message(e: ExpressionSyntaxError) -> str:
    lines = [str(e)]
    if e.text:
        source = e.text.splitlines()[e.line - 1] if 0 < e.line <= len(e.text.splitlines()) else e.text
        lines.append(f"  {source}")
        lines.append("  " + " " * max(e.column - 1, 0) + "^")
    if e.expected:
        lines.append(f"  期望: {', '.join(e.expected)}")
    return "\n".join(lines)


def evaluate(text: str, deformed: bool = False):
    """求值；语法或类型错误以退出码 2 结束"""
    try:
        return evaluate_text(text, deformed)
    except ExpressionSyntaxError as e:
        _fail_usage(_syntax_message(e))
    except ExpressionTypeError as e:
        _fail_usage(str(e))
    except (HopfError, ArithmeticError) as e:
        _fail_usage(str(e))


def expect(value, kind: type, text: str):
    if not isinstance(value, kind):
        _fail_usage(f"{text!r} 的类型是 {kind_of(value)}，需要 {kind.__name__}")
    return value


def emit(as_json: bool, payload: Dict[str, Any], human: Callable[[], None]):
    if as_json:
        click.echo(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        human()


def checks_exit(checks: List[CheckResult]):
    sys.exit(EXIT_OK if all(check.passed for check in checks) else EXIT_FAILED)


def flag_options(func):
    func = click.option("--json", "as_json", is_flag=True, help="以 JSON 输出")(func)
    func = click.option("--deformed", is_flag=True, help="使用 θ 形变乘法")(func)
    return func


@click.group()
def cli():
    """Hopf 纤维化（经典与 θ 形变）的精确符号验证"""


@cli.command()
@click.argument("expression")
@flag_options
def nf(expression, deformed, as_json):
    """表达式的规范型"""
    value = evaluate(expression, deformed)
    emit(as_json, {"kind": kind_of(value), "text": value.to_text(), "value": value_json(value)},
         lambda: ReportView.display_value(kind_of(value), value.to_text()))


@cli.command(name="star")
@click.argument("left")
@click.argument("right")
@click.option("--json", "as_json", is_flag=True)
def star_command(left, right, as_json):
    """⋆_θ 乘积"""
    x = expect(evaluate(left), AlgebraElement, left)
    y = expect(evaluate(right), AlgebraElement, right)
    result = compute(star, x, y)
    emit(as_json, {"text": result.to_text(), "value": result.to_json()},
         lambda: ReportView.display_value(f"{x.to_text()} ** {y.to_text()}", result.to_text()))


@cli.command()
@click.option("-n", "n", type=int, required=True, help="电荷 n")
@flag_options
def lconn(n, deformed, as_json):
    """强联络 ℓ(tⁿ) 及其四条公理"""
    value = compute(strong_connection, n, deformed)
    checks = verify_strong_connection(value)
    emit(as_json, {
        "n": n,
        "kind": value.kind.value,
        "pairs": len(value.pairs),
        "text": value.value.to_text(),
        "value": value.value.to_json(),
        "checks": [check.dict() for check in checks],
    }, lambda: (ReportView.display_value(f"l(t^{n})", value.value.to_text()),
                ReportView.display_checks("强联络公理", checks)))
    checks_exit(checks)


@cli.command(name="galois-check")
@click.option("--degree-bound", type=click.IntRange(1, 8), default=None)
@click.option("--nmax", type=click.IntRange(1, 8), default=None)
@flag_options
def galois_check(degree_bound, nmax, deformed, as_json):
    """Galois 映射往返 can∘can⁻¹ = id"""
    settings = get_settings()
    degree = degree_bound or settings.degree_bound
    nbound = nmax or min(settings.nmax, 3)
    checks = [galois_round_trip(AlgebraElement.monomial(m), n, deformed)
              for m in monomials_up_to(degree) for n in range(-nbound, nbound + 1)]
    emit(as_json, {"checks": [check.dict() for check in checks]},
         lambda: ReportView.display_checks(f"Galois 往返 (degree ≤ {degree}, |n| ≤ {nbound})", checks))
    checks_exit(checks)


@cli.command()
@click.option("-n", "n", type=int, required=True, help="电荷 n")
@flag_options
def idem(n, deformed, as_json):
    """幂等元 e = r∘l 及其性质"""
    e = compute(build_idempotent, n, deformed)
    checks = verify_idempotent(e)
    trace = idempotent_trace(e)
    emit(as_json, {**e.to_json(), "trace": trace.to_text(), "checks": [check.dict() for check in checks]},
         lambda: (ReportView.display_value(f"e(n={n}) 维数", str(e.size)),
                  ReportView.display_value("trace", trace.to_text()),
                  ReportView.display_checks("幂等元", checks)))
    checks_exit(checks)


@cli.command()
@click.argument("expression")
@click.argument("n", type=int)
@click.option("--json", "as_json", is_flag=True)
def lv(expression, n, as_json):
    """关联模同构 L_V(ξ)"""
    xi = expect(evaluate(expression), AlgebraElement, expression)
    result = compute(L_V, xi, n)
    emit(as_json, {"text": result.to_text(), "value": result.to_json()},
         lambda: ReportView.display_value(f"L_V({xi.to_text()})", result.to_text()))


@cli.command()
@click.argument("expression")
@flag_options
def ver(expression, deformed, as_json):
    """竖直提升 ver̄(ω)"""
    omega = expect(evaluate(expression, deformed), OneForm, expression)
    result = compute(ver_X, omega, deformed)
    emit(as_json, {"text": result.to_text(), "value": result.to_json()},
         lambda: ReportView.display_value(f"ver({omega.to_text()})", result.to_text()))


def _connection(alpha_text: str, deformed: bool):
    alpha = OneForm.zero() if alpha_text is None else expect(evaluate(alpha_text, deformed), OneForm, alpha_text)
    try:
        return make_connection(alpha, deformed)
    except HopfError as e:
        _fail_usage(str(e))


@cli.command()
@click.option("--alpha", default=None, help="Ω¹(B) 中的势，缺省为 0")
@flag_options
def connection(alpha, deformed, as_json):
    """联络 ω⁰ + α"""
    c = _connection(alpha, deformed)
    checks = connection_checks(c)
    emit(as_json, {"kind": c.kind.value, "alpha": c.alpha.to_text(), "realized": c.realized.to_text(),
                   "checks": [check.dict() for check in checks]},
         lambda: (ReportView.display_value("联络", c.realized.to_text()),
                  ReportView.display_checks("联络性质", checks)))
    checks_exit(checks)


@cli.command()
@click.argument("expression")
@click.option("--alpha", default=None)
@flag_options
def covd(expression, alpha, deformed, as_json):
    """协变导数 D̄λ"""
    c = _connection(alpha, deformed)
    lam = evaluate(expression, deformed)
    if not isinstance(lam, (AlgebraElement, OneForm)):
        _fail_usage(f"协变导数只作用于 0-形式与 1-形式，收到 {kind_of(lam)}")
    result = compute(cov_deriv, lam, c)
    emit(as_json, {"kind": kind_of(result), "text": result.to_text(), "value": value_json(result)},
         lambda: ReportView.display_value(f"D({lam.to_text()})", result.to_text()))


@cli.command()
@click.argument("expression")
@click.option("--alpha", default=None)
@flag_options
def gauge(expression, alpha, deformed, as_json):
    """无穷小规范变换 ω ◁ (b⊗X)"""
    c = _connection(alpha, deformed)
    b = expect(evaluate(expression, deformed), AlgebraElement, expression)
    if not b.is_coinvariant():
        _fail_usage(f"规范参数必须在 B 中: {b.to_text()}")
    result = compute(gauge_act_form, c.realized, b, c.kind)
    check = gauge_connection_check(c, b)
    emit(as_json, {"text": result.to_text(), "value": value_json(result), "checks": [check.dict()]},
         lambda: (ReportView.display_value("ω ◁ ζ", result.to_text()),
                  ReportView.display_checks("规范作用", [check])))
    checks_exit([check])


@cli.command(name="homotopy-check")
@click.option("--nmax", type=click.IntRange(1, 8), default=3)
@click.option("--degree-bound", type=click.IntRange(1, 8), default=4)
@click.option("--json", "as_json", is_flag=True)
def homotopy_check(nmax, degree_bound, as_json):
    """同伦族与端点求值，输出证书"""
    samples = [AlgebraElement.monomial(m, W ** m.degree) for m in monomials_up_to(2)]
    result = run_homotopy_check(nmax, degree_bound, samples)
    checks = result["checks"]
    emit(as_json, {"certificate": result["certificate"], "checks": [check.dict() for check in checks]},
         lambda: (ReportView.display_checks("同伦检查", checks),
                  ReportView.display_value("证书", json.dumps(result["certificate"], ensure_ascii=False))))
    checks_exit(checks)


@cli.command()
@click.argument("suite_id")
@click.option("--seed", type=int, default=None)
@click.option("--degree-bound", type=click.IntRange(1, 8), default=None)
@click.option("--nmax", type=click.IntRange(1, 8), default=None)
@click.option("--tamper", is_flag=True, help="注入被破坏的强联络（负对照）")
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="报告 JSON 的保存路径")
@click.option("--json", "as_json", is_flag=True)
@click.option("--verbose", is_flag=True)
def verify(suite_id, seed, degree_bound, nmax, tamper, output, as_json, verbose):
    """运行验证套件（或 all）"""
    request = SuiteRequest(suite_id=suite_id, seed=seed, degree_bound=degree_bound, nmax=nmax, tamper=tamper)
    controller = VerificationController()
    try:
        if output:
            report, _ = asyncio.run(controller.run_and_save(request, output))
        else:
            report = asyncio.run(controller.run_suite(request))
    except UnknownSuiteError as e:
        _fail_usage(str(e))
    if as_json:
        click.echo(report.json(ensure_ascii=False, indent=2))
    else:
        ReportView(verbose).display_report(report)
    sys.exit(EXIT_OK if report.passed else EXIT_FAILED)


@cli.command()
def suites():
    """列出可用的套件"""
    ReportView.display_suite_list(available_suites())


@cli.command()
@click.option("--limit", type=click.IntRange(1, 1000), default=20)
def history(limit):
    """最近的验证历史"""
    entries = asyncio.run(ReportStorageService().load_history())
    ReportView.display_history(entries[-limit:])


if __name__ == "__main__":
    cli()
