"""Flask应用主入口 - Hopf 纤维化验证API"""
import os
import time

from dotenv import load_dotenv
from flask import Flask, g, jsonify, request
from pydantic import ValidationError

from controllers.expression_controller import ExpressionController
from controllers.verification_controller import VerificationController, available_suites
from models.report_models import EvalResult, ReportStatus, SuiteRequest, VerificationReport
from services.report_storage_service import ReportStorageService
from utils.config import get_settings
from utils.errors import UnknownSuiteError
from utils.logger import SystemLogger

# 加载环境变量
load_dotenv()

# 配置日志
logger = SystemLogger("hopf_api")

app = Flask(__name__)
storage_service = ReportStorageService()
expression_controller = ExpressionController()
verification_controller = VerificationController(storage_service)


@app.before_request
def start_request_timer():
    g.request_started = time.perf_counter()


@app.after_request
def log_request(response):
    started = g.get('request_started')
    logger.log_api_call(request.path, request.method, response.status_code,
                        round(time.perf_counter() - started, 4) if started else None,
                        source_file=__file__, source_module="app")
    return response


def _error_report(suite_id: str, message: str) -> dict:
    return VerificationReport(suite_id=suite_id, status=ReportStatus.ERROR, seed=get_settings().seed,
                              error_message=message).dict()


@app.route('/health', methods=['GET'])
def health_check():
    """健康检查API"""
    return jsonify({
        'status': 'healthy',
        'version': 'v1.0',
        'service': 'hopf-fibration-verifier'
    })


@app.route('/api/info', methods=['GET'])
def system_info():
    """系统信息API"""
    settings = get_settings()
    return jsonify({
        'name': 'Hopf 纤维化精确验证系统',
        'version': '1.0.0',
        'description': '经典与 θ 形变 Hopf 纤维化 S³→S² 的精确符号验证',
        'features': [
            '强联络与 Galois 映射',
            '关联模与幂等元',
            'Kähler 形式与联络',
            '规范变换与相位修正',
            '同伦族'
        ],
        'defaults': {
            'seed': settings.seed,
            'degree_bound': settings.degree_bound,
            'nmax': settings.nmax
        }
    })


@app.route('/api/suites', methods=['GET'])
def list_suites():
    return jsonify(available_suites())


@app.route('/api/expression/eval', methods=['POST'])
def evaluate_expression():
    """表达式求值API"""
    data = request.get_json(silent=True)
    if not data or 'expression' not in data:
        error_result = EvalResult(status="error", error_message="请求数据格式错误，缺少 expression")
        return jsonify(error_result.dict()), 400
    try:
        result = expression_controller.evaluate_dict(data)
    except ValidationError as e:
        return jsonify(EvalResult(status="error", error_message=f"请求格式错误: {e}").dict()), 400
    except Exception as e:
        logger.error(f"表达式求值失败: {e}", source_file=__file__, source_module="app")
        return jsonify(EvalResult(status="error", error_message="服务器内部错误").dict()), 500

    status_code = 200 if result.status == "success" else 400
    return jsonify(result.dict()), status_code


@app.route('/api/verify/<suite_id>', methods=['POST'])
async def verify_suite(suite_id: str):
    """运行验证套件API，报告写入报告目录并追加历史"""
    data = request.get_json(silent=True) or {}
    try:
        suite_request = SuiteRequest(suite_id=suite_id, **data)
    except (ValidationError, TypeError) as e:
        return jsonify(_error_report(suite_id, f"请求格式错误: {e}")), 400
    try:
        report, path = await verification_controller.run_and_save(suite_request)
    except UnknownSuiteError as e:
        return jsonify(_error_report(suite_id, str(e))), 404
    except Exception as e:
        logger.error(f"套件运行失败: {e}", source_file=__file__, source_module="app")
        return jsonify(_error_report(suite_id, f"服务器内部错误: {e}")), 500

    logger.log_operation(f"verify {suite_id}", "success" if report.passed else "warning",
                         {"status": report.status.value, "path": path},
                         source_file=__file__, source_module="app")
    return jsonify(report.dict())


@app.route('/api/history', methods=['GET'])
async def get_history():
    try:
        entries = await storage_service.load_history()
        logger.log_data_access("read", "verification_history", source_file=__file__, source_module="app")
        return jsonify(entries)
    except Exception:
        logger.log_data_access("read", "verification_history", success=False,
                               source_file=__file__, source_module="app")
        return jsonify([])


@app.route('/api/stats', methods=['GET'])
async def get_stats():
    """按状态统计的历史记录与耗时"""
    entries = await storage_service.load_history()
    counts = {status.value: 0 for status in ReportStatus}
    durations = []
    for entry in entries:
        status = entry.get('status')
        if status in counts:
            counts[status] += 1
        duration = entry.get('wall_time_s')
        if isinstance(duration, (int, float)):
            durations.append(float(duration))
    durations.sort()
    n = len(durations)
    return jsonify({
        'counts': {**counts, 'total': len(entries)},
        'wall_time_s': {
            'count': n,
            'avg': round(sum(durations) / n, 4) if n else 0.0,
            'p95': durations[int(0.95 * (n - 1))] if n else 0.0,
            'max': durations[-1] if n else 0.0
        }
    })


if __name__ == '__main__':
    settings = get_settings()
    host = os.getenv('HOST', settings.api_host)
    port = int(os.getenv('PORT', settings.api_port))
    debug = os.getenv('FLASK_ENV') == 'development'

    print(f"🚀 启动 Hopf 纤维化验证服务...")
    print(f"📍 服务地址: http://{host}:{port}")
    print(f"🔧 调试模式: {debug}")

    app.run(host=host, port=port, debug=debug)
