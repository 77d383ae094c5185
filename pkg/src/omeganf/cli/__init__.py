from .main import execute, main, run_task
from .problem import ProblemSpec, parse_problem, problem_from_dict
from .report import ReportDocument, decode_normal_form

__all__ = [
    "ProblemSpec",
    "ReportDocument",
    "decode_normal_form",
    "execute",
    "main",
    "parse_problem",
    "problem_from_dict",
    "run_task",
]
