"""Executable law checks, instance corpora and suite reports."""

from .corpus import generate_corpus
from .registry import LAW_ORDER, LAWS, MUTATIONS, ZLAWS, LawResult, check_law
from .suite import SUITES, dumps_report, markdown_report, report_ok, run_suite

__all__ = [
    "LAWS", "LAW_ORDER", "ZLAWS", "MUTATIONS", "LawResult", "check_law", "generate_corpus",
    "SUITES", "run_suite", "dumps_report", "markdown_report", "report_ok",
]
