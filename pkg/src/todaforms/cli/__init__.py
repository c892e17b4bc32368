"""Command line interface and expression language."""

from .evaluator import evaluate
from .main import main
from .parser import ParseError, parse, unparse
