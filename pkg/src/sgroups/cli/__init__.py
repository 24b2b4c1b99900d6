"""Command line front end and the calculator language."""

from sgroups.cli.evaluate import Calculator, DomainError, run_calc
from sgroups.cli.main import main
from sgroups.cli.parser import ParseError, parse

__all__ = ["Calculator", "DomainError", "ParseError", "main", "parse", "run_calc"]
