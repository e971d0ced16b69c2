"""Exact Real cohomology and Real graded Brauer groups of finite groupoids."""

__version__ = "0.1.0"
