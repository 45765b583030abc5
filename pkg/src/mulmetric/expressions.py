"""Tiny closed-form expression language for CLI-supplied maps and distances.

Deliberately small: arithmetic, powers ('^' or '**'), exp/ln/sqrt/abs, the
constants e and pi, and the declared variable names.  Anything richer
belongs in code, registered as a named map.
"""

from __future__ import annotations

import ast
import math
from typing import Callable, Sequence

from .errors import InputError

_FUNCTIONS = {
    "exp": math.exp,
    "ln": math.log,
    "log": math.log,
    "sqrt": math.sqrt,
    "abs": abs,
}

_CONSTANTS = {
    "e": math.e,
    "pi": math.pi,
}

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)
_ALLOWED_UNARY = (ast.UAdd, ast.USub)


def compile_expr(text: str, variables: Sequence[str] = ("x",)) -> Callable:
    """Compile an expression into a function of the given variables."""
    source = text.replace("^", "**")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse expression {text!r}: {exc}") from exc
    _validate(tree.body, set(variables))

    def fn(*args):
        if len(args) != len(variables):
            raise InputError(f"expression takes {len(variables)} argument(s)")
        env = dict(zip(variables, args))
        return _eval(tree.body, env)

    fn.__name__ = f"expr({text})"
    return fn


def _validate(node: ast.AST, names: set):
    if isinstance(node, ast.Constant):
        if not isinstance(node.value, (int, float)):
            raise InputError(f"unsupported constant {node.value!r}")
    elif isinstance(node, ast.Name):
        if node.id not in names and node.id not in _CONSTANTS:
            raise InputError(f"unknown name {node.id!r}")
    elif isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
        _validate(node.left, names)
        _validate(node.right, names)
    elif isinstance(node, ast.UnaryOp) and isinstance(node.op, _ALLOWED_UNARY):
        _validate(node.operand, names)
    elif isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCTIONS:
            raise InputError("only exp/ln/log/sqrt/abs calls are allowed")
        if node.keywords or len(node.args) != 1:
            raise InputError("functions take exactly one positional argument")
        _validate(node.args[0], names)
    else:
        raise InputError(f"unsupported syntax: {ast.dump(node)}")


def _eval(node: ast.AST, env: dict) -> float:
    if isinstance(node, ast.Constant):
        return float(node.value)
    if isinstance(node, ast.Name):
        return env[node.id] if node.id in env else _CONSTANTS[node.id]
    if isinstance(node, ast.BinOp):
        a, b = _eval(node.left, env), _eval(node.right, env)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
        return a ** b
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, env)
        return v if isinstance(node.op, ast.UAdd) else -v
    if isinstance(node, ast.Call):
        return _FUNCTIONS[node.func.id](_eval(node.args[0], env))
    raise InputError(f"unsupported syntax: {ast.dump(node)}")
