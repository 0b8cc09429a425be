"""Evaluate small expressions over the named vectors of a model.

    x + y, x - y, 2 * x, x / 4, -x, x & y (meet), x | y (join), x * y (product)
    pos(x), neg(x), abs(x), trunc(x, k), infpart(x), finpart(x), exp_neg(x)
    E(f, x)       global expectation of filtration f applied to x
    E(f, n, x)    T_n of filtration f applied to x
    proj(y, x)    projection of x onto the band generated by y
    series(s), limsup(s), liminf(s), limit(s) for a named sequence s

``e`` is the unit, ``top`` the all-infinite vector. Only this grammar is
accepted; the input is parsed with ``ast`` and never executed.
"""
import ast
from fractions import Fraction
from typing import Callable, Dict

from supcomp.errors import UsageError
from supcomp.kernel.arithmetic import exp_neg, multiply, truncate
from supcomp.kernel.bands import finite_part, infinite_part, support
from supcomp.kernel.sequences import liminf_seq, limsup_seq, order_limit, series_sum
from supcomp.kernel.vectors import ExtVec, LatVec
from supcomp.services.model_loader import Materialized


class _Evaluator:
    def __init__(self, model: Materialized):
        self.model = model
        self.space = model.space
        self.functions: Dict[str, Callable] = {
            "pos": lambda x: self._vector(x).pos_part(),
            "neg": lambda x: self._vector(x).neg_part(),
            "abs": lambda x: abs(self._lat(x)),
            "trunc": lambda x, k: truncate(self._vector(x), self._number(k)),
            "infpart": lambda x: infinite_part(self._vector(x)),
            "finpart": lambda x: finite_part(self._vector(x)),
            "exp_neg": lambda x: exp_neg(self._vector(x)),
            "proj": lambda y, x: support(self._vector(y)).project(self._vector(x)),
        }
        self.sequence_functions: Dict[str, Callable] = {
            "series": series_sum,
            "limsup": limsup_seq,
            "liminf": liminf_seq,
            "limit": order_limit,
        }

    def _vector(self, value) -> ExtVec:
        if not isinstance(value, ExtVec):
            raise UsageError(f"expected a vector, got the number {value}")
        return value

    def _lat(self, value) -> LatVec:
        value = self._vector(value)
        if not isinstance(value, LatVec):
            raise UsageError("expected a finite vector")
        return value

    def _number(self, value):
        if isinstance(value, ExtVec):
            raise UsageError("expected a number, got a vector")
        return value

    def evaluate(self, node):
        if isinstance(node, ast.Expression):
            return self.evaluate(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return Fraction(str(node.value)) if isinstance(node.value, float) else Fraction(node.value)
        if isinstance(node, ast.Name):
            return self._name(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            value = self.evaluate(node.operand)
            return -value if not isinstance(value, ExtVec) else -self._lat(value)
        if isinstance(node, ast.BinOp):
            return self._binary(node.op, self.evaluate(node.left), self.evaluate(node.right))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            return self._call(node.func.id, node.args)
        raise UsageError(f"unsupported syntax: {ast.dump(node)[:60]}")

    def _name(self, name: str):
        if name in self.model.vectors:
            return self.model.vectors[name]
        if name == "e":
            return self.space.unit()
        if name == "top":
            return self.space.top()
        raise UsageError(f"unknown vector {name!r}; the model defines {sorted(self.model.vectors)}")

    def _binary(self, op, left, right):
        vectors = isinstance(left, ExtVec), isinstance(right, ExtVec)
        if isinstance(op, ast.Add) and all(vectors):
            return left + right
        if isinstance(op, ast.Sub) and all(vectors):
            return left - self._lat(right)
        if isinstance(op, ast.BitAnd) and all(vectors):
            return left & right
        if isinstance(op, ast.BitOr) and all(vectors):
            return left | right
        if isinstance(op, ast.Mult):
            if all(vectors):
                if isinstance(left, LatVec) and isinstance(right, LatVec):
                    return left * right
                return multiply(left, right)
            if vectors[0]:
                return left.scale(right)
            if vectors[1]:
                return right.scale(left)
            return left * right
        if isinstance(op, ast.Div) and not vectors[1]:
            if right == 0:
                raise UsageError("division by zero")
            return left.scale(1 / self.space.scalar(right)) if vectors[0] else left / right
        if not any(vectors) and isinstance(op, (ast.Add, ast.Sub)):
            return left + right if isinstance(op, ast.Add) else left - right
        raise UsageError(f"operator {type(op).__name__} is not defined for these operands")

    def _call(self, name: str, args):
        if name == "E":
            return self._expectation(args)
        if name in self.sequence_functions:
            if len(args) != 1 or not isinstance(args[0], ast.Name) or args[0].id not in self.model.sequences:
                raise UsageError(f"{name}() takes the name of a sequence in the model")
            result = self.sequence_functions[name](self.model.sequences[args[0].id])
            if result is None:
                raise UsageError(f"sequence {args[0].id!r} does not converge")
            return result
        if name not in self.functions:
            raise UsageError(f"unknown function {name!r}")
        values = [self.evaluate(a) for a in args]
        try:
            return self.functions[name](*values)
        except TypeError:
            raise UsageError(f"wrong number of arguments to {name}()")

    def _expectation(self, args):
        if len(args) not in (2, 3) or not isinstance(args[0], ast.Name):
            raise UsageError("E takes a filtration name, an optional index and a vector")
        name = args[0].id
        if name not in self.model.filtrations:
            raise UsageError(f"unknown filtration {name!r}")
        chain = self.model.filtrations[name]
        index = 0
        if len(args) == 3:
            index = self._number(self.evaluate(args[1]))
            if index.denominator != 1:
                raise UsageError("filtration indices are integers")
        t = chain.at(int(index))
        x = self._vector(self.evaluate(args[-1]))
        return t.apply(x) if isinstance(x, LatVec) else t.apply_ext(x)


def evaluate(model: Materialized, expression: str):
    """The value of ``expression``: an ExtVec, or a number for pure arithmetic."""
    try:
        tree = ast.parse(expression, mode="eval")
    except SyntaxError as e:
        raise UsageError(f"cannot parse expression: {e.msg}")
    return _Evaluator(model).evaluate(tree)
