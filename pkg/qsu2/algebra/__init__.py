"""Exact arithmetic in the coordinate algebra of quantum SU(2)."""
from qsu2.algebra.actions import GeneratorAction, act
from qsu2.algebra.element import (
    AlgebraElement,
    Monomial,
    QParams,
    TensorElement,
    from_word,
    generators,
    random_element,
)
from qsu2.algebra.grading import analytic_norm_tq, grade, grade_scale, project_grade
from qsu2.algebra.haar import haar, modular_nu
from qsu2.algebra.hopf import antipode, coproduct, counit
from qsu2.algebra.qnumbers import qint, qnum

__all__ = [
    "AlgebraElement",
    "GeneratorAction",
    "Monomial",
    "QParams",
    "TensorElement",
    "act",
    "analytic_norm_tq",
    "antipode",
    "coproduct",
    "counit",
    "from_word",
    "generators",
    "grade",
    "grade_scale",
    "haar",
    "modular_nu",
    "project_grade",
    "qint",
    "qnum",
    "random_element",
]
