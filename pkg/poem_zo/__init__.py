"""
poem_zo

Библиотека безградиентной (zeroth-order) стохастической выпуклой оптимизации:
параметр-свободный метод POEM (ограниченная и неограниченная область),
базовые методы TPBCO / TPGE / RSNSO, двухточечная оценка градиента
и стенд для экспериментов с hinge-loss на LIBSVM датасетах.
"""

__version__ = "1.0.0"
__author__ = "poem_zo team"
__description__ = "Parameter-free zeroth-order stochastic convex optimization"
