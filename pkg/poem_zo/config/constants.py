# -*- coding: utf-8 -*-
"""
poem_zo - Constants Module

Модуль с константами стенда: допуски численных проверок, версия схемы CSV,
сетка параметров экспериментов и таблица известных датасетов.
"""

# Численные допуски
MEMBERSHIP_RTOL = 1e-12
UNIT_DIRECTION_TOL = 1e-9
BOUND_SLACK = 1e-9
BINOMIAL_SIGMAS = 3.0

# Параметры по умолчанию
DEFAULT_R_EPS = 1e-2
DEFAULT_RADIUS = 1.0
DEFAULT_DELTA = 0.1
DEFAULT_STRIDE = 1000
DEFAULT_NUM_SEEDS = 5
MC_CHUNK_SIZE = 100_000

# Сетка r_eps (POEM) и множителя вместо 1/L (базовые методы): 1e-7 ... 1e2
PARAMETER_GRID = tuple(10.0 ** k for k in range(-7, 3))

# Вывод
FLOAT_FORMAT = "%.17g"
TRACE_SCHEMA_VERSION = 1
TRACE_SCHEMA_HEADER = f"# poem_zo-trace v{TRACE_SCHEMA_VERSION}"
TRACE_COLUMNS = ("t", "szo_calls", "f_xbar", "f_xt", "eta", "mu", "rbar", "G", "r")
STEPSIZE_COLUMNS = ("r_eps", "seed", "t", "eta")
SWEEP_COLUMNS = ("algorithm", "param", "seed", "szo_calls", "final_objective")

# Алгоритмы
ALGORITHMS = ("poem", "poem-unbounded", "tpbco", "tpge", "rsnso")

# Коды выхода CLI
EXIT_OK = 0
EXIT_BAD_SPEC = 1
EXIT_IO_FAILURE = 2
