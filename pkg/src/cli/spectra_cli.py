#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fractal Spectra CLI - спектры, периодичность, σ_k/s(t) и ступенчатые приближения

Коды завершения: 0 успех, 2 ошибка флагов или предусловий, 3 численная ошибка,
4 немонотонные входные отсчёты.
"""

import argparse
import os
import sys
from typing import List, Optional

import numpy as np
import pandas as pd

# Добавляем корень проекта для импорта src.*
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.cli.exporters import read_samples_csv, write_csv, write_json
from src.core.config_manager import ConfigManager
from src.core.errors import MonotonicityError, SpectraError
from src.core.log_helper import build_logger, get_logger
from src.fractal.periodicity import periodicity_report, table_rows
from src.fractal.selfsimilar import make_params
from src.fractal.sigma import (
    s_of_t,
    s_range,
    sigma_cauchy_diagnostic,
    sigma_endpoints,
    sigma_k,
)
from src.fractal.singularity import criterion_products, make_samples, step_approximate
from src.fractal.spectral import SolverSettings, spectrum
from src.fractal.stieltjes_string import BoundaryCondition, assemble_pencil, build_string

PERIODICITY_LIMIT = 1e-8
EXIT_OK = 0
EXIT_FLAGS = 2
EXIT_NUMERICAL = 3
EXIT_MONOTONE = 4


def _boundary_from_args(args) -> BoundaryCondition:
    if args.bc == "dirichlet":
        return BoundaryCondition.dirichlet()
    if args.bc == "neumann":
        return BoundaryCondition.neumann()
    return BoundaryCondition.robin(args.gamma0, args.gamma1)


def _max_atoms(config: ConfigManager) -> int:
    return int(config.get("solver.max_atoms", 2 ** 24))


def _settings(config: ConfigManager) -> SolverSettings:
    return SolverSettings.from_config(config.get_solver_config())


def cmd_eigs(args, config: ConfigManager, logger) -> int:
    """Первые count собственных значений в CSV или JSON"""
    params = make_params(args.kappa, args.a)
    bc = _boundary_from_args(args)
    tol = args.tol if args.tol is not None else float(config.get("solver.rel_tol", 1e-10))
    logger.info(f"🚀 eigs: κ={params.kappa}, a={params.a}, bc={bc.label()}, level={args.level}, count={args.count}")

    string = build_string(params, args.level, _max_atoms(config))
    spec = spectrum(assemble_pencil(string, bc), args.level, args.count, tol, _settings(config))
    float_format = config.get("export.float_format", "%.17g")

    if args.out == "csv":
        frame = pd.DataFrame({"n": np.arange(len(spec)), "lambda": spec.eigenvalues})
        write_csv(frame, args.path, float_format)
    else:
        payload = {
            "params": {
                "kappa": params.kappa,
                "a": params.a,
                "b": params.b,
                "nu": params.nu,
                "D": params.d_order,
            },
            "bc": {"kind": args.bc, "gamma0": bc.gamma0, "gamma1": bc.gamma1},
            "level": args.level,
            "tol": tol,
            "eigenvalues": [float(x) for x in spec.eigenvalues],
        }
        write_json(payload, args.path)
    return EXIT_OK


def cmd_periodicity(args, config: ConfigManager, logger) -> int:
    """Таблица n, lhs, rhs, residual для тождества периодичности"""
    params = make_params(args.kappa, args.a)
    tol = args.tol if args.tol is not None else float(config.get("solver.rel_tol", 1e-10))
    logger.info(f"🚀 periodicity: check={args.check}, level={args.level}, n_max={args.n_max}")

    report = periodicity_report(
        params, args.level, args.n_max, args.check, tol, _max_atoms(config), _settings(config)
    )
    frame = pd.DataFrame(report.rows())
    print(frame.to_string(index=False, float_format=lambda x: f"{x:.12g}"))
    print(f"max residual = {report.max_residual:.3e}")

    if report.max_residual < PERIODICITY_LIMIT:
        logger.info("✅ Тождество выполняется")
        return EXIT_OK
    logger.error(f"❌ Невязка {report.max_residual:.3e} ≥ {PERIODICITY_LIMIT:g}")
    return EXIT_NUMERICAL


def cmd_sigma(args, config: ConfigManager, logger) -> int:
    """σ_k (t,sigma) и s(t) (t,s) в два CSV"""
    params = make_params(args.kappa, args.a)
    bc = _boundary_from_args(args)
    tol = args.tol if args.tol is not None else float(config.get("solver.rel_tol", 1e-10))
    margin = int(config.get("sigma.level_margin", 3))
    grid = args.grid if args.grid is not None else int(config.get("sigma.grid", 2001))
    float_format = config.get("export.float_format", "%.17g")
    logger.info(f"🚀 sigma: k={args.k}, level={args.level}, grid={grid}, bc={bc.label()}")

    sigma = sigma_k(params, args.k, args.level, bc, tol, margin, _max_atoms(config), _settings(config))
    lo, hi = sigma.domain
    steps = pd.DataFrame({
        "t": np.concatenate(([lo], sigma.breaks, [hi])),
        "sigma": np.concatenate((sigma.values, [sigma.values[-1]])),
    })
    write_csv(steps, args.sigma_path, float_format)

    samples = s_of_t(sigma, params.d_order, grid)
    write_csv(pd.DataFrame(samples, columns=["t", "s"]), args.s_path, float_format)

    start, end = sigma_endpoints(sigma)
    print(f"breaks = {sigma.num_breaks}")
    print(f"sigma(0) = {start:.17g}")
    print(f"sigma(nu) = {end:.17g}")
    print(f"range(s) = {s_range(samples):.17g}")
    if args.level >= args.k + 1 + margin:
        diagnostic = sigma_cauchy_diagnostic(
            params, args.k, args.level, bc, tol, margin, _max_atoms(config), _settings(config)
        )
        print(f"cauchy = {diagnostic:.17g}")
    else:
        logger.warning(f"Диагностика Коши для k={args.k} требует level ≥ {args.k + 1 + margin}")
        print("cauchy = n/a")
    return EXIT_OK


def cmd_approx(args, config: ConfigManager, logger) -> int:
    """Ступенчатое приближение отсчётов x,f и произведение критерия"""
    logger.info(f"🚀 approx: input={args.input}, n={args.n}, eps={args.eps}")
    frame = read_samples_csv(args.input)
    samples = make_samples(frame["x"].to_numpy(), frame["f"].to_numpy())
    step = step_approximate(samples, args.n, args.eps)
    product = float(criterion_products(samples, [step])[0])

    out = pd.DataFrame({
        "break": step.breaks,
        "value_left": step.values[:-1],
        "value_right": step.values[1:],
    })
    write_csv(out, args.path, config.get("export.float_format", "%.17g"))
    print(f"breaks = {step.num_breaks}")
    print(f"c_{args.n} = {product:.17g}")
    return EXIT_OK


def cmd_tables(args, config: ConfigManager, logger) -> int:
    """Воспроизведение таблиц собственных значений"""
    params = make_params(args.kappa, args.a)
    tol = args.tol if args.tol is not None else float(config.get("solver.rel_tol", 1e-10))
    logger.info(f"🚀 tables: which={args.which}, level={args.level}, rows={args.rows}")

    rows = table_rows(params, args.level, args.which, args.rows, tol, _max_atoms(config), _settings(config))
    frame = pd.DataFrame(rows)
    print(frame.to_string(index=False, float_format=lambda x: f"{x:.6g}"))
    if args.path:
        write_csv(frame, args.path, config.get("export.float_format", "%.17g"))
    return EXIT_OK


COMMANDS = {
    "eigs": cmd_eigs,
    "periodicity": cmd_periodicity,
    "sigma": cmd_sigma,
    "approx": cmd_approx,
    "tables": cmd_tables,
}


def build_parser() -> argparse.ArgumentParser:
    """Парсер аргументов с подкомандами"""
    parser = argparse.ArgumentParser(description='Спектры задач Штурма-Лиувилля с весом канторовского типа')
    parser.add_argument('--config', default=None, help='Путь к JSON конфигурации')
    parser.add_argument('--log-level', default=None, help='Уровень логирования')
    subparsers = parser.add_subparsers(dest='command', help='Доступные команды')

    weight = argparse.ArgumentParser(add_help=False)
    weight.add_argument('--kappa', type=int, default=2, help='Число копий κ ≥ 2')
    weight.add_argument('--a', type=float, default=1.0 / 3.0, help='Длина интервала копии, 0 < a < 1/κ')
    weight.add_argument('--tol', type=float, default=None, help='Относительная точность бисекции')

    boundary = argparse.ArgumentParser(add_help=False)
    boundary.add_argument('--bc', choices=['dirichlet', 'neumann', 'robin'], default='neumann', help='Граничные условия')
    boundary.add_argument('--gamma0', type=float, default=0.0, help='γ0 для robin')
    boundary.add_argument('--gamma1', type=float, default=0.0, help='γ1 для robin')

    eigs = subparsers.add_parser('eigs', parents=[weight, boundary], help='Собственные значения')
    eigs.add_argument('--level', type=int, required=True, help='Поколение струны')
    eigs.add_argument('--count', type=int, required=True, help='Число собственных значений')
    eigs.add_argument('--out', choices=['csv', 'json'], default='csv', help='Формат файла')
    eigs.add_argument('--path', required=True, help='Файл результата')

    periodicity = subparsers.add_parser('periodicity', parents=[weight], help='Проверка спектральной периодичности')
    periodicity.add_argument('--check', choices=['neumann', 'robin', 'mixed'], required=True, help='Тождество')
    periodicity.add_argument('--level', type=int, required=True, help='Поколение m ≥ 2')
    periodicity.add_argument('--n-max', type=int, required=True, help='Последний номер n')

    sigma = subparsers.add_parser('sigma', parents=[weight, boundary], help='σ_k и s(t)')
    sigma.add_argument('--k', type=int, required=True, help='Номер снимка k')
    sigma.add_argument('--level', type=int, required=True, help='Поколение струны (≥ k + 3)')
    sigma.add_argument('--grid', type=int, default=None, help='Число отсчётов s(t)')
    sigma.add_argument('--sigma-path', default='sigma.csv', help='CSV t,sigma')
    sigma.add_argument('--s-path', default='s.csv', help='CSV t,s')

    approx = subparsers.add_parser('approx', help='Ступенчатое приближение монотонных отсчётов')
    approx.add_argument('--input', required=True, help='CSV x,f')
    approx.add_argument('--n', type=int, required=True, help='Глубина (разрывов ≤ 2^n)')
    approx.add_argument('--eps', type=float, default=1e-3, help='Запас ε > 0')
    approx.add_argument('--path', default='approx.csv', help='CSV break,value_left,value_right')

    tables = subparsers.add_parser('tables', parents=[weight], help='Таблицы собственных значений')
    tables.add_argument('--which', choices=['neumann', 'robin', 'mixed'], default='neumann', help='Таблица')
    tables.add_argument('--level', type=int, default=12, help='Поколение струны')
    tables.add_argument('--rows', type=int, default=9, help='Число строк')
    tables.add_argument('--path', default=None, help='CSV n,base,scaled,target')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Главная функция"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    if not args.command:
        parser.print_help()
        return EXIT_FLAGS

    config = ConfigManager(args.config)
    logging_config = config.get_logging_config()
    build_logger(
        name="fractal_spectra",
        level=args.log_level or logging_config.get("level", "INFO"),
        log_file=logging_config.get("file"),
    )
    logger = get_logger(f"cli.{args.command}")

    try:
        return COMMANDS[args.command](args, config, logger)
    except MonotonicityError as e:
        print(f"❌ Немонотонные отсчёты (индекс {e.index}): {e}", file=sys.stderr)
        return EXIT_MONOTONE
    except SpectraError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except (ArithmeticError, np.linalg.LinAlgError) as e:
        print(f"❌ Численная ошибка: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (OSError, ValueError) as e:
        print(f"❌ Ошибка входных данных: {e}", file=sys.stderr)
        return EXIT_FLAGS


if __name__ == '__main__':
    sys.exit(main())
