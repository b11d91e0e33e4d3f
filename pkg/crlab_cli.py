import json
import logging
from typing import Dict, Optional

import click

from scripts.cralg import freeman_sequence
from scripts.data_structures import STATUS_FAIL, STATUS_INCONCLUSIVE, STATUS_PASS, SuiteReport
from scripts.errors import CrlabError
from scripts.models import DEFAULT_FAMILY_T, DEFAULT_TUBE_K, CatalogEntry, build, catalog_names
from scripts.prolong import DEFAULT_DEPTH
from scripts.suites import ALL_SUITE, SUITE_NAMES, SuiteOptions, run_suite
from scripts.vfgeom import DEFAULT_SAMPLES, DEFAULT_SEED
# _version должен быть в корне проекта или доступен в PYTHONPATH
from _version import __version__

# Настройка логирования
logger = logging.getLogger(__name__)

STATUS_COLORS = {STATUS_PASS: "green", STATUS_FAIL: "red", STATUS_INCONCLUSIVE: "yellow"}

EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2


def configure_logging(verbose: bool):
    """Один раз настраивает корневой логгер; --verbose включает DEBUG для scripts.*"""
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("scripts").setLevel(logging.DEBUG if verbose else logging.WARNING)


def format_combination(coeffs: Dict[str, str]) -> str:
    """{"X": "2", "Y": "-1"} -> "2*X - Y"."""
    parts = []
    for label, c in coeffs.items():
        if "*i" in c:
            term = f"({c})*{label}"
        elif c == "1":
            term = label
        elif c == "-1":
            term = f"-{label}"
        else:
            term = f"{c}*{label}"
        parts.append(term)
    if not parts:
        return "0"
    text = parts[0]
    for term in parts[1:]:
        text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return text


def fail_with_input_error(ctx: click.Context, error: Exception):
    click.secho(f"Ошибка: {error}", fg="red", err=True)
    ctx.exit(EXIT_INPUT_ERROR)


def echo_suite_report(report: SuiteReport):
    for check in report.sorted_checks():
        status = click.style(f"{check.status.upper():<12}", fg=STATUS_COLORS.get(check.status))
        click.echo(f"  {status} {check.id}  [{check.anchor}]")
        if check.status != STATUS_PASS and check.details.get("error"):
            click.echo(f"               {check.details['error']}")
    counts = report.counts()
    color = "green" if report.passed else "red"
    click.secho(f"Итог {report.suite}: пройдено {counts[STATUS_PASS]}, провалено {counts[STATUS_FAIL]}, "
                f"не решено {counts[STATUS_INCONCLUSIVE]} (seed={report.seed})", fg=color)
    if report.elapsed is not None:
        logger.debug(f"Время выполнения: {report.elapsed:.3f} с")


def describe_entry(entry: CatalogEntry) -> Dict:
    """Описание записи каталога: базис, скобки, Фримен и источник таблицы."""
    data = entry.to_json_dict()
    data["dim"] = entry.algebra.dim
    data["valid"] = entry.ok
    if entry.cr is not None:
        freeman = freeman_sequence(entry.cr)
        data["freeman_dims"] = freeman.dims
        data["order_k"] = freeman.order_k
        data["freeman_terms"] = [[entry.algebra.format(v) for v in t.basis] for t in freeman.terms]
    return data


@click.group(help="crlab: точная алгебра CR-симметрий и проверка классификации 3-невырожденных моделей.")
@click.version_option(version=__version__, message='%(prog)s version %(version)s')
@click.option("-v", "--verbose", is_flag=True, help="Подробный журнал (DEBUG) вычислений.")
def cli(verbose: bool):
    """Основная группа команд crlab."""
    configure_logging(verbose)


@cli.command("run")
@click.argument("suite", type=click.Choice(list(SUITE_NAMES) + [ALL_SUITE]))
@click.option("--json", "json_path", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Записать JSON-отчет в файл.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Зерно выборки точек.")
@click.option("--samples", type=click.IntRange(min=1), default=DEFAULT_SAMPLES, show_default=True,
              help="Число рациональных точек для выборочных проверок.")
@click.option("--k", "k", type=click.IntRange(min=2), default=DEFAULT_TUBE_K, show_default=True,
              help="Порядок невырожденности трубки для набора tube.")
@click.option("--t", "t", type=str, default=DEFAULT_FAMILY_T, show_default=True,
              help="Параметр семейств, скаляр вида 1, -2/3, 1+2*i.")
@click.option("--depth", type=click.IntRange(min=1), default=DEFAULT_DEPTH, show_default=True,
              envvar="CRLAB_DEPTH", help="Глубина усечения продолжения Танаки (переменная CRLAB_DEPTH).")
@click.option("--timing", is_flag=True, help="Добавить время выполнения в JSON-отчет.")
@click.pass_context
def run(ctx: click.Context, suite: str, json_path: Optional[str], seed: int, samples: int, k: int, t: str,
        depth: int, timing: bool):
    """Запускает набор проверок (или все наборы: all)."""
    options = SuiteOptions(seed=seed, samples=samples, k=k, t=t, depth=depth)
    click.secho(f"--- Набор {suite} ---", fg="cyan")
    try:
        report = run_suite(suite, options)
    except CrlabError as e:
        fail_with_input_error(ctx, e)
        return
    echo_suite_report(report)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as f:
            f.write(report.to_json(include_timing=timing))
            f.write("\n")
        click.echo(f"JSON-отчет записан в {json_path}")
    if not report.passed:
        ctx.exit(EXIT_FAILED)


@cli.command("describe")
@click.argument("entry")
@click.option("--json", "as_json", is_flag=True, help="Вывести описание в JSON.")
@click.pass_context
def describe(ctx: click.Context, entry: str, as_json: bool):
    """Базис, скобки, последовательность Фримена и источник записи каталога."""
    try:
        data = describe_entry(build(entry))
    except CrlabError as e:
        fail_with_input_error(ctx, e)
        return
    if as_json:
        click.echo(json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2))
        return
    click.secho(f"{data['name']}: dim = {data['dim']}", fg="cyan")
    click.echo(f"  Источник: {data['anchor']}")
    click.echo(f"  Базис: {', '.join(data['algebra']['basis'])}")
    if "degrees" in data:
        click.echo("  Степени: " + ", ".join(f"{label}:{d}" for label, d in data["degrees"].items()))
    click.echo("  Скобки:")
    for b in data["algebra"]["brackets"]:
        click.echo(f"    [{b['i']}, {b['j']}] = {format_combination(b['value'])}")
    if "q" in data:
        click.echo("  q = ⟨" + ", ".join(format_combination(v) for v in data["q"]) + "⟩")
        click.echo("  ŝtab = ⟨" + ", ".join(format_combination(v) for v in data["stab"]) + "⟩")
        click.echo(f"  Размерности Фримена: {data['freeman_dims']}, k = {data['order_k']}")
    if data["valid"]:
        click.secho("  Проверки записи пройдены", fg="green")
    else:
        click.secho("  Запись не прошла проверку (Якоби или аксиомы CR-алгебры)", fg="red")


@cli.group("catalog")
def catalog():
    """Каталог алгебр и CR-алгебр."""
    pass


@catalog.command("list")
def catalog_list():
    """Имена записей каталога."""
    for name in catalog_names():
        click.echo(name)


@catalog.command("export")
@click.argument("name")
@click.option("-o", "--output", "output_path", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Файл для JSON (по умолчанию stdout).")
@click.pass_context
def catalog_export(ctx: click.Context, name: str, output_path: Optional[str]):
    """JSON алгебры Ли (и CR-подалгебры q, если есть) записи каталога."""
    try:
        entry = build(name)
    except CrlabError as e:
        fail_with_input_error(ctx, e)
        return
    text = json.dumps(entry.to_json_dict(), ensure_ascii=False, sort_keys=True, indent=2)
    if output_path:
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        click.echo(f"Запись {name} сохранена в {output_path}")
    else:
        click.echo(text)


if __name__ == '__main__':
    cli(prog_name="crlab_cli.py")
