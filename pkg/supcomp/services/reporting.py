"""Rendering suite reports as JSON or text."""
import json
from functools import lru_cache
from pathlib import Path
from typing import Union

from jinja2 import Environment, PackageLoader, StrictUndefined
from slugify import slugify

from supcomp.errors import UsageError
from supcomp.models import SuiteReport

FORMATS = ("json", "text")


@lru_cache(maxsize=None)
def _environment() -> Environment:
    return Environment(
        loader=PackageLoader("supcomp", "templates"),
        undefined=StrictUndefined,
        keep_trailing_newline=True,
        trim_blocks=True,
        lstrip_blocks=True,
    )


def render_json(report: SuiteReport) -> str:
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_text(report: SuiteReport) -> str:
    template = _environment().get_template("report.txt.j2")
    return template.render(report=report, counterexamples=[
        {**c.model_dump(mode="json"), "inputs_json": json.dumps(c.inputs, sort_keys=True)}
        for c in report.counterexamples
    ])


def render(report: SuiteReport, fmt: str = "json") -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        return render_text(report)
    raise UsageError(f"unknown report format {fmt!r}; expected one of {', '.join(FORMATS)}")


def report_filename(report: SuiteReport, fmt: str = "json") -> str:
    parts = [report.suite, report.backend, f"seed {report.seed}", f"{report.trials} trials"]
    if report.mutation:
        parts.append(f"mutation {report.mutation}")
    return slugify(" ".join(parts)) + (".json" if fmt == "json" else ".txt")


def write_report(report: SuiteReport, path: Union[str, Path], fmt: str = "json") -> Path:
    path = Path(path)
    if path.is_dir():
        path = path / report_filename(report, fmt)
    text = render(report, fmt)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise UsageError(f"cannot write report {path}: {e.strerror or e}")
    return path
