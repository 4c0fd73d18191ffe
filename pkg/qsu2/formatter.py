"""Output formatters for the qsu2 CLI.

Supports: json (default), table (rich), csv.
"""
import csv
import json
from io import StringIO

from rich.console import Console
from rich.table import Table

from qsu2.handlers.export import EXPORTERS


def format_output(data: dict, fmt: str = "json") -> str:
    """Format a response envelope (or a bare dict) for CLI output."""
    if fmt == "table":
        return _format_table(data)
    if fmt == "csv":
        return _format_csv(data)
    return json.dumps(data, indent=2, default=str, ensure_ascii=False)


def _unwrap(data: dict) -> tuple[str, dict, str]:
    """(command, inner data, status) from an envelope."""
    if "data" in data and "status" in data:
        return data.get("command", ""), data["data"], data["status"]
    return "", data, "success"


def _format_table(data: dict) -> str:
    buf = StringIO()
    console = Console(file=buf, force_terminal=False, width=120)
    command, inner, status = _unwrap(data)

    if status == "error":
        console.print(f"Error [{inner.get('code', 'INTERNAL_ERROR')}]: {inner.get('error', 'Unknown error')}")
        return buf.getvalue()

    if command == "check":
        _table_check(console, inner)
    elif command in ("spectrum", "table"):
        _table_rows(console, inner, title=command.title())
    else:
        _table_generic(console, inner)
    return buf.getvalue()


def _table_check(console, data):
    table = Table(title=f"Identity suites at q={data.get('q')}, t={data.get('t')}", padding=(0, 1))
    table.add_column("Suite", style="bold")
    table.add_column("Result")
    table.add_column("Checks", justify="right")
    table.add_column("Worst residual", justify="right")
    for suite in data.get("suites", []):
        table.add_row(
            suite["suite"],
            "pass" if suite["is_valid"] else "FAIL",
            f"{suite['checks_passed']}/{suite['checks_total']}",
            _fmt_num(suite["worst_residual"]),
        )
    console.print(table)
    for suite in data.get("suites", []):
        for line in suite["errors"]:
            console.print(f"[red]{suite['suite']}[/red] {line}")
        for line in suite["warnings"]:
            console.print(f"[yellow]{suite['suite']}[/yellow] {line}")


def _table_rows(console, data, title):
    columns = data.get("columns", [])
    table = Table(title=title, padding=(0, 1))
    for col in columns:
        table.add_column(col, justify="right")
    for row in data.get("rows", []):
        table.add_row(*[_fmt_num(row.get(col)) for col in columns])
    console.print(table)


def _table_generic(console, data):
    """Fallback: render any dict as a key/value table."""
    table = Table(show_header=False, padding=(0, 2))
    table.add_column("Key", style="dim")
    table.add_column("Value")
    for k, v in data.items():
        if isinstance(v, (dict, list)):
            text = json.dumps(v, default=str)
            table.add_row(k, text[:80] + ("..." if len(text) > 80 else ""))
        else:
            table.add_row(k, _fmt_num(v))
    console.print(table)


def _fmt_num(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, float):
        if v != 0 and (abs(v) < 1e-4 or abs(v) >= 1e6):
            return f"{v:.4e}"
        return f"{v:.6g}"
    return str(v)


def _format_csv(data: dict) -> str:
    """Command-specific CSV where one exists, else rows or key/value pairs."""
    command, inner, status = _unwrap(data)
    if status == "error":
        return _key_values({"error": inner.get("error"), "code": inner.get("code")})
    exporter = EXPORTERS.get(command)
    if exporter is not None:
        return exporter(inner)
    if command == "check":
        rows = [{k: s[k] for k in ("suite", "is_valid", "checks_passed", "checks_total", "worst_residual")}
                for s in inner.get("suites", [])]
        return _dict_rows(rows)
    return _key_values(inner)


def _dict_rows(rows: list[dict]) -> str:
    buf = StringIO()
    if not rows:
        return ""
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\r\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _key_values(data: dict) -> str:
    buf = StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["key", "value"])
    for k, v in data.items():
        writer.writerow([k, json.dumps(v, default=str) if isinstance(v, (dict, list)) else v])
    return buf.getvalue()
