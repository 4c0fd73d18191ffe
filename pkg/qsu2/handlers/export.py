"""CSV export of spectrum rows and sweep tables."""
import csv
import io

SPECTRUM_COLUMNS = ["n", "i", "j", "eigenvalue", "multiplicity"]


def _write(header: list[str], rows) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return output.getvalue()


def spectrum_csv(data: dict) -> str:
    """One row per block eigenvalue; 2*lambda + 1 appended in the classical case."""
    header = list(SPECTRUM_COLUMNS)
    if data.get("classical"):
        header.append("two_lambda_plus_one")
    return _write(header, ([row.get(col) for col in header] for row in data.get("rows", [])))


def sweep_csv(data: dict) -> str:
    header = list(data.get("columns", []))
    return _write(header, ([row.get(col) for col in header] for row in data.get("rows", [])))


EXPORTERS = {
    "spectrum": spectrum_csv,
    "table": sweep_csv,
}
