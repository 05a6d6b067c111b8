"""CSV and gnuplot-column writers for sweep results."""
import io

from .sweep import Row

COLUMNS = Row._fields
SIGNIFICANT = 9


def format_value(x):
    """Render ``x`` with 9 significant digits, locale-independently.

    Positional notation for 1e-3 <= |x| < 1e4, scientific otherwise.
    """
    x = float(x)
    if x == 0.0:
        return "0." + "0" * (SIGNIFICANT - 1)
    mantissa, exponent = f"{x:.{SIGNIFICANT - 1}e}".split("e")
    exponent = int(exponent)
    if not -3 <= exponent < 4:
        return f"{mantissa}e{exponent:+03d}"
    sign = "-" if mantissa.startswith("-") else ""
    digits = mantissa.lstrip("-").replace(".", "")
    if exponent >= 0:
        return f"{sign}{digits[:exponent + 1]}.{digits[exponent + 1:]}"
    return f"{sign}0.{'0' * (-exponent - 1)}{digits}"


def to_csv(result):
    lines = [",".join(COLUMNS)]
    lines += [",".join(format_value(v) for v in row) for row in result.rows]
    return "\n".join(lines) + "\n"


def to_gnuplot(result):
    out = io.StringIO()
    out.write("# " + " ".join(COLUMNS) + "\n")
    family = result.family or "d"
    for i, value in enumerate(result.family_values()):
        if i:
            out.write("\n\n")
        out.write(f"# family: {family} = {format_value(value)}\n")
        for row in result.curve(value):
            out.write(" ".join(format_value(v) for v in row) + "\n")
    return out.getvalue()


FORMATS = {"csv": to_csv, "gnuplot": to_gnuplot, "gnuplot-columns": to_gnuplot}


def render(result, fmt="csv"):
    try:
        writer = FORMATS[fmt]
    except KeyError:
        raise ValueError(f"unknown output format {fmt!r}; expected csv or gnuplot") from None
    return writer(result)


def emit(result, fmt, path):
    """Write ``result`` to ``path``; raises OSError naming the path on failure."""
    text = render(result, fmt)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc
    return path
