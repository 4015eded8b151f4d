import pytest

from flowloop import QLaurent, XSeries


def ql(terms):
    """QLaurent from {half_exponent: coeff}."""
    return QLaurent(terms)


def xs(terms, trunc=None):
    """XSeries from {x_half: {q_half: coeff}}."""
    return XSeries({x: QLaurent(q) for x, q in terms.items()}, trunc)


@pytest.fixture
def announce(request):
    """Write a line through the terminal reporter so it survives capture."""
    reporter = request.config.pluginmanager.getplugin("terminalreporter")

    def _announce(line):
        if reporter is not None:
            reporter.write_line(line)
        else:  # pragma: no cover - plain python fallback
            print(line)

    return _announce
