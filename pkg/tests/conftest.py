import math

import pytest

from dickemirror.model import CONSTANTS, OMEGA_HYDROGEN, transition_wavelength

W0 = OMEGA_HYDROGEN
K0 = W0 / CONSTANTS.c
LAM0 = transition_wavelength(W0)
IM_COINCIDENT = W0 / (6.0 * math.pi * CONSTANTS.c)


@pytest.fixture
def report(request):
    """Write one line straight to the terminal, bypassing output capture."""
    reporter = request.config.pluginmanager.getplugin("terminalreporter")

    def write(line):
        if reporter is not None:
            reporter.write_line(line)
        else:
            print(line)

    return write
