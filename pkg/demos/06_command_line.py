"""
Driving the engine from the command line
========================================

Everything in the library is reachable through the `regulus` console
script.  This demo shells out to it the way a batch job would.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

CLI = [sys.executable, "-m", "regulus.cli"]


def run(*args):
    proc = subprocess.run(CLI + list(args), capture_output=True, text=True)
    print("$ regulus", " ".join(args))
    print(proc.stdout, end="")
    return proc


# Expand an eta quotient from the expression grammar.
run("expand", "eta(5z)/eta(z)", "-p", "8")

# The same, reduced mod 5 and folded to its integral part.
run("expand", "eta(5z)^5/eta(z)", "-p", "10", "-m", "5", "--integral-part")

# Modular-form metadata for a quotient on its natural level.
run("meta", "eta(z)^4*eta(5z)^4")

# Certify a congruence family and write a machine-readable certificate.
with tempfile.TemporaryDirectory() as d:
    out = Path(d) / "cert.json"
    run("certify", "-m", "7", "-l", "17", "--json", str(out))
    doc = json.loads(out.read_text())
    print("certificate keys:", list(doc))
    print("first progression:", doc["progressions"][0])

# Exit codes separate mathematics from plumbing: a failed certification
# is 1, bad usage is 2, a resource ceiling is 3.
proc = run("certify", "-m", "7", "-l", "11")
print("exit code:", proc.returncode)

# Empirical spot checks of a single progression.
run("check", "-m", "5", "-A", "5", "-B", "4", "-n", "2000")
