"""Running the verification suites programmatically and reading the report.

The same suites are available from the shell, for example
``oslab twisted-chain --random --count 100 --dims 3 3 --seed 7``.
"""
# %%
from oslab.cli import ExperimentConfig, render, run

code, report = run(ExperimentConfig("fourier", group="D4", suite="all", count=5, seed=1))
print("exit code", code, "|", report["summary"])
for row in report["rows"][:5]:
    print(f"  {row['name']:32s} lhs={row['lhs']:.6g} rhs={row['rhs']:.6g} margin={row['margin']:.3g} pass={row['pass']}")

# %%
code, report = run(ExperimentConfig("rainwater", random=True, count=3, dims=(2, 3), restarts=2))
print(render(report, "csv"))
