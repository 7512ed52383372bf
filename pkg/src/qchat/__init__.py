"""qchat: a deterministic quantum assistant.

Natural-language requests are classified and their parameters extracted by
auditable rules, then answered by an exact logical engine: gate definitions,
circuit diagrams, state evolution, and quantum-optimization solvers for
travelling-salesperson and knapsack instances, each paired with templated,
ready-to-run Qiskit code.
"""

__version__ = "0.1.0"

ENGINE_VERSION = f"qchat/{__version__}"
