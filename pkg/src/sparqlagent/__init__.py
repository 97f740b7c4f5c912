"""Question-to-SPARQL agent toolkit.

Subpackages:

- ``kg``: SPARQL 1.1 protocol client and the fixed inspection queries.
- ``grounding``: hybrid dense+sparse schema search and full-text entity search.
- ``llm``: prompt rendering, chat backends, and controller-output parsing.
- ``agent``: the iterative thought/action/observation controller loop.
- ``service``: the HTTP query-translation endpoint and its configuration.
- ``tracelab``: run logging and statistics over recorded agent runs.
- ``testkit``: in-process fixture endpoint and sample graph for tests/demos.
"""

__version__ = "0.1.0"
