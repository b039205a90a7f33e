# Engines: hypergraph primitives, online search, oracle, construction, minimization, queries
