"""Performance benchmarks for numrec."""
