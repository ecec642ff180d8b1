"""Multi-agent path finding on strongly connected digraphs."""
