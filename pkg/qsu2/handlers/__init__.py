"""Command handlers. Each takes (params, config) and returns a plain dict."""
