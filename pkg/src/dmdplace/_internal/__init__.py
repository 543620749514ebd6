"""
_internal/__init__.py

Private internal utilities for dmdplace.

- Contains helpers used by the design loop and the CLI
- Not intended for end-user imports

Purpose:
- Encapsulate loop bookkeeping
- Keep public API clean and stable
"""
