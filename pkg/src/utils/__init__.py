"""Utility module - random generators and DOT export."""
