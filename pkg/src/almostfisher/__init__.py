"""Workbench for k-almost lambda-Fisher set families."""
