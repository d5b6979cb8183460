#!/usr/bin/env python3
"""Answers one row and exits."""
import sys

sys.stdin.readline()
sys.stdout.write("0.5\n")
sys.stdout.flush()
sys.exit(3)
