"""PLocalChi: exact Euler characteristics of p-subgroup categories."""
