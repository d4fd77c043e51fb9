"""
Total Least Squares Conditioning Toolkit

Solves the total least squares problem by the SVD method and measures how
sensitive a linear function L·x of the solution is to data perturbations:
- SVD-based TLS solver with genericity checks
- Normwise, mixed and componentwise condition numbers
- Structured (Toeplitz and other linear structures) condition numbers
- Componentwise perturbation harness for numerical experiments
- Matrix Market file input and table/JSON/CSV reports
"""

__version__ = "1.0.0"
