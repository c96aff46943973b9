"""
Analytic Package
Closed-form success, correlation, threshold-design and delay results for a
link in a static Poisson field
"""
