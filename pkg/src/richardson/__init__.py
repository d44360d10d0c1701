"""Cluster structures on open Richardson strata.

Computes, for a simply laced Dynkin type and Weyl group elements v <= w,
the initial cluster seed of generalized minors on the stratum attached to
(v, w): the cluster-tilting module over the preprojective algebra, its
Gabriel quiver, the Poisson lambda-matrix, and the mutation class.
"""

__version__ = "0.1.0"
